//! Cyclotomic polynomials and exact arithmetic in `Z[ξ_n]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::poly::IntPoly;

/// The `n`-th cyclotomic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicPolynomial {
    order: usize,
    poly: IntPoly,
}

impl CyclotomicPolynomial {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn euler_totient(n: usize) -> usize {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count()
}

/// `q^n - 1` divided by the cyclotomic polynomials of all proper divisors.
pub fn cyclotomic_polynomial(n: usize) -> Result<CyclotomicPolynomial> {
    if n == 0 {
        return invalid("cyclotomic polynomial of order 0");
    }
    let mut poly = IntPoly::q_pow_minus_one(n);
    for d in divisors(n) {
        if d < n {
            poly = poly.exact_div(cyclotomic_polynomial(d)?.poly())?;
        }
    }
    Ok(CyclotomicPolynomial { order: n, poly })
}

/// An element of `Z[ξ_n]` in the power basis `1, ξ, …, ξ^{φ(n)-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    order: usize,
    coeffs: Vec<BigInt>,
}

/// Reduces an integer polynomial modulo the `n`-th cyclotomic polynomial.
pub fn cyclo_reduce(p: &IntPoly, n: usize) -> Result<CyclotomicInteger> {
    let phi = cyclotomic_polynomial(n)?;
    Ok(reduce_with(p, &phi))
}

fn reduce_with(p: &IntPoly, phi: &CyclotomicPolynomial) -> CyclotomicInteger {
    // monic divisor, never fails
    let r = p.rem(phi.poly()).expect("cyclotomic polynomials are monic");
    let dim = phi.degree();
    let coeffs = (0..dim).map(|k| r.coeff(k)).collect();
    CyclotomicInteger {
        order: phi.order(),
        coeffs,
    }
}

impl CyclotomicInteger {
    pub fn from_poly(p: &IntPoly, n: usize) -> Result<Self> {
        cyclo_reduce(p, n)
    }

    pub fn zero(n: usize) -> Result<Self> {
        cyclo_reduce(&IntPoly::zero(), n)
    }

    pub fn one(n: usize) -> Result<Self> {
        cyclo_reduce(&IntPoly::one(), n)
    }

    /// The primitive root `ξ_n` itself.
    pub fn xi(n: usize) -> Result<Self> {
        cyclo_reduce(&IntPoly::from_i64(&[0, 1]), n)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return invalid(format!(
                "cyclotomic orders differ: {} vs {}",
                self.order, other.order
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicInteger {
            order: self.order,
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let product = &self.to_poly() * &other.to_poly();
        cyclo_reduce(&product, self.order)
    }
}

/// Panics when the orders differ; use [`CyclotomicInteger::try_add`] otherwise.
impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn add(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self.try_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn sub(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self + &(-rhs.clone())
    }
}

/// Panics when the orders differ; use [`CyclotomicInteger::try_mul`] otherwise.
impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn mul(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self.try_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger {
            order: self.order,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CyclotomicInteger {
    /// Sum of terms in the power basis, e.g. `1`, `xi`, `-1 + 2*xi^2`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = match k {
                0 => c.to_string(),
                _ => {
                    let power = if k == 1 {
                        "xi".to_string()
                    } else {
                        format!("xi^{k}")
                    };
                    if c.is_one() {
                        power
                    } else if *c == -BigInt::one() {
                        format!("-{power}")
                    } else {
                        format!("{c}*{power}")
                    }
                }
            };
            terms.push(body);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {t}")),
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Schoolbook long division over the rationals, independent of
    /// `IntPoly::div_rem`; returns (quotient, remainder) as i64 vectors.
    fn oracle_divide(num: &[i64], den: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let mut r: Vec<f64> = num.iter().map(|&x| x as f64).collect();
        let d: Vec<f64> = den.iter().map(|&x| x as f64).collect();
        let dd = d.len() - 1;
        let mut q = vec![0.0; r.len().saturating_sub(dd).max(1)];
        for k in (dd..r.len()).rev() {
            let f = r[k] / d[dd];
            q[k - dd] = f;
            for i in 0..=dd {
                r[k - dd + i] -= f * d[i];
            }
        }
        r.truncate(dd);
        (
            q.iter().map(|x| x.round() as i64).collect(),
            r.iter().map(|x| x.round() as i64).collect(),
        )
    }

    #[test]
    fn small_orders() {
        assert_eq!(cyclotomic_polynomial(1).unwrap().poly(), &IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2).unwrap().poly(), &IntPoly::from_i64(&[1, 1]));
        // q^4 - 1 = (q - 1)(q + 1)(q^2 + 1)
        let (q1, r1) = oracle_divide(&[-1, 0, 0, 0, 1], &[-1, 1]);
        assert!(r1.iter().all(|&x| x == 0));
        let (q2, r2) = oracle_divide(&q1, &[1, 1]);
        assert!(r2.iter().all(|&x| x == 0));
        assert_eq!(q2, vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(4).unwrap().poly(), &IntPoly::from_i64(&q2));
        assert!(cyclotomic_polynomial(0).is_err());
    }

    #[test]
    fn reduction_examples() {
        let r = cyclo_reduce(&IntPoly::from_i64(&[0, 0, 1]), 4).unwrap();
        assert_eq!(r.coeffs(), &[BigInt::from(-1), BigInt::from(0)]);
        let r = cyclo_reduce(&IntPoly::from_i64(&[0, 1]), 1).unwrap();
        assert_eq!(r.coeffs(), &[BigInt::from(1)]);
        // q^3 + q is a multiple of q^2 + 1
        let (_, rem) = oracle_divide(&[0, 1, 0, 1], &[1, 0, 1]);
        assert!(rem.iter().all(|&x| x == 0));
        assert!(cyclo_reduce(&IntPoly::from_i64(&[0, 1, 0, 1]), 4).unwrap().is_zero());
    }

    #[test]
    fn divisor_product_is_q_pow_minus_one() {
        for n in 1..=24 {
            let mut prod = IntPoly::one();
            for d in divisors(n) {
                prod = &prod * cyclotomic_polynomial(d).unwrap().poly();
            }
            assert_eq!(prod, IntPoly::q_pow_minus_one(n), "n = {n}");
            let phi = cyclotomic_polynomial(n).unwrap();
            assert_eq!(phi.degree(), euler_totient(n));
            assert!(phi.poly().leading().unwrap().is_one());
        }
    }

    #[test]
    fn vanishes_at_primitive_roots() {
        for n in 1..=24usize {
            let phi = cyclotomic_polynomial(n).unwrap();
            for k in (1..=n).filter(|&k| num_integer::gcd(k, n) == 1) {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                let (re, im) = phi.poly().eval_complex((theta.cos(), theta.sin()));
                assert!(re.abs() < 1e-9 && im.abs() < 1e-9, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let a = CyclotomicInteger::one(3).unwrap();
        let b = CyclotomicInteger::one(4).unwrap();
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(CyclotomicInteger::xi(4).unwrap().to_string(), "xi");
        let x = cyclo_reduce(&IntPoly::from_i64(&[-1, 0, 2]), 5).unwrap();
        assert_eq!(x.to_string(), "-1 + 2*xi^2");
        assert_eq!(CyclotomicInteger::zero(6).unwrap().to_string(), "0");
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = IntPoly> {
            proptest::collection::vec(-20i64..=20, 0..=13).prop_map(|c| IntPoly::from_i64(&c))
        }

        proptest! {
            #[test]
            fn reduction_is_a_ring_map(n in 1usize..=24, a in poly(), b in poly()) {
                let ra = cyclo_reduce(&a, n).unwrap();
                let rb = cyclo_reduce(&b, n).unwrap();
                prop_assert_eq!(cyclo_reduce(&(&a * &b), n).unwrap(), &ra * &rb);
                prop_assert_eq!(cyclo_reduce(&(&a + &b), n).unwrap(), &ra + &rb);
            }
        }
    }
}
