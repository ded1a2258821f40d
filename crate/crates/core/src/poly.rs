//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};

/// An integer polynomial in `q`, stored constant term first with no
/// trailing zero coefficients. The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * q^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `q^n - 1`
    pub fn q_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] += BigInt::one();
        Self::new(coeffs)
    }

    /// `1 - q^n`
    pub fn one_minus_q_pow(n: usize) -> Self {
        -Self::q_pow_minus_one(n)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Division with remainder by a divisor whose leading coefficient is a
    /// unit (±1). Other divisors are rejected.
    pub fn div_rem(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let lead = match divisor.leading() {
            Some(l) => l.clone(),
            None => return invalid("division by the zero polynomial"),
        };
        if !lead.abs().is_one() {
            return invalid(format!(
                "divisor leading coefficient {lead} is not a unit"
            ));
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            // lead is ±1, so multiplying by it is exact division
            let factor = &rem[k] * &lead;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] -= &factor * d;
            }
            quot[k - dd] = factor;
        }
        rem.truncate(dd);
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    pub fn rem(&self, divisor: &IntPoly) -> Result<IntPoly> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Exact division; fails if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return invalid("polynomial division is not exact");
        }
        Ok(q)
    }

    /// Evaluates at a complex point given as `(re, im)`; used for floating
    /// sanity checks only.
    pub fn eval_complex(&self, z: (f64, f64)) -> (f64, f64) {
        let mut acc = (0.0f64, 0.0f64);
        for c in self.coeffs.iter().rev() {
            let cf = bigint_to_f64(c);
            acc = (acc.0 * z.0 - acc.1 * z.1 + cf, acc.0 * z.1 + acc.1 * z.0);
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitutes `q = 1 - h` and returns the coefficients in powers of `h`.
    pub fn substitute_one_minus(&self) -> IntPoly {
        let base = IntPoly::from_i64(&[1, -1]);
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &base) + &IntPoly::constant(c.clone());
        }
        acc
    }
}

fn bigint_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        IntPoly::new(out)
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        IntPoly::new(out)
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPoly {
    /// Coefficient list, constant term first, e.g. `1,-1` for `1 - q`.
    /// The zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl std::str::FromStr for IntPoly {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<BigInt>()
                    .map_err(|_| crate::Error::InvalidArgument(format!("bad polynomial coefficient `{c}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(IntPoly::from_i64(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(IntPoly::from_i64(&[0, 0]).is_zero());
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = IntPoly::from_i64(&[3, -1, 4, 1, -5, 9]);
        let b = IntPoly::from_i64(&[2, 0, -1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn rejects_non_unit_leading() {
        let b = IntPoly::from_i64(&[1, 2]);
        assert!(IntPoly::one().div_rem(&b).is_err());
        assert!(IntPoly::one().div_rem(&IntPoly::zero()).is_err());
    }

    #[test]
    fn substitution_at_one_minus_h() {
        // q^2 = (1-h)^2 = 1 - 2h + h^2
        let q2 = IntPoly::from_i64(&[0, 0, 1]);
        assert_eq!(q2.substitute_one_minus(), IntPoly::from_i64(&[1, -2, 1]));
    }
}
