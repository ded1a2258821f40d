//! Polynomial functions on `H_Q` with a formal parameter `t`, the
//! symplectic Poisson bracket and the Moyal-Weyl star product.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::lattice::{basis_label, parse_basis_label, SymplecticLattice};
use crate::error::{invalid, Result};
use crate::linalg::{rat, Rational};

pub const DEFAULT_T_ORDER: usize = 4;

/// `t^t · Π x_i^{exps[i]}`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub t: u32,
    pub exps: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            t: self.t + other.t,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Element of `Q[x_1..x_2g][t] / (t^order)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialObservable {
    lattice: SymplecticLattice,
    order: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl PolynomialObservable {
    pub fn zero(lattice: SymplecticLattice, order: usize) -> Self {
        PolynomialObservable {
            lattice,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(lattice: SymplecticLattice, order: usize, c: Rational) -> Self {
        let mut p = Self::zero(lattice, order);
        p.add_term(
            c,
            Monomial {
                t: 0,
                exps: vec![0; lattice.rank()],
            },
        );
        p
    }

    pub fn one(lattice: SymplecticLattice, order: usize) -> Self {
        Self::constant(lattice, order, rat(1))
    }

    /// The coordinate function `x_i`.
    pub fn variable(lattice: SymplecticLattice, order: usize, i: usize) -> Self {
        let mut exps = vec![0; lattice.rank()];
        exps[i] = 1;
        let mut p = Self::zero(lattice, order);
        p.add_term(rat(1), Monomial { t: 0, exps });
        p
    }

    /// `c · t^k · Π x_i^{e_i}`; terms at or beyond the truncation are dropped.
    pub fn monomial(lattice: SymplecticLattice, order: usize, c: Rational, t: u32, exps: Vec<u32>) -> Result<Self> {
        if exps.len() != lattice.rank() {
            return invalid(format!(
                "{} exponents given for {} variables",
                exps.len(),
                lattice.rank()
            ));
        }
        let mut p = Self::zero(lattice, order);
        p.add_term(c, Monomial { t, exps });
        Ok(p)
    }

    pub fn lattice(&self) -> SymplecticLattice {
        self.lattice
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest polynomial degree in the `x` variables.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, c: Rational, m: Monomial) {
        if c.is_zero() || m.t as usize >= self.order {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.lattice != other.lattice {
            return invalid("observables over lattices of different genus");
        }
        Ok(())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut out = Self::zero(self.lattice, order.min(self.order));
        for (m, c) in &self.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.truncate(other.order);
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.lattice, self.order);
        for (m, c) in &self.terms {
            out.add_term(c * s, m.clone());
        }
        out
    }

    /// Commutative product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.lattice, self.order.min(other.order));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ca * cb, ma.mul(mb));
            }
        }
        Ok(out)
    }

    /// `∂/∂x_i`
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.lattice, self.order);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.exps[i] -= 1;
            out.add_term(c * rat(e as i64), d);
        }
        out
    }

    /// Divides by `t`, discarding the `t^0` part; the order drops by one.
    pub fn div_t(&self) -> Self {
        let mut out = Self::zero(self.lattice, self.order.saturating_sub(1));
        for (m, c) in &self.terms {
            if m.t > 0 {
                let mut d = m.clone();
                d.t -= 1;
                out.add_term(c.clone(), d);
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_poly(text, DEFAULT_T_ORDER)
    }

    pub fn parse_with_order(text: &str, order: usize) -> Result<Self> {
        parse_poly(text, order)
    }

    /// Body of the textual form, `1*x[a1]^2 + -1/2*t*x[b1]`.
    pub fn terms_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let g = self.lattice.genus();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = c.to_string();
                match m.t {
                    0 => {}
                    1 => s.push_str("*t"),
                    k => s.push_str(&format!("*t^{k}")),
                }
                for (i, &e) in m.exps.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("*x[{}]", basis_label(g, i))),
                        e => s.push_str(&format!("*x[{}]^{e}", basis_label(g, i))),
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for PolynomialObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "poly g={} terms={}", self.lattice.genus(), self.terms_string())
    }
}

fn parse_poly(text: &str, order: usize) -> Result<PolynomialObservable> {
    let text = text.trim();
    let rest = text
        .strip_prefix("poly")
        .ok_or_else(|| crate::Error::InvalidArgument("polynomial must start with `poly`".into()))?
        .trim_start();
    let rest = rest
        .strip_prefix("g=")
        .ok_or_else(|| crate::Error::InvalidArgument("expected `g=` after `poly`".into()))?;
    let (g, body) = rest
        .split_once(char::is_whitespace)
        .ok_or_else(|| crate::Error::InvalidArgument("expected `terms=`".into()))?;
    let g: usize = g
        .parse()
        .map_err(|_| crate::Error::InvalidArgument(format!("bad genus `{g}`")))?;
    let body = body
        .trim_start()
        .strip_prefix("terms=")
        .ok_or_else(|| crate::Error::InvalidArgument("expected `terms=`".into()))?;
    parse_terms(SymplecticLattice::new(g), order, body)
}

/// Parses `c*t^k*x[a1]^2 + ...`; a bare `0` is the zero polynomial.
pub fn parse_terms(lattice: SymplecticLattice, order: usize, body: &str) -> Result<PolynomialObservable> {
    let mut p = PolynomialObservable::zero(lattice, order);
    for term in body.split(" + ") {
        let term = term.trim();
        if term.is_empty() {
            return invalid("empty polynomial term");
        }
        let mut c = rat(1);
        let mut m = Monomial {
            t: 0,
            exps: vec![0; lattice.rank()],
        };
        for (k, factor) in term.split('*').enumerate() {
            let (base, exp) = match factor.rsplit_once('^') {
                Some((b, e)) if !b.ends_with(']') || b.starts_with("x[") => {
                    let e: u32 = e
                        .parse()
                        .map_err(|_| crate::Error::InvalidArgument(format!("bad exponent in `{factor}`")))?;
                    (b, e)
                }
                _ => (factor, 1),
            };
            if base == "t" {
                m.t += exp;
            } else if let Some(label) = base.strip_prefix("x[").and_then(|s| s.strip_suffix(']')) {
                let i = parse_basis_label(lattice.genus(), label).ok_or_else(|| {
                    crate::Error::InvalidArgument(format!("unknown variable `{label}` for genus {}", lattice.genus()))
                })?;
                m.exps[i] += exp;
            } else if k == 0 && exp == 1 {
                c = base
                    .parse::<Rational>()
                    .map_err(|_| crate::Error::InvalidArgument(format!("bad coefficient `{base}`")))?;
            } else {
                return invalid(format!("unrecognized factor `{factor}`"));
            }
        }
        p.add_term(c, m);
    }
    Ok(p)
}

/// `{p, q} = Σ Π^{ij} ∂_i p ∂_j q` with `Π^{a_k b_k} = 1 = -Π^{b_k a_k}`.
pub fn poisson_bracket(p: &PolynomialObservable, q: &PolynomialObservable) -> Result<PolynomialObservable> {
    p.check(q)?;
    let lattice = p.lattice;
    let mut out = PolynomialObservable::zero(lattice, p.order.min(q.order));
    for i in 0..lattice.rank() {
        for j in 0..lattice.rank() {
            let w = lattice.omega_basis(i, j);
            if w != 0 {
                out = out.add(&p.derivative(i).mul(&q.derivative(j))?.scale(&rat(w)))?;
            }
        }
    }
    Ok(out)
}

/// `p ⋆ q = Σ_n t^n / (2^n n!) · mult(P^n (p ⊗ q))` truncated below `t^order`,
/// where `P = Σ Π^{ij} ∂_i ⊗ ∂_j`.
pub fn moyal_product(
    p: &PolynomialObservable,
    q: &PolynomialObservable,
    order: usize,
) -> Result<PolynomialObservable> {
    p.check(q)?;
    let lattice = p.lattice;
    let order = order.min(p.order).min(q.order);
    let mut out = PolynomialObservable::zero(lattice, order);
    // P^n (p ⊗ q) as a list of simple tensors
    let mut layer = vec![(rat(1), p.clone(), q.clone())];
    let mut t_pow = PolynomialObservable::one(lattice, order);
    let mut factor = rat(1);
    let t = PolynomialObservable::monomial(lattice, order, rat(1), 1, vec![0; lattice.rank()])?;
    for n in 0..order {
        if layer.is_empty() {
            break;
        }
        if n > 0 {
            factor /= rat(2 * n as i64);
            t_pow = t_pow.mul(&t)?;
        }
        for (c, a, b) in &layer {
            let term = a.mul(b)?.mul(&t_pow)?.scale(&(c * &factor));
            out = out.add(&term)?;
        }
        let mut next = Vec::new();
        for (c, a, b) in &layer {
            for i in 0..lattice.rank() {
                let da = a.derivative(i);
                if da.is_zero() {
                    continue;
                }
                for j in 0..lattice.rank() {
                    let w = lattice.omega_basis(i, j);
                    if w == 0 {
                        continue;
                    }
                    let db = b.derivative(j);
                    if !db.is_zero() {
                        next.push((c * rat(w), da.clone(), db));
                    }
                }
            }
        }
        layer = next;
    }
    Ok(out)
}

impl PolynomialObservable {
    /// Coefficient of a monomial given by `t` power and exponents.
    pub fn coefficient(&self, t: u32, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial {
                t,
                exps: exps.to_vec(),
            })
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_constant_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.t == 0 && m.degree() == 0 && c.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;
    use proptest::prelude::*;

    fn g1() -> SymplecticLattice {
        SymplecticLattice::new(1)
    }

    fn x(i: usize) -> PolynomialObservable {
        PolynomialObservable::variable(g1(), 4, i)
    }

    #[test]
    fn linear_commutator_is_t() {
        let (a, b) = (x(0), x(1));
        let c = moyal_product(&a, &b, 4)
            .unwrap()
            .sub(&moyal_product(&b, &a, 4).unwrap())
            .unwrap();
        assert_eq!(c, PolynomialObservable::monomial(g1(), 4, rat(1), 1, vec![0, 0]).unwrap());
    }

    #[test]
    fn squares_example() {
        let a2 = x(0).mul(&x(0)).unwrap();
        let b2 = x(1).mul(&x(1)).unwrap();
        let r = moyal_product(&a2, &b2, 4).unwrap();
        // independent expansion: n=1 gives (1/2)(2x_a)(2x_b)t, n=2 gives (1/8)(2)(2)t^2
        let mut expect = PolynomialObservable::zero(g1(), 4);
        expect.add_term(rat(1), Monomial { t: 0, exps: vec![2, 2] });
        expect.add_term(rat(2), Monomial { t: 1, exps: vec![1, 1] });
        expect.add_term(ratio(1, 2), Monomial { t: 2, exps: vec![0, 0] });
        assert_eq!(r, expect);
        assert_eq!(r.terms_string(), "1*x[a1]^2*x[b1]^2 + 2*t*x[a1]*x[b1] + 1/2*t^2");
    }

    #[test]
    fn poisson_examples() {
        let one = PolynomialObservable::one(g1(), 4);
        assert_eq!(poisson_bracket(&x(0), &x(1)).unwrap(), one);
        let ab = x(0).mul(&x(1)).unwrap();
        assert_eq!(poisson_bracket(&ab, &x(0)).unwrap(), x(0).scale(&rat(-1)));
        assert!(poisson_bracket(&ab, &ab).unwrap().is_zero());
        assert_eq!(moyal_product(&one, &ab, 4).unwrap(), ab);
    }

    #[test]
    fn text_round_trip() {
        let p = PolynomialObservable::parse("poly g=1 terms=1*x[a1]^2 + -1/2*t*x[b1]").unwrap();
        assert_eq!(p.coefficient(0, &[2, 0]), rat(1));
        assert_eq!(p.coefficient(1, &[0, 1]), ratio(-1, 2));
        assert_eq!(PolynomialObservable::parse(&p.to_string()).unwrap(), p);
        assert!(PolynomialObservable::parse("poly g=1 terms=x[a2]").is_err());
        assert!(PolynomialObservable::parse("poly g=1 terms=1*y").is_err());
        assert!(PolynomialObservable::parse("poly g=1 terms=0").unwrap().is_zero());
    }

    fn poly(g: usize) -> impl Strategy<Value = PolynomialObservable> {
        let n = 2 * g;
        proptest::collection::vec(
            (-3i64..=3, 0u32..2, proptest::collection::vec(0u32..3, n)),
            0..4,
        )
        .prop_map(move |ts| {
            let lat = SymplecticLattice::new(g);
            let mut p = PolynomialObservable::zero(lat, 4);
            for (c, t, e) in ts {
                p.add_term(rat(c), Monomial { t, exps: e });
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn associative(p in poly(1), q in poly(1), r in poly(1)) {
            let l = moyal_product(&moyal_product(&p, &q, 4).unwrap(), &r, 4).unwrap();
            let rr = moyal_product(&p, &moyal_product(&q, &r, 4).unwrap(), 4).unwrap();
            prop_assert_eq!(l, rr);
        }

        #[test]
        fn commutator_leading_term(p in poly(2), q in poly(2)) {
            let c = moyal_product(&p, &q, 4).unwrap().sub(&moyal_product(&q, &p, 4).unwrap()).unwrap();
            let lead = c.div_t().truncate(1);
            prop_assert_eq!(lead, poisson_bracket(&p, &q).unwrap().truncate(1));
        }
    }
}
