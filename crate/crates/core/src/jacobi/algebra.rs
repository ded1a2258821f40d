//! Rational combinations of closed diagrams: product, coproduct, reduction
//! to quotient coordinates and the group-like test.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use super::diagram::JacobiDiagram;
use super::quotient::{QuotientBasis, DEFAULT_MAX_DEGREE};
use crate::error::{invalid, Error, Result};
use crate::linalg::{rat, Rational};

/// A rational combination of canonical closed diagrams of degree at most
/// `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramCombination {
    level: usize,
    terms: BTreeMap<JacobiDiagram, Rational>,
}

impl DiagramCombination {
    pub fn zero(level: usize) -> Self {
        DiagramCombination {
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(level: usize) -> Self {
        Self::single(JacobiDiagram::empty(), level)
    }

    pub fn single(d: JacobiDiagram, level: usize) -> Self {
        let mut c = Self::zero(level);
        c.add_term(Rational::one(), &d);
        c
    }

    /// Adds `coeff * d`; `d` is canonicalised and terms above the level are
    /// reported as an error.
    pub fn try_add_term(&mut self, coeff: Rational, d: &JacobiDiagram) -> Result<()> {
        if d.degree() > self.level {
            return Err(Error::PrecisionExceeded(format!(
                "degree {} term in a combination truncated at degree {}",
                d.degree(),
                self.level
            )));
        }
        self.add_term(coeff, d);
        Ok(())
    }

    fn add_term(&mut self, coeff: Rational, d: &JacobiDiagram) {
        if coeff.is_zero() {
            return;
        }
        let cf = d.canonical_form();
        let entry = self
            .terms
            .entry(cf.diagram.clone())
            .or_insert_with(Rational::zero);
        *entry += coeff * rat(cf.sign as i64);
        if entry.is_zero() {
            self.terms.remove(&cf.diagram);
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn terms(&self) -> &BTreeMap<JacobiDiagram, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, d: &JacobiDiagram) -> Rational {
        let cf = d.canonical_form();
        self.terms
            .get(&cf.diagram)
            .map(|c| c * rat(cf.sign as i64))
            .unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the empty diagram.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&JacobiDiagram::empty())
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|d| d.degree()).max()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.level);
        if !s.is_zero() {
            for (d, c) in &self.terms {
                out.terms.insert(d.clone(), c * s);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.level.min(other.level));
        for (d, c) in self.terms.iter().chain(&other.terms) {
            if d.degree() <= out.level {
                out.add_term(c.clone(), d);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    /// Terms of a single degree.
    pub fn homogeneous_part(&self, degree: usize) -> Self {
        let mut out = Self::zero(self.level);
        for (d, c) in &self.terms {
            if d.degree() == degree {
                out.terms.insert(d.clone(), c.clone());
            }
        }
        out
    }

    /// `exp(self)` truncated at the level; the constant term must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return invalid("exponential of a combination with nonzero constant term");
        }
        let mut sum = Self::one(self.level);
        let mut power = Self::one(self.level);
        for k in 1..=self.level {
            power = diagram_mul(&power, self).product;
            sum = sum.add(&power.scale(&Rational::new(1.into(), factorial(k).into())));
        }
        Ok(sum)
    }
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

impl fmt::Display for DiagramCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| format!("{c}*{d}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Product of two combinations and whether terms above the level were
/// discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub product: DiagramCombination,
    pub truncated: bool,
}

/// Disjoint union extended bilinearly, at the smaller of the two levels.
pub fn diagram_mul(a: &DiagramCombination, b: &DiagramCombination) -> Product {
    let level = a.level.min(b.level);
    let mut out = DiagramCombination::zero(level);
    let mut truncated = false;
    for (da, ca) in &a.terms {
        for (db, cb) in &b.terms {
            if da.degree() + db.degree() > level {
                truncated = true;
                continue;
            }
            out.add_term(ca * cb, &da.disjoint_union(db));
        }
    }
    Product {
        product: out,
        truncated,
    }
}

/// A rational combination of tensor products of canonical diagrams.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorCombination {
    terms: BTreeMap<(JacobiDiagram, JacobiDiagram), Rational>,
}

impl TensorCombination {
    pub fn terms(&self) -> &BTreeMap<(JacobiDiagram, JacobiDiagram), Rational> {
        &self.terms
    }

    pub fn add_term(&mut self, coeff: Rational, left: &JacobiDiagram, right: &JacobiDiagram) {
        if coeff.is_zero() {
            return;
        }
        let (l, r) = (left.canonical_form(), right.canonical_form());
        let key = (l.diagram, r.diagram);
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += coeff * rat((l.sign * r.sign) as i64);
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `a ⊗ b`
    pub fn tensor(a: &DiagramCombination, b: &DiagramCombination) -> Self {
        let mut out = Self::default();
        for (da, ca) in &a.terms {
            for (db, cb) in &b.terms {
                out.add_term(ca * cb, da, db);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(-c.clone(), l, r);
        }
        out
    }
}

/// Sum over ordered splittings of the set of connected components.
pub fn coproduct(c: &DiagramCombination) -> TensorCombination {
    let mut out = TensorCombination::default();
    for (d, coeff) in &c.terms {
        let comps = d.component_vertices();
        let k = comps.len();
        for mask in 0u64..(1 << k) {
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (i, comp) in comps.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    left.extend_from_slice(comp);
                } else {
                    right.extend_from_slice(comp);
                }
            }
            left.sort_unstable();
            right.sort_unstable();
            out.add_term(coeff.clone(), &d.induced(&left), &d.induced(&right));
        }
    }
    out
}

/// Counit: the constant term.
pub fn counit(c: &DiagramCombination) -> Rational {
    c.constant_term()
}

/// Quotient bases for every degree up to a cap, built on first use.
#[derive(Debug)]
pub struct DiagramAlgebra {
    max_degree: usize,
    bases: Vec<OnceLock<QuotientBasis>>,
}

impl Default for DiagramAlgebra {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_DEGREE)
    }
}

impl DiagramAlgebra {
    pub fn new(max_degree: usize) -> Self {
        DiagramAlgebra {
            max_degree,
            bases: (0..=max_degree).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn basis(&self, degree: usize) -> Result<&QuotientBasis> {
        let slot = self.bases.get(degree).ok_or_else(|| {
            Error::ResourceLimit(format!(
                "degree {degree} exceeds the configured maximum {}",
                self.max_degree
            ))
        })?;
        Ok(slot.get_or_init(|| {
            QuotientBasis::generate(degree, self.max_degree).expect("degree within cap")
        }))
    }

    /// Quotient coordinates of every homogeneous part, keyed by degree.
    /// Degrees with no terms are omitted.
    pub fn reduce(&self, c: &DiagramCombination) -> Result<BTreeMap<usize, Vec<Rational>>> {
        let mut by_degree: BTreeMap<usize, Vec<(Rational, &JacobiDiagram)>> = BTreeMap::new();
        for (d, coeff) in &c.terms {
            by_degree.entry(d.degree()).or_default().push((coeff.clone(), d));
        }
        let mut out = BTreeMap::new();
        for (deg, terms) in by_degree {
            let basis = self.basis(deg)?;
            let v = basis.vector_of(terms);
            out.insert(deg, basis.coordinates(&v));
        }
        Ok(out)
    }

    /// Whether the combination vanishes in the quotient.
    pub fn is_zero_class(&self, c: &DiagramCombination) -> Result<bool> {
        Ok(self
            .reduce(c)?
            .values()
            .all(|v| v.iter().all(Zero::is_zero)))
    }

    /// Quotient coordinates of a tensor combination per bidegree, as a
    /// flattened `dim_p x dim_q` array.
    pub fn reduce_tensor(
        &self,
        t: &TensorCombination,
    ) -> Result<BTreeMap<(usize, usize), Vec<Rational>>> {
        let mut out: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
        for ((l, r), c) in &t.terms {
            let (bl, br) = (self.basis(l.degree())?, self.basis(r.degree())?);
            let cl = bl.coordinates(&bl.vector_of([(Rational::one(), l)]));
            let cr = br.coordinates(&br.vector_of([(Rational::one(), r)]));
            let slot = out
                .entry((l.degree(), r.degree()))
                .or_insert_with(|| vec![Rational::zero(); cl.len() * cr.len()]);
            for (i, x) in cl.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in cr.iter().enumerate() {
                    slot[i * cr.len() + j] += c * x * y;
                }
            }
        }
        Ok(out)
    }

    /// `Δ(s) = s ⊗ s` in every bidegree `(p, q)` with `p + q <= truncation`.
    pub fn is_group_like(&self, s: &DiagramCombination, truncation: usize) -> Result<bool> {
        if !s.constant_term().is_one() {
            return invalid("a group-like element must have constant term 1");
        }
        let diff = coproduct(s).sub(&TensorCombination::tensor(s, s));
        let reduced = self.reduce_tensor(&diff)?;
        Ok(reduced
            .iter()
            .filter(|((p, q), _)| p + q <= truncation)
            .all(|(_, v)| v.iter().all(Zero::is_zero)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(level: usize) -> DiagramCombination {
        DiagramCombination::single(JacobiDiagram::theta(), level)
    }

    #[test]
    fn products() {
        let one = DiagramCombination::one(3);
        assert_eq!(diagram_mul(&one, &theta(3)).product, theta(3));
        let tt = diagram_mul(&theta(3), &theta(3));
        assert!(!tt.truncated);
        assert_eq!(tt.product.coefficient(&JacobiDiagram::theta_power(2)), rat(1));
        let lhs = theta(3).add(&one.scale(&rat(2)));
        let expected = tt.product.add(&theta(3).scale(&rat(2)));
        assert_eq!(diagram_mul(&lhs, &theta(3)).product, expected);
        let over = diagram_mul(&theta(1), &theta(1));
        assert!(over.truncated && over.product.is_zero());
    }

    #[test]
    fn coproduct_examples() {
        let e = JacobiDiagram::empty();
        let t = JacobiDiagram::theta();
        let tt = JacobiDiagram::theta_power(2);
        let mut expect = TensorCombination::default();
        expect.add_term(rat(1), &e, &e);
        assert_eq!(coproduct(&DiagramCombination::one(3)), expect);

        let mut expect = TensorCombination::default();
        expect.add_term(rat(1), &t, &e);
        expect.add_term(rat(1), &e, &t);
        assert_eq!(coproduct(&theta(3)), expect);

        let mut expect = TensorCombination::default();
        expect.add_term(rat(1), &tt, &e);
        expect.add_term(rat(2), &t, &t);
        expect.add_term(rat(1), &e, &tt);
        assert_eq!(coproduct(&DiagramCombination::single(tt.clone(), 3)), expect);
    }

    #[test]
    fn group_like_examples() {
        let alg = DiagramAlgebra::new(3);
        assert!(alg.is_group_like(&DiagramCombination::one(3), 3).unwrap());
        assert!(alg.is_group_like(&theta(3).exp().unwrap(), 3).unwrap());
        let s = DiagramCombination::one(3).add(&theta(3));
        assert!(!alg.is_group_like(&s, 3).unwrap());
        assert!(alg.is_group_like(&theta(3), 3).is_err());
    }

    #[test]
    fn reduce_is_linear() {
        let alg = DiagramAlgebra::new(2);
        let c = alg.reduce(&theta(2).add(&theta(2))).unwrap();
        let single = alg.reduce(&theta(2)).unwrap();
        let doubled: Vec<_> = single[&1].iter().map(|x| x * rat(2)).collect();
        assert_eq!(c[&1], doubled);
        assert!(alg.reduce(&DiagramCombination::single(JacobiDiagram::theta_power(3), 3)).is_err());
    }
}
