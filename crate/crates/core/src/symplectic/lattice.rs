use num_traits::Zero;

use crate::error::{invalid, Result};
use crate::linalg::{IntMatrix, Rational};

/// `H = H_1(Σ_{g,1})` with basis `a_1..a_g, b_1..b_g` and intersection form
/// `ω(a_i, b_j) = δ_ij`. Coordinates list the `a`'s first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticLattice {
    genus: usize,
}

impl SymplecticLattice {
    pub fn new(genus: usize) -> Self {
        SymplecticLattice { genus }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    /// `[[0, I], [-I, 0]]`
    pub fn form(&self) -> IntMatrix {
        let g = self.genus;
        let mut m = IntMatrix::zeros(2 * g, 2 * g);
        for i in 0..g {
            m[(i, g + i)] = 1.into();
            m[(g + i, i)] = (-1).into();
        }
        m
    }

    /// `ω` on basis indices.
    pub fn omega_basis(&self, i: usize, j: usize) -> i64 {
        let g = self.genus;
        if i < g && j == i + g {
            1
        } else if i >= g && j + g == i {
            -1
        } else {
            0
        }
    }

    pub fn omega(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        if x.len() != self.rank() || y.len() != self.rank() {
            return invalid(format!(
                "vectors of length {} and {} in a lattice of rank {}",
                x.len(),
                y.len(),
                self.rank()
            ));
        }
        let g = self.genus;
        let mut s = Rational::zero();
        for i in 0..g {
            s += &x[i] * &y[g + i] - &x[g + i] * &y[i];
        }
        Ok(s)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        (0..self.rank())
            .map(|k| if k == i { Rational::from_integer(1.into()) } else { Rational::zero() })
            .collect()
    }

    /// `a1`, `b3`, ...
    pub fn label(&self, i: usize) -> String {
        basis_label(self.genus, i)
    }

    pub fn parse_label(&self, s: &str) -> Option<usize> {
        parse_basis_label(self.genus, s)
    }
}

pub fn basis_label(genus: usize, i: usize) -> String {
    if i < genus {
        format!("a{}", i + 1)
    } else {
        format!("b{}", i - genus + 1)
    }
}

pub fn parse_basis_label(genus: usize, s: &str) -> Option<usize> {
    if !s.is_char_boundary(1) {
        return None;
    }
    let (kind, num) = s.split_at(1);
    let k: usize = num.parse().ok()?;
    if k == 0 || k > genus {
        return None;
    }
    match kind {
        "a" => Some(k - 1),
        "b" => Some(genus + k - 1),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn omega_examples() {
        let h = SymplecticLattice::new(2);
        let (a1, a2, b1) = (h.basis_vector(0), h.basis_vector(1), h.basis_vector(2));
        assert_eq!(h.omega(&a1, &b1).unwrap(), rat(1));
        assert_eq!(h.omega(&a1, &a2).unwrap(), rat(0));
        assert_eq!(h.omega(&b1, &a1).unwrap(), rat(-1));
        assert!(h.omega(&a1, &[rat(1)]).is_err());
    }

    #[test]
    fn form_is_unimodular_and_antisymmetric() {
        for g in 0..4 {
            let j = SymplecticLattice::new(g).form();
            assert_eq!(j.transpose(), IntMatrix::zeros(2 * g, 2 * g).sub(&j));
            assert_eq!(j.determinant(), 1.into());
        }
    }

    #[test]
    fn labels_round_trip() {
        let h = SymplecticLattice::new(3);
        for i in 0..6 {
            assert_eq!(h.parse_label(&h.label(i)), Some(i));
        }
        assert_eq!(h.parse_label("a4"), None);
        assert_eq!(h.parse_label("c1"), None);
    }
}
