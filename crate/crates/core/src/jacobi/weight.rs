//! Weight systems of metrized Lie algebras and the series they induce.

use std::fmt;

use num_traits::{One, Zero};

use super::algebra::DiagramCombination;
use super::diagram::JacobiDiagram;
use crate::error::{invalid, Result};
use crate::linalg::{rat, Rational, RowReduced};

/// A Lie algebra with an invariant metric, given by structure constants
/// `[x_a, x_b] = Σ_c structure[a][b][c] x_c`.
#[derive(Clone, Debug)]
pub struct WeightData {
    name: String,
    dim: usize,
    structure: Vec<Rational>,
    metric: Vec<Rational>,
    inverse_metric: Vec<Rational>,
    /// `f_{abc} = <[x_a, x_b], x_c>`, totally antisymmetric.
    lowered: Vec<Rational>,
    /// `lowered` with the slots flagged in the mask raised by the inverse
    /// metric; index `mask * dim^3 + (a * dim + b) * dim + c`.
    raised: Vec<Rational>,
}

impl WeightData {
    /// Validates and precomputes contraction tensors. `structure` is indexed
    /// `[a][b][c]`, `metric` is a symmetric invertible `dim x dim` matrix.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        structure: Vec<Rational>,
        metric: Vec<Rational>,
    ) -> Result<Self> {
        let d3 = dim * dim * dim;
        if structure.len() != d3 || metric.len() != dim * dim {
            return invalid("weight data shapes do not match the dimension");
        }
        let at = |a: usize, b: usize, c: usize| (a * dim + b) * dim + c;
        for a in 0..dim {
            for b in 0..dim {
                if metric[a * dim + b] != metric[b * dim + a] {
                    return invalid("metric is not symmetric");
                }
                for c in 0..dim {
                    if structure[at(a, b, c)] != -structure[at(b, a, c)].clone() {
                        return invalid("structure constants are not antisymmetric in the first two indices");
                    }
                }
            }
        }
        let inverse_metric = invert(&metric, dim)
            .ok_or_else(|| crate::Error::InvalidArgument("metric is not invertible".into()))?;
        let mut lowered = vec![Rational::zero(); d3];
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let mut s = Rational::zero();
                    for e in 0..dim {
                        s += &structure[at(a, b, e)] * &metric[e * dim + c];
                    }
                    lowered[at(a, b, c)] = s;
                }
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let x = &lowered[at(a, b, c)];
                    if *x != lowered[at(b, c, a)] || *x != -lowered[at(b, a, c)].clone() {
                        return invalid("lowered structure tensor is not totally antisymmetric");
                    }
                }
            }
        }
        let mut raised = vec![Rational::zero(); 8 * d3];
        for mask in 0..8usize {
            let mut t = lowered.clone();
            for slot in 0..3 {
                if mask >> slot & 1 == 0 {
                    continue;
                }
                let mut next = vec![Rational::zero(); d3];
                for a in 0..dim {
                    for b in 0..dim {
                        for c in 0..dim {
                            let idx = [a, b, c];
                            let mut s = Rational::zero();
                            for e in 0..dim {
                                let mut j = idx;
                                j[slot] = e;
                                let g = &inverse_metric[e * dim + idx[slot]];
                                if !g.is_zero() {
                                    s += &t[at(j[0], j[1], j[2])] * g;
                                }
                            }
                            next[at(a, b, c)] = s;
                        }
                    }
                }
                t = next;
            }
            raised[mask * d3..(mask + 1) * d3].clone_from_slice(&t);
        }
        Ok(WeightData {
            name: name.into(),
            dim,
            structure,
            metric,
            inverse_metric,
            lowered,
            raised,
        })
    }

    /// The alternating tensor `ε` with the identity metric (`so(3)` in an
    /// orthonormal basis).
    pub fn epsilon() -> Self {
        let mut s = vec![Rational::zero(); 27];
        for (a, b, c, sign) in [
            (0, 1, 2, 1),
            (1, 2, 0, 1),
            (2, 0, 1, 1),
            (1, 0, 2, -1),
            (2, 1, 0, -1),
            (0, 2, 1, -1),
        ] {
            s[(a * 3 + b) * 3 + c] = rat(sign);
        }
        let mut g = vec![Rational::zero(); 9];
        for i in 0..3 {
            g[i * 3 + i] = rat(1);
        }
        Self::new("epsilon", 3, s, g).expect("epsilon data is valid")
    }

    /// `sl_2` in the basis `H, E, F` with the trace form of the fundamental
    /// representation: `<H,H> = 2`, `<E,F> = 1`.
    pub fn sl2() -> Self {
        let (h, e, f) = (0, 1, 2);
        let mut s = vec![Rational::zero(); 27];
        let mut set = |a: usize, b: usize, c: usize, v: i64| {
            s[(a * 3 + b) * 3 + c] = rat(v);
            s[(b * 3 + a) * 3 + c] = rat(-v);
        };
        set(h, e, e, 2);
        set(h, f, f, -2);
        set(e, f, h, 1);
        let mut g = vec![Rational::zero(); 9];
        g[h * 3 + h] = rat(2);
        g[e * 3 + f] = rat(1);
        g[f * 3 + e] = rat(1);
        Self::new("sl2", 3, s, g).expect("sl2 data is valid")
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "epsilon" => Some(Self::epsilon()),
            "sl2" => Some(Self::sl2()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn structure(&self) -> &[Rational] {
        &self.structure
    }

    pub fn metric(&self) -> &[Rational] {
        &self.metric
    }

    pub fn inverse_metric(&self) -> &[Rational] {
        &self.inverse_metric
    }

    pub fn lowered(&self) -> &[Rational] {
        &self.lowered
    }

    fn raised(&self, mask: usize, a: usize, b: usize, c: usize) -> &Rational {
        let d = self.dim;
        &self.raised[mask * d * d * d + (a * d + b) * d + c]
    }
}

fn invert(m: &[Rational], dim: usize) -> Option<Vec<Rational>> {
    let rows = (0..dim)
        .map(|i| {
            let mut r = m[i * dim..(i + 1) * dim].to_vec();
            r.extend((0..dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let rr = RowReduced::new(rows, 2 * dim);
    if rr.rank() != dim || rr.pivots().iter().any(|&p| p >= dim) {
        return None;
    }
    Some(
        rr.rows()
            .iter()
            .flat_map(|r| r[dim..].to_vec())
            .collect(),
    )
}

/// State sum: the lowered structure tensor at each vertex in its cyclic
/// order, the inverse metric on each edge, all indices contracted.
pub fn weight_system(w: &WeightData, d: &JacobiDiagram) -> Rational {
    let edges: Vec<(usize, usize)> = d.edges().collect();
    if edges.is_empty() {
        return Rational::one();
    }
    let mut edge_of = vec![0; d.pairing().len()];
    for (e, &(a, b)) in edges.iter().enumerate() {
        edge_of[a] = e;
        edge_of[b] = e;
    }
    // second half-edge of an edge carries the raised index
    let masks: Vec<usize> = (0..d.num_vertices())
        .map(|v| {
            (0..3)
                .filter(|&i| edges[edge_of[3 * v + i]].1 == 3 * v + i)
                .fold(0, |m, i| m | 1 << i)
        })
        .collect();
    // assign edges vertex by vertex so that vertex factors close early
    let mut order: Vec<usize> = Vec::new();
    let mut pos = vec![usize::MAX; edges.len()];
    for &e in &edge_of[..d.pairing().len()] {
        if pos[e] == usize::MAX {
            pos[e] = order.len();
            order.push(e);
        }
    }
    let mut completes = vec![Vec::new(); order.len()];
    for v in 0..d.num_vertices() {
        let last = (0..3).map(|i| pos[edge_of[3 * v + i]]).max().expect("three slots");
        completes[last].push(v);
    }
    let mut values = vec![0usize; edges.len()];
    let mut total = Rational::zero();
    contract(
        w,
        &order,
        &completes,
        &edge_of,
        &masks,
        0,
        &mut values,
        Rational::one(),
        &mut total,
    );
    total
}

#[allow(clippy::too_many_arguments)]
fn contract(
    w: &WeightData,
    order: &[usize],
    completes: &[Vec<usize>],
    edge_of: &[usize],
    masks: &[usize],
    step: usize,
    values: &mut Vec<usize>,
    acc: Rational,
    total: &mut Rational,
) {
    if step == order.len() {
        *total += acc;
        return;
    }
    for x in 0..w.dim {
        values[order[step]] = x;
        let mut term = acc.clone();
        for &v in &completes[step] {
            let idx = |i: usize| values[edge_of[3 * v + i]];
            let t = w.raised(masks[v], idx(0), idx(1), idx(2));
            if t.is_zero() {
                term = Rational::zero();
                break;
            }
            term *= t;
        }
        if term.is_zero() {
            continue;
        }
        contract(w, order, completes, edge_of, masks, step + 1, values, term, total);
    }
}

/// A truncated power series in `h` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSeries {
    coefficients: Vec<Rational>,
}

impl HSeries {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        HSeries { coefficients }
    }

    pub fn truncation(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `Σ coeff · W(D) · h^{deg D}` modulo `h^truncation`.
pub fn weight_series(w: &WeightData, c: &DiagramCombination, truncation: usize) -> HSeries {
    let mut coefficients = vec![Rational::zero(); truncation];
    for (d, coeff) in c.terms() {
        if d.degree() < truncation {
            coefficients[d.degree()] += coeff * weight_system(w, d);
        }
    }
    HSeries { coefficients }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct 3^3 summation of Σ ε_abc ε_abc.
    fn theta_oracle() -> i64 {
        let mut s = 0;
        for a in 0..3i64 {
            for b in 0..3i64 {
                for c in 0..3i64 {
                    let e = (a - b) * (b - c) * (c - a) / 2;
                    s += e * e;
                }
            }
        }
        s
    }

    #[test]
    fn theta_under_epsilon() {
        assert_eq!(theta_oracle(), 6);
        let w = WeightData::epsilon();
        assert_eq!(weight_system(&w, &JacobiDiagram::empty()), rat(1));
        assert_eq!(weight_system(&w, &JacobiDiagram::theta()), rat(theta_oracle()));
        assert_eq!(weight_system(&w, &JacobiDiagram::theta_power(2)), rat(36));
        assert_eq!(weight_system(&w, &JacobiDiagram::theta().flip_vertex(0)), rat(-6));
    }

    #[test]
    fn series_examples() {
        let w = WeightData::epsilon();
        let one = DiagramCombination::one(3);
        let theta = DiagramCombination::single(JacobiDiagram::theta(), 3);
        assert_eq!(weight_series(&w, &one, 3), HSeries::new(vec![rat(1), rat(0), rat(0)]));
        assert_eq!(weight_series(&w, &theta, 3), HSeries::new(vec![rat(0), rat(6), rat(0)]));
        assert_eq!(weight_series(&w, &one.add(&theta), 3), HSeries::new(vec![rat(1), rat(6), rat(0)]));
    }

    #[test]
    fn invalid_data_is_rejected() {
        let mut s = vec![Rational::zero(); 27];
        // f_{0,1,2} set without its antisymmetric partners.
        s[5] = rat(1);
        let id: Vec<_> = (0..9).map(|k| if k % 4 == 0 { rat(1) } else { rat(0) }).collect();
        assert!(WeightData::new("bad", 3, s, id.clone()).is_err());
        assert!(WeightData::new("singular", 3, vec![Rational::zero(); 27], vec![Rational::zero(); 9]).is_err());
    }

    #[test]
    fn sl2_theta_is_nonzero() {
        let w = WeightData::sl2();
        assert!(!weight_system(&w, &JacobiDiagram::theta()).is_zero());
    }
}
