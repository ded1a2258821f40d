//! Degree-wise quotient of the span of closed diagrams by AS and IHX.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::diagram::JacobiDiagram;
use crate::error::{Error, Result};
use crate::linalg::{rat, Rational, RowReduced};

pub const DEFAULT_MAX_DEGREE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// `D + D'` where `D'` reverses one vertex.
    Antisymmetry,
    /// `I + H + X` around one edge joining distinct vertices.
    Ihx,
}

/// A relation as a signed sum of labelled (non-canonical) diagrams.
#[derive(Clone, Debug)]
pub struct Relation {
    pub kind: RelationKind,
    pub terms: Vec<(i32, JacobiDiagram)>,
}

/// All closed diagrams of one degree up to AS-signed isomorphism, the
/// AS/IHX relations among them, and an induced basis of the quotient.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    degree: usize,
    diagrams: Vec<JacobiDiagram>,
    index: BTreeMap<JacobiDiagram, usize>,
    relations: Vec<Relation>,
    reduced: RowReduced,
}

impl QuotientBasis {
    /// Enumerates degree `degree` and row reduces its relations. Degrees
    /// above `cap` are refused.
    pub fn generate(degree: usize, cap: usize) -> Result<Self> {
        if degree > cap {
            return Err(Error::ResourceLimit(format!(
                "degree {degree} exceeds the configured maximum {cap}"
            )));
        }
        let diagrams = enumerate_diagrams(degree);
        let index: BTreeMap<_, _> = diagrams
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, d)| (d, i))
            .collect();
        let relations: Vec<Relation> = diagrams.iter().flat_map(relations_at).collect();
        let rows = relations
            .iter()
            .map(|r| relation_row(r, &index, diagrams.len()))
            .collect();
        let reduced = RowReduced::new(rows, diagrams.len());
        Ok(QuotientBasis {
            degree,
            diagrams,
            index,
            relations,
            reduced,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Every canonical diagram of this degree.
    pub fn diagrams(&self) -> &[JacobiDiagram] {
        &self.diagrams
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation_matrix(&self) -> &RowReduced {
        &self.reduced
    }

    pub fn dimension(&self) -> usize {
        self.diagrams.len() - self.reduced.rank()
    }

    /// Canonical diagrams whose classes form a basis of the quotient.
    pub fn basis_diagrams(&self) -> Vec<&JacobiDiagram> {
        self.reduced
            .free_columns()
            .into_iter()
            .map(|c| &self.diagrams[c])
            .collect()
    }

    pub fn index_of(&self, key: &JacobiDiagram) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Vector over canonical diagrams of a signed sum of labelled ones.
    pub fn vector_of<'a, I>(&self, terms: I) -> Vec<Rational>
    where
        I: IntoIterator<Item = (Rational, &'a JacobiDiagram)>,
    {
        let mut v = vec![Rational::zero(); self.diagrams.len()];
        for (c, d) in terms {
            let cf = d.canonical_form();
            let i = self.index[&cf.diagram];
            v[i] += c * rat(cf.sign as i64);
        }
        v
    }

    /// Coordinates in the quotient basis of a vector over canonical diagrams.
    pub fn coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        self.reduced.quotient_coordinates(v)
    }
}

fn relation_row(r: &Relation, index: &BTreeMap<JacobiDiagram, usize>, n: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for (c, d) in &r.terms {
        let cf = d.canonical_form();
        v[index[&cf.diagram]] += rat((*c * cf.sign) as i64);
    }
    v
}

/// AS relations at every vertex and IHX relations at every non-loop edge.
pub fn relations_at(d: &JacobiDiagram) -> Vec<Relation> {
    let mut out = Vec::new();
    for v in 0..d.num_vertices() {
        out.push(Relation {
            kind: RelationKind::Antisymmetry,
            terms: vec![(1, d.clone()), (1, d.flip_vertex(v))],
        });
    }
    for (hu, hv) in d.edges() {
        let (u, v) = (hu / 3, hv / 3);
        if u == v {
            continue;
        }
        let next = |h: usize| 3 * (h / 3) + (h % 3 + 1) % 3;
        let (p, q) = (next(hu), next(next(hu)));
        let (r, s) = (next(hv), next(next(hv)));
        let rots = d.rotations();
        let mut terms = Vec::with_capacity(3);
        for (a, b, c, e) in [(p, q, r, s), (q, r, p, s), (r, p, q, s)] {
            let mut rr = rots.clone();
            rr[u] = [hu, a, b];
            rr[v] = [hv, c, e];
            terms.push((1, d.rearranged(&rr)));
        }
        out.push(Relation {
            kind: RelationKind::Ihx,
            terms,
        });
    }
    out
}

/// One canonical diagram per isomorphism class of trivalent multigraphs
/// (loops allowed) on `2 * degree` vertices, sorted.
pub fn enumerate_diagrams(degree: usize) -> Vec<JacobiDiagram> {
    let n = 2 * degree;
    let mut keys = BTreeSet::new();
    let mut pair = vec![usize::MAX; 3 * n];
    fill(&mut pair, None, &mut keys);
    keys.into_iter().collect()
}

/// Pairs the smallest free half-edge with the first free half-edge of some
/// vertex; targets chosen from one vertex are nondecreasing, so each
/// labelled multigraph is produced once.
fn fill(pair: &mut Vec<usize>, prev: Option<(usize, usize)>, keys: &mut BTreeSet<JacobiDiagram>) {
    let Some(h) = pair.iter().position(|&p| p == usize::MAX) else {
        let d = JacobiDiagram::from_pairing(pair.clone()).expect("complete pairing");
        keys.insert(d.canonical_form().diagram);
        return;
    };
    let u = h / 3;
    let lo = match prev {
        Some((chooser, target)) if chooser == u => target,
        _ => u,
    };
    for w in lo..pair.len() / 3 {
        let Some(k) = (3 * w..3 * w + 3).find(|&x| x != h && pair[x] == usize::MAX) else {
            continue;
        };
        pair[h] = k;
        pair[k] = h;
        fill(pair, Some((u, w)), keys);
        pair[h] = usize::MAX;
        pair[k] = usize::MAX;
    }
}
