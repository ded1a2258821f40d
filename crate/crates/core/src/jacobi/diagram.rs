//! Closed Jacobi diagrams as rotation systems on half-edges.

use std::fmt;

use crate::error::{invalid, Result};

/// A closed trivalent diagram with a cyclic order at every vertex.
///
/// Half-edges are numbered so that vertex `v` owns `3v, 3v+1, 3v+2` in its
/// cyclic (counterclockwise) order; `pair` is the edge involution. The
/// derived ordering on `pair` is the ordering used for canonical keys.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JacobiDiagram {
    pair: Vec<usize>,
}

/// Result of [`JacobiDiagram::canonical_form`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub diagram: JacobiDiagram,
    /// `+1` or `-1`: the input equals `sign` times the canonical diagram
    /// modulo AS.
    pub sign: i32,
    /// Some isomorphism reverses an odd number of vertex orientations, so
    /// the class vanishes modulo AS. The sign is then reported as `+1` and
    /// the vanishing is left to the relation span.
    pub odd_automorphism: bool,
}

impl JacobiDiagram {
    pub fn empty() -> Self {
        JacobiDiagram { pair: Vec::new() }
    }

    /// Two vertices joined by three edges, both read `(a, b, c)`, with edges
    /// `a-a`, `b-b`, `c-c`.
    pub fn theta() -> Self {
        JacobiDiagram {
            pair: vec![3, 4, 5, 0, 1, 2],
        }
    }

    /// `k` disjoint copies of [`theta`](Self::theta).
    pub fn theta_power(k: usize) -> Self {
        (0..k).fold(Self::empty(), |acc, _| acc.disjoint_union(&Self::theta()))
    }

    /// Builds a diagram from arbitrary half-edge labels: `rotations[v]` lists
    /// the three half-edges at vertex `v` in cyclic order, and `edges` pairs
    /// every half-edge with exactly one other.
    pub fn from_rotations(rotations: &[[usize; 3]], edges: &[(usize, usize)]) -> Result<Self> {
        use std::collections::HashMap;
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &h) in rot.iter().enumerate() {
                if slot.insert(h, 3 * v + i).is_some() {
                    return invalid(format!("half-edge {h} appears at more than one slot"));
                }
            }
        }
        let mut pair = vec![usize::MAX; 3 * rotations.len()];
        for &(a, b) in edges {
            if a == b {
                return invalid(format!("edge ({a}-{a}) pairs a half-edge with itself"));
            }
            let (Some(&sa), Some(&sb)) = (slot.get(&a), slot.get(&b)) else {
                return invalid(format!("edge ({a}-{b}) uses a half-edge not at any vertex"));
            };
            if pair[sa] != usize::MAX || pair[sb] != usize::MAX {
                return invalid(format!("edge ({a}-{b}) reuses a paired half-edge"));
            }
            pair[sa] = sb;
            pair[sb] = sa;
        }
        if let Some(h) = pair.iter().position(|&p| p == usize::MAX) {
            return invalid(format!("half-edge at slot {h} is not paired (diagram must be closed)"));
        }
        Ok(JacobiDiagram { pair })
    }

    /// Builds from a normalized involution; fails unless it is a fixed-point
    /// free involution on `3V` points.
    pub fn from_pairing(pair: Vec<usize>) -> Result<Self> {
        if !pair.len().is_multiple_of(3) {
            return invalid("half-edge count is not a multiple of 3");
        }
        for (h, &p) in pair.iter().enumerate() {
            if p >= pair.len() || p == h || pair[p] != h {
                return invalid(format!("malformed pairing at half-edge {h}"));
            }
        }
        Ok(JacobiDiagram { pair })
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pair
    }

    pub fn num_vertices(&self) -> usize {
        self.pair.len() / 3
    }

    /// Half the number of vertices.
    pub fn degree(&self) -> usize {
        self.num_vertices() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.pair.is_empty()
    }

    pub fn partner(&self, h: usize) -> usize {
        self.pair[h]
    }

    /// Edges as `(h, partner)` with `h < partner`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pair
            .iter()
            .enumerate()
            .filter(|(h, p)| h < p)
            .map(|(h, &p)| (h, p))
    }

    pub fn has_self_loop(&self) -> bool {
        self.edges().any(|(a, b)| a / 3 == b / 3)
    }

    /// Vertex rotations as half-edge triples, the inverse of `from_rotations`.
    pub fn rotations(&self) -> Vec<[usize; 3]> {
        (0..self.num_vertices())
            .map(|v| [3 * v, 3 * v + 1, 3 * v + 2])
            .collect()
    }

    /// Re-reads the diagram with vertex rotations given as lists of current
    /// half-edge ids, keeping the edge pairing.
    pub(crate) fn rearranged(&self, rotations: &[[usize; 3]]) -> JacobiDiagram {
        let mut new_id = vec![0; self.pair.len()];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &h) in rot.iter().enumerate() {
                new_id[h] = 3 * v + i;
            }
        }
        let mut pair = vec![0; self.pair.len()];
        for (h, &p) in self.pair.iter().enumerate() {
            pair[new_id[h]] = new_id[p];
        }
        JacobiDiagram { pair }
    }

    /// The same diagram with the cyclic order at `v` reversed.
    pub fn flip_vertex(&self, v: usize) -> JacobiDiagram {
        let mut rots = self.rotations();
        rots[v].swap(1, 2);
        self.rearranged(&rots)
    }

    pub fn disjoint_union(&self, other: &JacobiDiagram) -> JacobiDiagram {
        let off = self.pair.len();
        let mut pair = self.pair.clone();
        pair.extend(other.pair.iter().map(|p| p + off));
        JacobiDiagram { pair }
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn component_vertices(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                for h in 3 * v..3 * v + 3 {
                    let w = self.pair[h] / 3;
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The sub-diagram on a union of components, vertices renumbered in
    /// increasing order.
    pub fn induced(&self, vertices: &[usize]) -> JacobiDiagram {
        let mut new_v = vec![usize::MAX; self.num_vertices()];
        for (i, &v) in vertices.iter().enumerate() {
            new_v[v] = i;
        }
        let mut pair = vec![0; 3 * vertices.len()];
        for (i, &v) in vertices.iter().enumerate() {
            for k in 0..3 {
                let p = self.pair[3 * v + k];
                let w = new_v[p / 3];
                assert!(w != usize::MAX, "vertex set is not a union of components");
                pair[3 * i + k] = 3 * w + p % 3;
            }
        }
        JacobiDiagram { pair }
    }

    pub fn components(&self) -> Vec<JacobiDiagram> {
        self.component_vertices()
            .iter()
            .map(|c| self.induced(c))
            .collect()
    }

    /// Canonical representative under orientation-preserving isomorphism,
    /// with AS reversals folded into the sign.
    pub fn canonical_form(&self) -> CanonicalForm {
        let mut parts: Vec<(Vec<usize>, i32, bool)> = self
            .components()
            .iter()
            .map(canonical_connected)
            .collect();
        parts.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let mut pair = Vec::with_capacity(self.pair.len());
        let mut sign = 1;
        let mut odd = false;
        for (code, s, o) in parts {
            let off = pair.len();
            pair.extend(code.into_iter().map(|p| p + off));
            sign *= s;
            odd |= o;
        }
        CanonicalForm {
            diagram: JacobiDiagram { pair },
            sign,
            odd_automorphism: odd,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_form().diagram == *self
    }
}

/// Canonical code of a connected diagram: the lexicographically least
/// pairing over every BFS relabelling (choice of root half-edge and of the
/// reading direction at each vertex), with the parity of reversed vertices.
fn canonical_connected(d: &JacobiDiagram) -> (Vec<usize>, i32, bool) {
    let n = d.num_vertices();
    let h = d.pair.len();
    let mut best: Option<Vec<usize>> = None;
    let mut parities = [false; 2];
    let mut new_id = vec![usize::MAX; h];
    let mut order: Vec<usize> = Vec::with_capacity(h);
    let mut code = Vec::with_capacity(h);

    for root in 0..h {
        for mask in 0u32..(1 << n) {
            new_id.iter_mut().for_each(|x| *x = usize::MAX);
            order.clear();
            code.clear();
            // order[new] = old half-edge
            let discover = |entry: usize, new_id: &mut Vec<usize>, order: &mut Vec<usize>| {
                let v = entry / 3;
                let i = entry % 3;
                let reversed = mask >> v & 1 == 1;
                let seq = if reversed {
                    [entry, 3 * v + (i + 2) % 3, 3 * v + (i + 1) % 3]
                } else {
                    [entry, 3 * v + (i + 1) % 3, 3 * v + (i + 2) % 3]
                };
                for x in seq {
                    new_id[x] = order.len();
                    order.push(x);
                }
            };
            discover(root, &mut new_id, &mut order);
            let mut k = 0;
            let mut verdict = std::cmp::Ordering::Equal;
            while k < order.len() {
                let old = order[k];
                let p = d.pair[old];
                if new_id[p] == usize::MAX {
                    discover(p, &mut new_id, &mut order);
                }
                let c = new_id[p];
                if verdict == std::cmp::Ordering::Equal {
                    if let Some(b) = &best {
                        verdict = c.cmp(&b[k]);
                        if verdict == std::cmp::Ordering::Greater {
                            break;
                        }
                    }
                }
                code.push(c);
                k += 1;
            }
            if verdict == std::cmp::Ordering::Greater {
                continue;
            }
            let parity = mask.count_ones() % 2 == 1;
            if best.is_none() || verdict == std::cmp::Ordering::Less {
                best = Some(code.clone());
                parities = [false; 2];
            }
            parities[parity as usize] = true;
        }
    }
    let best = best.unwrap_or_default();
    let odd = parities[0] && parities[1];
    let sign = if parities[0] { 1 } else { -1 };
    (best, sign, odd)
}

impl fmt::Display for JacobiDiagram {
    /// `diagram v=<count> rot=(0,1,2)(3,4,5) edges=(0-3)(1-4)(2-5)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "diagram v={} rot=", self.num_vertices())?;
        if self.is_empty() {
            write!(f, "()")?;
        }
        for v in 0..self.num_vertices() {
            write!(f, "({},{},{})", 3 * v, 3 * v + 1, 3 * v + 2)?;
        }
        write!(f, " edges=")?;
        if self.is_empty() {
            write!(f, "()")?;
        }
        for (a, b) in self.edges() {
            write!(f, "({a}-{b})")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for JacobiDiagram {
    type Err = crate::Error;

    /// Inverse of `Display`; half-edge labels may be any distinct integers.
    fn from_str(s: &str) -> Result<Self> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let (Some(&"diagram"), Some(v), Some(rot), Some(edges), None) = (
            toks.first(),
            toks.get(1).and_then(|t| t.strip_prefix("v=")),
            toks.get(2).and_then(|t| t.strip_prefix("rot=")),
            toks.get(3).and_then(|t| t.strip_prefix("edges=")),
            toks.get(4),
        ) else {
            return invalid(format!("expected `diagram v=<n> rot=... edges=...`, found `{s}`"));
        };
        let v: usize = v
            .parse()
            .map_err(|_| crate::Error::InvalidArgument(format!("bad vertex count `{v}`")))?;
        let rotations = groups(rot, ',')?
            .into_iter()
            .map(|g| {
                <[usize; 3]>::try_from(g.as_slice())
                    .map_err(|_| crate::Error::InvalidArgument("each rotation lists three half-edges".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        if rotations.len() != v {
            return invalid(format!("v={v} but {} rotations given", rotations.len()));
        }
        let edges = groups(edges, '-')?
            .into_iter()
            .map(|g| match g.as_slice() {
                [a, b] => Ok((*a, *b)),
                _ => invalid("each edge joins two half-edges"),
            })
            .collect::<Result<Vec<_>>>()?;
        JacobiDiagram::from_rotations(&rotations, &edges)
    }
}

/// `(1,2,3)(4,5,6)` into integer groups; `()` alone is no groups.
fn groups(s: &str, sep: char) -> Result<Vec<Vec<usize>>> {
    if s == "()" {
        return Ok(Vec::new());
    }
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| crate::Error::InvalidArgument(format!("expected parenthesized groups, found `{s}`")))?;
    inner
        .split(")(")
        .map(|g| {
            g.split(sep)
                .map(|x| {
                    x.parse::<usize>()
                        .map_err(|_| crate::Error::InvalidArgument(format!("bad half-edge `{x}`")))
                })
                .collect()
        })
        .collect()
}
