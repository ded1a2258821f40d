//! Connected uni-trivalent trees with leaves labelled by `H_Q`, their
//! AS/IHX quotient and the bracket obtained by gluing leaves.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::lattice::{basis_label, SymplecticLattice};
use crate::error::{invalid, Error, Result};
use crate::linalg::{rat, Rational, RowReduced};

pub const DEFAULT_TREE_DEGREE: usize = 3;

/// A tree whose leaves carry lattice basis indices.
///
/// Internal vertex `v` owns half-edges `3v..3v+3` in cyclic order; leaf `j`
/// is the single half-edge `3d + j` where `d` is the number of internal
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisTree {
    internal: usize,
    pair: Vec<usize>,
    labels: Vec<usize>,
}

/// Planar code of a tree rooted at a leaf, children in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    Leaf(usize),
    Node(Box<Code>, Box<Code>),
}

impl Code {
    fn internal_count(&self) -> usize {
        match self {
            Code::Leaf(_) => 0,
            Code::Node(l, r) => 1 + l.internal_count() + r.internal_count(),
        }
    }

    fn leaf_labels(&self, out: &mut Vec<usize>) {
        match self {
            Code::Leaf(x) => out.push(*x),
            Code::Node(l, r) => {
                l.leaf_labels(out);
                r.leaf_labels(out);
            }
        }
    }
}

/// Canonical key of a basis-labelled tree: the least rooted code over all
/// leaves.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalTree {
    root: usize,
    body: Code,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCanonicalForm {
    pub key: CanonicalTree,
    pub sign: i32,
    /// An automorphism reverses an odd number of vertices; the tree
    /// vanishes modulo AS and `sign` is reported as `+1`.
    pub odd_automorphism: bool,
}

/// Nested pair expression over leaf positions, e.g. `(0,(1,2))`. The
/// outermost pair is the edge joining its two sides; every inner pair is a
/// trivalent vertex read (parent, left, right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Leaf(usize),
    Pair(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn parse(s: &str) -> Result<Shape> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let shape = parse_shape(&chars, &mut pos)?;
        if pos != chars.len() {
            return invalid(format!("trailing characters in tree shape `{s}`"));
        }
        Ok(shape)
    }

    fn pairs(&self) -> usize {
        match self {
            Shape::Leaf(_) => 0,
            Shape::Pair(a, b) => 1 + a.pairs() + b.pairs(),
        }
    }

    fn leaves(&self, out: &mut Vec<usize>) {
        match self {
            Shape::Leaf(i) => out.push(*i),
            Shape::Pair(a, b) => {
                a.leaves(out);
                b.leaves(out);
            }
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Leaf(i) => write!(f, "{i}"),
            Shape::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

fn parse_shape(c: &[char], pos: &mut usize) -> Result<Shape> {
    match c.get(*pos) {
        Some('(') => {
            *pos += 1;
            let a = parse_shape(c, pos)?;
            if c.get(*pos) != Some(&',') {
                return invalid(format!("expected `,` at offset {pos} of tree shape"));
            }
            *pos += 1;
            let b = parse_shape(c, pos)?;
            if c.get(*pos) != Some(&')') {
                return invalid(format!("expected `)` at offset {pos} of tree shape"));
            }
            *pos += 1;
            Ok(Shape::Pair(Box::new(a), Box::new(b)))
        }
        Some(d) if d.is_ascii_digit() => {
            let start = *pos;
            while c.get(*pos).is_some_and(|x| x.is_ascii_digit()) {
                *pos += 1;
            }
            let s: String = c[start..*pos].iter().collect();
            Ok(Shape::Leaf(s.parse().expect("digits")))
        }
        _ => invalid(format!("unexpected character at offset {pos} of tree shape")),
    }
}

impl BasisTree {
    pub fn strut(x: usize, y: usize) -> Self {
        BasisTree {
            internal: 0,
            pair: vec![1, 0],
            labels: vec![x, y],
        }
    }

    /// Tree with one trivalent vertex read `(x, y, z)`.
    pub fn tripod(x: usize, y: usize, z: usize) -> Self {
        BasisTree {
            internal: 1,
            pair: vec![3, 4, 5, 0, 1, 2],
            labels: vec![x, y, z],
        }
    }

    /// Builds a tree from a shape whose leaf positions index `labels`.
    pub fn from_shape(shape: &Shape, labels: &[usize]) -> Result<Self> {
        let Shape::Pair(a, b) = shape else {
            return invalid("a tree shape needs at least two leaves");
        };
        let d = shape.pairs() - 1;
        let mut seen = Vec::new();
        shape.leaves(&mut seen);
        let mut sorted = seen.clone();
        sorted.sort_unstable();
        if sorted != (0..labels.len()).collect::<Vec<_>>() || labels.len() != d + 2 {
            return invalid(format!(
                "tree shape must use each of the {} leaf positions exactly once and have {} leaves",
                labels.len(),
                d + 2
            ));
        }
        let mut pair = vec![usize::MAX; 3 * d + labels.len()];
        let mut next_vertex = 0;
        let ha = attach(a, d, &mut pair, &mut next_vertex);
        let hb = attach(b, d, &mut pair, &mut next_vertex);
        pair[ha] = hb;
        pair[hb] = ha;
        Ok(BasisTree {
            internal: d,
            pair,
            labels: labels.to_vec(),
        })
    }

    pub fn degree(&self) -> usize {
        self.internal
    }

    pub fn num_leaves(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    fn is_leaf_half(&self, h: usize) -> bool {
        h >= 3 * self.internal
    }

    fn leaf_half(&self, j: usize) -> usize {
        3 * self.internal + j
    }

    fn next(h: usize) -> usize {
        3 * (h / 3) + (h % 3 + 1) % 3
    }

    /// Edges joining two trivalent vertices.
    pub fn internal_edges(&self) -> Vec<(usize, usize)> {
        (0..3 * self.internal)
            .filter(|&h| h < self.pair[h] && !self.is_leaf_half(self.pair[h]))
            .map(|h| (h, self.pair[h]))
            .collect()
    }

    /// Re-reads the internal vertices from rotation lists of current ids.
    fn rearranged(&self, rotations: &[[usize; 3]]) -> BasisTree {
        let mut new_id: Vec<usize> = (0..self.pair.len()).collect();
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &h) in rot.iter().enumerate() {
                new_id[h] = 3 * v + i;
            }
        }
        let mut pair = vec![0; self.pair.len()];
        for (h, &p) in self.pair.iter().enumerate() {
            pair[new_id[h]] = new_id[p];
        }
        BasisTree {
            internal: self.internal,
            pair,
            labels: self.labels.clone(),
        }
    }

    fn rotations(&self) -> Vec<[usize; 3]> {
        (0..self.internal).map(|v| [3 * v, 3 * v + 1, 3 * v + 2]).collect()
    }

    pub fn flip_vertex(&self, v: usize) -> BasisTree {
        let mut rots = self.rotations();
        rots[v].swap(1, 2);
        self.rearranged(&rots)
    }

    /// Joins leaf `i` of `self` and leaf `j` of `other` into one edge.
    pub fn glue(&self, i: usize, other: &BasisTree, j: usize) -> BasisTree {
        let d = self.internal + other.internal;
        let l1 = self.num_leaves();
        let mut labels = Vec::with_capacity(l1 + other.num_leaves() - 2);
        // old ids: self's halves as-is, other's halves shifted past self
        let shift = self.pair.len();
        let mut new_id = vec![usize::MAX; shift + other.pair.len()];
        for (h, id) in new_id.iter_mut().enumerate().take(3 * self.internal) {
            *id = h;
        }
        for h in 0..3 * other.internal {
            new_id[shift + h] = 3 * self.internal + h;
        }
        for k in 0..l1 {
            if k != i {
                new_id[self.leaf_half(k)] = 3 * d + labels.len();
                labels.push(self.labels[k]);
            }
        }
        for k in 0..other.num_leaves() {
            if k != j {
                new_id[shift + other.leaf_half(k)] = 3 * d + labels.len();
                labels.push(other.labels[k]);
            }
        }
        let mut pair = vec![usize::MAX; 3 * d + labels.len()];
        let a = self.pair[self.leaf_half(i)];
        let b = shift + other.pair[other.leaf_half(j)];
        let old_pair = |h: usize| {
            if h < shift {
                self.pair[h]
            } else {
                shift + other.pair[h - shift]
            }
        };
        for h in 0..new_id.len() {
            if new_id[h] == usize::MAX {
                continue;
            }
            let p = if h == a {
                b
            } else if h == b {
                a
            } else {
                old_pair(h)
            };
            pair[new_id[h]] = new_id[p];
        }
        BasisTree {
            internal: d,
            pair,
            labels,
        }
    }

    fn rooted(&self, h: usize) -> (Code, i32, bool) {
        if self.is_leaf_half(h) {
            return (Code::Leaf(self.labels[h - 3 * self.internal]), 1, false);
        }
        let l = self.pair[Self::next(h)];
        let r = self.pair[Self::next(Self::next(h))];
        let (cl, sl, ol) = self.rooted(l);
        let (cr, sr, or) = self.rooted(r);
        let odd = ol || or;
        match cl.cmp(&cr) {
            std::cmp::Ordering::Less => (Code::Node(Box::new(cl), Box::new(cr)), sl * sr, odd),
            std::cmp::Ordering::Greater => {
                (Code::Node(Box::new(cr), Box::new(cl)), -sl * sr, odd)
            }
            std::cmp::Ordering::Equal => (Code::Node(Box::new(cl), Box::new(cr)), sl * sr, true),
        }
    }

    pub fn canonical_form(&self) -> TreeCanonicalForm {
        let mut best: Option<CanonicalTree> = None;
        let mut signs = [false; 2];
        let mut odd = false;
        for j in 0..self.num_leaves() {
            let (body, s, o) = self.rooted(self.pair[self.leaf_half(j)]);
            let key = CanonicalTree {
                root: self.labels[j],
                body,
            };
            match best.as_ref().map(|b| key.cmp(b)) {
                Some(std::cmp::Ordering::Greater) => continue,
                Some(std::cmp::Ordering::Equal) => {}
                _ => {
                    best = Some(key);
                    signs = [false; 2];
                    odd = false;
                }
            }
            odd |= o;
            signs[(s < 0) as usize] = true;
        }
        let odd = odd || (signs[0] && signs[1]);
        let sign = if odd || signs[0] { 1 } else { -1 };
        TreeCanonicalForm {
            key: best.expect("a tree has leaves"),
            sign,
            odd_automorphism: odd,
        }
    }
}

fn attach(s: &Shape, d: usize, pair: &mut [usize], next_vertex: &mut usize) -> usize {
    match s {
        Shape::Leaf(k) => 3 * d + k,
        Shape::Pair(x, y) => {
            let v = *next_vertex;
            *next_vertex += 1;
            let hx = attach(x, d, pair, next_vertex);
            let hy = attach(y, d, pair, next_vertex);
            pair[3 * v + 1] = hx;
            pair[hx] = 3 * v + 1;
            pair[3 * v + 2] = hy;
            pair[hy] = 3 * v + 2;
            3 * v
        }
    }
}

impl CanonicalTree {
    pub fn degree(&self) -> usize {
        self.body.internal_count()
    }

    /// Leaf labels in planar order, the root first.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![self.root];
        self.body.leaf_labels(&mut out);
        out
    }

    /// Shape over planar leaf positions, root leaf at position 0.
    pub fn shape(&self) -> Shape {
        fn go(c: &Code, next: &mut usize) -> Shape {
            match c {
                Code::Leaf(_) => {
                    let s = Shape::Leaf(*next);
                    *next += 1;
                    s
                }
                Code::Node(l, r) => {
                    let a = go(l, next);
                    let b = go(r, next);
                    Shape::Pair(Box::new(a), Box::new(b))
                }
            }
        }
        let mut next = 1;
        let body = go(&self.body, &mut next);
        Shape::Pair(Box::new(Shape::Leaf(0)), Box::new(body))
    }

    pub fn to_tree(&self) -> BasisTree {
        BasisTree::from_shape(&self.shape(), &self.labels()).expect("canonical shapes are valid")
    }

    pub fn display(&self, genus: usize) -> String {
        let labels: Vec<String> = self.labels().iter().map(|&i| basis_label(genus, i)).collect();
        format!("tree leaves=({}) shape={}", labels.join(","), self.shape())
    }
}

/// A tree whose leaves carry arbitrary vectors of `H_Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTree {
    skeleton: BasisTree,
    leaves: Vec<Vec<Rational>>,
}

impl LabeledTree {
    pub fn new(lattice: SymplecticLattice, shape: &Shape, leaves: Vec<Vec<Rational>>) -> Result<Self> {
        if leaves.iter().any(|v| v.len() != lattice.rank()) {
            return invalid("leaf label length does not match the lattice rank");
        }
        let skeleton = BasisTree::from_shape(shape, &vec![0; leaves.len()])?;
        Ok(LabeledTree { skeleton, leaves })
    }

    pub fn degree(&self) -> usize {
        self.skeleton.degree()
    }

    /// Multilinear expansion over the lattice basis.
    pub fn expand(&self, lattice: SymplecticLattice) -> TreeCombination {
        let mut out = TreeCombination::zero(lattice);
        let mut choice: Vec<(usize, Rational)> = Vec::new();
        self.expand_from(0, &mut choice, &mut out);
        out
    }

    fn expand_from(&self, k: usize, choice: &mut Vec<(usize, Rational)>, out: &mut TreeCombination) {
        if k == self.leaves.len() {
            let mut t = self.skeleton.clone();
            let mut c = rat(1);
            for (j, (i, x)) in choice.iter().enumerate() {
                t.labels[j] = *i;
                c *= x;
            }
            out.add_tree(c, &t);
            return;
        }
        for (i, x) in self.leaves[k].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            choice.push((i, x.clone()));
            self.expand_from(k + 1, choice, out);
            choice.pop();
        }
    }
}

/// Rational combination of canonical basis-labelled trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCombination {
    lattice: SymplecticLattice,
    terms: BTreeMap<CanonicalTree, Rational>,
}

impl TreeCombination {
    pub fn zero(lattice: SymplecticLattice) -> Self {
        TreeCombination {
            lattice,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(lattice: SymplecticLattice, t: &BasisTree) -> Self {
        let mut c = Self::zero(lattice);
        c.add_tree(rat(1), t);
        c
    }

    pub fn lattice(&self) -> SymplecticLattice {
        self.lattice
    }

    pub fn terms(&self) -> &BTreeMap<CanonicalTree, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_tree(&mut self, coeff: Rational, t: &BasisTree) {
        let cf = t.canonical_form();
        self.add_key(coeff * rat(cf.sign as i64), cf.key);
    }

    fn add_key(&mut self, coeff: Rational, key: CanonicalTree) {
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, t: &BasisTree) -> Rational {
        let cf = t.canonical_form();
        self.terms
            .get(&cf.key)
            .map(|c| c * rat(cf.sign as i64))
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.lattice);
        for (k, c) in &self.terms {
            out.add_key(c * s, k.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_key(c.clone(), k.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }
}

impl fmt::Display for TreeCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("{c}*{}", k.display(self.lattice.genus())))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Σ_{ℓ1 ∈ T1, ℓ2 ∈ T2} ω(ℓ1, ℓ2) · glue(ℓ1, ℓ2)`, unreduced.
pub fn raw_bracket(a: &TreeCombination, b: &TreeCombination) -> TreeCombination {
    let lattice = a.lattice;
    let mut out = TreeCombination::zero(lattice);
    for (ka, ca) in &a.terms {
        let ta = ka.to_tree();
        for (kb, cb) in &b.terms {
            let tb = kb.to_tree();
            for i in 0..ta.num_leaves() {
                for j in 0..tb.num_leaves() {
                    let w = lattice.omega_basis(ta.labels[i], tb.labels[j]);
                    if w == 0 {
                        continue;
                    }
                    out.add_tree(ca * cb * rat(w), &ta.glue(i, &tb, j));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockKey {
    pub degree: usize,
    /// Sorted leaf labels.
    pub labels: Vec<usize>,
}

#[derive(Debug)]
struct TreeBlock {
    keys: Vec<CanonicalTree>,
    index: HashMap<CanonicalTree, usize>,
    reduced: RowReduced,
}

/// AS/IHX reduction of tree combinations. Trees with a fixed degree and
/// leaf-label multiset span an independent block; blocks are built on
/// demand and cached.
#[derive(Debug)]
pub struct TreeReducer {
    lattice: SymplecticLattice,
    max_degree: usize,
    blocks: Mutex<HashMap<BlockKey, Arc<TreeBlock>>>,
}

impl TreeReducer {
    pub fn new(lattice: SymplecticLattice) -> Self {
        Self::with_max_degree(lattice, DEFAULT_TREE_DEGREE)
    }

    pub fn with_max_degree(lattice: SymplecticLattice, max_degree: usize) -> Self {
        TreeReducer {
            lattice,
            max_degree,
            blocks: Mutex::new(HashMap::new()),
        }
    }

    pub fn lattice(&self) -> SymplecticLattice {
        self.lattice
    }

    fn block_key(key: &CanonicalTree) -> BlockKey {
        let mut labels = key.labels();
        labels.sort_unstable();
        BlockKey {
            degree: key.degree(),
            labels,
        }
    }

    fn block(&self, seed: &CanonicalTree) -> Result<Arc<TreeBlock>> {
        let bk = Self::block_key(seed);
        if bk.degree > self.max_degree {
            return Err(Error::ResourceLimit(format!(
                "tree degree {} exceeds the configured maximum {}",
                bk.degree, self.max_degree
            )));
        }
        if let Some(b) = self.blocks.lock().expect("tree cache poisoned").get(&bk) {
            return Ok(b.clone());
        }
        let block = Arc::new(build_block(seed));
        self.blocks
            .lock()
            .expect("tree cache poisoned")
            .insert(bk, block.clone());
        Ok(block)
    }

    /// Quotient coordinates per block touched by `c`.
    pub fn reduce(&self, c: &TreeCombination) -> Result<BTreeMap<BlockKey, Vec<Rational>>> {
        if c.lattice != self.lattice {
            return invalid("tree combination over a different lattice");
        }
        let mut vectors: BTreeMap<BlockKey, (Arc<TreeBlock>, Vec<Rational>)> = BTreeMap::new();
        for (k, coeff) in &c.terms {
            let bk = Self::block_key(k);
            if !vectors.contains_key(&bk) {
                let block = self.block(k)?;
                let n = block.keys.len();
                vectors.insert(bk.clone(), (block, vec![Rational::zero(); n]));
            }
            let (block, v) = vectors.get_mut(&bk).expect("inserted above");
            v[block.index[k]] += coeff;
        }
        Ok(vectors
            .into_iter()
            .map(|(bk, (block, v))| (bk, block.reduced.quotient_coordinates(&v)))
            .collect())
    }

    /// The same class written in the chosen basis trees of each block.
    pub fn normal_form(&self, c: &TreeCombination) -> Result<TreeCombination> {
        let mut out = TreeCombination::zero(self.lattice);
        for (bk, coords) in self.reduce(c)? {
            let block = self
                .blocks
                .lock()
                .expect("tree cache poisoned")
                .get(&bk)
                .cloned()
                .expect("block built by reduce");
            for (x, col) in coords.into_iter().zip(block.reduced.free_columns()) {
                out.add_key(x, block.keys[col].clone());
            }
        }
        Ok(out)
    }

    pub fn is_zero_class(&self, c: &TreeCombination) -> Result<bool> {
        Ok(self
            .reduce(c)?
            .values()
            .all(|v| v.iter().all(Zero::is_zero)))
    }

    /// Bracket followed by reduction to normal form; degrees add.
    pub fn bracket(&self, a: &TreeCombination, b: &TreeCombination) -> Result<TreeCombination> {
        self.normal_form(&raw_bracket(a, b))
    }

    /// Number of basis trees of the block containing `t`.
    pub fn block_dimension(&self, t: &BasisTree) -> Result<usize> {
        let b = self.block(&t.canonical_form().key)?;
        Ok(b.keys.len() - b.reduced.rank())
    }
}

/// AS relations at internal vertices and IHX relations at internal edges.
pub fn tree_relations(t: &BasisTree) -> Vec<Vec<(i32, BasisTree)>> {
    let mut out = Vec::new();
    for v in 0..t.internal {
        out.push(vec![(1, t.clone()), (1, t.flip_vertex(v))]);
    }
    for (hu, hv) in t.internal_edges() {
        let (u, v) = (hu / 3, hv / 3);
        let next = BasisTree::next;
        let (p, q) = (next(hu), next(next(hu)));
        let (r, s) = (next(hv), next(next(hv)));
        let rots = t.rotations();
        let mut rel = Vec::with_capacity(3);
        for (a, b, c, e) in [(p, q, r, s), (q, r, p, s), (r, p, q, s)] {
            let mut rr = rots.clone();
            rr[u] = [hu, a, b];
            rr[v] = [hv, c, e];
            rel.push((1, t.rearranged(&rr)));
        }
        out.push(rel);
    }
    out
}

/// Closes the seed under AS/IHX moves; the moves connect every tree with
/// the same degree and leaf labels.
fn build_block(seed: &CanonicalTree) -> TreeBlock {
    let mut index: HashMap<CanonicalTree, usize> = HashMap::new();
    let mut keys = vec![seed.clone()];
    index.insert(seed.clone(), 0);
    let mut queue = VecDeque::from([seed.clone()]);
    let mut relations: Vec<Vec<(i32, CanonicalTree)>> = Vec::new();
    while let Some(k) = queue.pop_front() {
        for rel in tree_relations(&k.to_tree()) {
            let mut row = Vec::with_capacity(rel.len());
            for (c, t) in rel {
                let cf = t.canonical_form();
                if !index.contains_key(&cf.key) {
                    index.insert(cf.key.clone(), keys.len());
                    keys.push(cf.key.clone());
                    queue.push_back(cf.key.clone());
                }
                row.push((c * cf.sign, cf.key));
            }
            relations.push(row);
        }
    }
    keys.sort();
    let index: HashMap<CanonicalTree, usize> =
        keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let rows = relations
        .iter()
        .map(|rel| {
            let mut v = vec![Rational::zero(); keys.len()];
            for (c, k) in rel {
                v[index[k]] += rat(*c as i64);
            }
            v
        })
        .collect();
    let reduced = RowReduced::new(rows, keys.len());
    TreeBlock {
        keys,
        index,
        reduced,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A1: usize = 0;
    const A2: usize = 1;
    const B1: usize = 2;
    const B2: usize = 3;

    fn g2() -> SymplecticLattice {
        SymplecticLattice::new(2)
    }

    #[test]
    fn shape_round_trip() {
        let s = Shape::parse("((0,1),(2,3))").unwrap();
        let t = BasisTree::from_shape(&s, &[A1, A2, B1, B2]).unwrap();
        assert_eq!(t.degree(), 2);
        let key = t.canonical_form().key;
        let again = key.to_tree().canonical_form();
        assert_eq!(again.key, key);
        assert_eq!(again.sign, 1);
        assert!(Shape::parse("(0,1").is_err());
        assert!(BasisTree::from_shape(&Shape::parse("(0,(1,1))").unwrap(), &[0, 0, 0]).is_err());
    }

    #[test]
    fn flip_negates() {
        let t = BasisTree::tripod(A1, A2, B1);
        let (a, b) = (t.canonical_form(), t.flip_vertex(0).canonical_form());
        assert_eq!(a.key, b.key);
        assert_eq!(a.sign, -b.sign);
        let h = g2();
        let red = TreeReducer::new(h);
        let ca = red.reduce(&TreeCombination::single(h, &t)).unwrap();
        let cb = red.reduce(&TreeCombination::single(h, &t.flip_vertex(0))).unwrap();
        for (k, v) in &ca {
            let neg: Vec<_> = v.iter().map(|x| -x.clone()).collect();
            assert_eq!(cb[k], neg);
        }
    }

    #[test]
    fn repeated_labels_at_a_vertex_vanish() {
        let t = BasisTree::tripod(A1, A1, B1);
        assert!(t.canonical_form().odd_automorphism);
        let h = g2();
        let red = TreeReducer::new(h);
        assert!(red.is_zero_class(&TreeCombination::single(h, &t)).unwrap());
    }

    #[test]
    fn ihx_triples_vanish() {
        let h = g2();
        let red = TreeReducer::new(h);
        let t = BasisTree::from_shape(&Shape::parse("((0,1),(2,3))").unwrap(), &[A1, B2, A2, B1]).unwrap();
        for rel in tree_relations(&t) {
            let mut c = TreeCombination::zero(h);
            for (s, x) in rel {
                c.add_tree(rat(s as i64), &x);
            }
            assert!(red.is_zero_class(&c).unwrap());
        }
        // four distinct labels: 3 topologies, one IHX relation → dimension 2
        assert_eq!(red.block_dimension(&t).unwrap(), 2);
    }

    #[test]
    fn multilinear_struts() {
        let h = SymplecticLattice::new(1);
        let mut x = h.basis_vector(0);
        x[1] = rat(1); // a1 + b1
        let t = LabeledTree::new(h, &Shape::parse("(0,1)").unwrap(), vec![x, h.basis_vector(1)]).unwrap();
        let mut expect = TreeCombination::zero(h);
        expect.add_tree(rat(1), &BasisTree::strut(0, 1));
        expect.add_tree(rat(1), &BasisTree::strut(1, 1));
        assert_eq!(t.expand(h), expect);
    }

    #[test]
    fn bracket_examples() {
        let h = SymplecticLattice::new(2);
        let red = TreeReducer::new(h);
        let s = |x, y| TreeCombination::single(h, &BasisTree::strut(x, y));
        let r = red.bracket(&s(A1, A1), &s(B1, B1)).unwrap();
        assert_eq!(r, s(A1, B1).scale(&rat(4)));
        let r = red.bracket(&s(A1, A2), &s(B2, B2)).unwrap();
        assert_eq!(r, s(A1, B2).scale(&rat(2)));
    }

    #[test]
    fn display_of_canonical_strut() {
        let h = SymplecticLattice::new(1);
        let c = TreeCombination::single(h, &BasisTree::strut(1, 0)).scale(&rat(4));
        assert_eq!(c.to_string(), "4*tree leaves=(a1,b1) shape=(0,1)");
    }

    #[test]
    fn degree_cap() {
        let h = SymplecticLattice::new(1);
        let red = TreeReducer::with_max_degree(h, 1);
        let t = BasisTree::from_shape(&Shape::parse("((0,1),(2,3))").unwrap(), &[0, 0, 1, 1]).unwrap();
        assert!(matches!(
            red.reduce(&TreeCombination::single(h, &t)),
            Err(Error::ResourceLimit(_))
        ));
    }
}
