//! Cobordisms over `Σ_{g,1}` seen through first homology: a finitely
//! presented abelian group `V` with top and bottom markings `Z^{2g} → V`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::linalg::{hermite_rows, in_column_span, integer_kernel, smith_normal_form, IntMatrix};
use crate::symplectic::{basis_label, parse_basis_label, SymplecticLattice};

pub use crate::linalg::SmithForm;

/// `V = Z^n / ⟨columns of relations⟩`, `m_± : Z^{2g} → Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyCobordism {
    genus: usize,
    relations: IntMatrix,
    m_plus: IntMatrix,
    m_minus: IntMatrix,
}

impl HomologyCobordism {
    pub fn new(genus: usize, relations: IntMatrix, m_plus: IntMatrix, m_minus: IntMatrix) -> Result<Self> {
        let n = relations.nrows();
        for (name, m) in [("m_plus", &m_plus), ("m_minus", &m_minus)] {
            if m.nrows() != n || m.ncols() != 2 * genus {
                return invalid(format!(
                    "{name} is {}x{}, expected {}x{}",
                    m.nrows(),
                    m.ncols(),
                    n,
                    2 * genus
                ));
            }
        }
        Ok(HomologyCobordism {
            genus,
            relations,
            m_plus,
            m_minus,
        })
    }

    pub fn identity_cylinder(genus: usize) -> Self {
        let n = 2 * genus;
        HomologyCobordism {
            genus,
            relations: IntMatrix::zeros(n, 0),
            m_plus: IntMatrix::identity(n),
            m_minus: IntMatrix::identity(n),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn generators(&self) -> usize {
        self.relations.nrows()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn m_plus(&self) -> &IntMatrix {
        &self.m_plus
    }

    pub fn m_minus(&self) -> &IntMatrix {
        &self.m_minus
    }

    /// Invariant factors of `V` other than 1; zeros count free summands.
    pub fn group_invariants(&self) -> Vec<BigInt> {
        let snf = smith_normal_form(&self.relations);
        let n = self.generators();
        let mut out: Vec<BigInt> = snf.diagonal.into_iter().filter(|d| !d.is_one()).collect();
        out.resize(out.len() + n - n.min(self.relations.ncols()), BigInt::zero());
        out
    }

    /// Same marked group with relations in Smith form, unit factors removed,
    /// torsion coordinates reduced and free coordinates in Hermite form.
    pub fn simplified(&self) -> Self {
        let n = self.generators();
        let snf = smith_normal_form(&self.relations);
        let plus = snf.left.mul(&self.m_plus);
        let minus = snf.left.mul(&self.m_minus);
        let d = |i: usize| snf.diagonal.get(i).cloned().unwrap_or_else(BigInt::zero);
        let keep: Vec<usize> = (0..n).filter(|&i| !d(i).is_one()).collect();
        let torsion: Vec<usize> = keep.iter().copied().filter(|&i| !d(i).is_zero()).collect();
        let mut relations = IntMatrix::zeros(keep.len(), torsion.len());
        let mut m_plus = plus.select_rows(&keep);
        let mut m_minus = minus.select_rows(&keep);
        for (k, &row) in keep.iter().enumerate() {
            let di = d(row);
            if di.is_zero() {
                continue;
            }
            let col = torsion.iter().position(|&t| t == row).expect("torsion row");
            relations[(k, col)] = di.clone();
            for j in 0..2 * self.genus {
                m_plus[(k, j)] = m_plus[(k, j)].mod_floor(&di);
                m_minus[(k, j)] = m_minus[(k, j)].mod_floor(&di);
            }
        }
        // Hermite-reduce the free coordinates through [m_- | m_+ | I]
        let g2 = 2 * self.genus;
        let free: Vec<usize> = (0..keep.len()).filter(|&k| d(keep[k]).is_zero()).collect();
        if !free.is_empty() {
            let block = m_minus
                .hcat(&m_plus)
                .select_rows(&free)
                .hcat(&IntMatrix::identity(free.len()));
            let h = hermite_rows(&block);
            for (r, &k) in free.iter().enumerate() {
                for j in 0..g2 {
                    m_minus[(k, j)] = h[(r, j)].clone();
                    m_plus[(k, j)] = h[(r, g2 + j)].clone();
                }
            }
        }
        HomologyCobordism {
            genus: self.genus,
            relations,
            m_plus,
            m_minus,
        }
    }

    /// Glues the top of `self` to the bottom of `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return invalid(format!(
                "cannot compose genus {} with genus {}",
                self.genus, other.genus
            ));
        }
        let (n1, n2, g2) = (self.generators(), other.generators(), 2 * self.genus);
        let mut gluing = IntMatrix::zeros(n1 + n2, g2);
        for x in 0..g2 {
            for i in 0..n1 {
                gluing[(i, x)] = self.m_plus[(i, x)].clone();
            }
            for i in 0..n2 {
                gluing[(n1 + i, x)] = -&other.m_minus[(i, x)];
            }
        }
        let relations = self
            .relations
            .block_diag(&other.relations)
            .hcat(&gluing);
        let m_minus = stack(&self.m_minus, &IntMatrix::zeros(n2, g2));
        let m_plus = stack(&IntMatrix::zeros(n1, g2), &other.m_plus);
        Ok(HomologyCobordism {
            genus: self.genus,
            relations,
            m_plus,
            m_minus,
        }
        .simplified())
    }

    fn marking_is_isomorphism(&self, m: &IntMatrix) -> bool {
        let n = self.generators();
        let a = m.hcat(&self.relations);
        let snf = smith_normal_form(&a);
        let onto = snf.diagonal.iter().filter(|d| d.is_one()).count() == n;
        let kernel = integer_kernel(&a);
        let into = (0..kernel.ncols()).all(|j| (0..m.ncols()).all(|i| kernel[(i, j)].is_zero()));
        onto && into
    }

    /// Both markings are isomorphisms onto `V`.
    pub fn is_homology_cobordism(&self) -> bool {
        self.marking_is_isomorphism(&self.m_plus) && self.marking_is_isomorphism(&self.m_minus)
    }

    /// A homology cobordism whose two markings agree in `V`.
    pub fn is_homology_cylinder(&self) -> bool {
        if !self.is_homology_cobordism() {
            return false;
        }
        let diff = self.m_plus.sub(&self.m_minus);
        (0..diff.ncols()).all(|j| in_column_span(&self.relations, &diff.column(j)))
    }

    /// Whether the two markings together generate `V`; equivalence is
    /// decided exactly in that case.
    pub fn markings_generate(&self) -> bool {
        let a = self.m_minus.hcat(&self.m_plus).hcat(&self.relations);
        let snf = smith_normal_form(&a);
        snf.diagonal.iter().filter(|d| d.is_one()).count() == self.generators()
    }

    /// Row HNF of `{x ∈ Z^{4g} : [m_- | m_+] x = 0 in V}`.
    fn marking_kernel(&self) -> IntMatrix {
        let g4 = 4 * self.genus;
        let a = self.m_minus.hcat(&self.m_plus).hcat(&self.relations);
        let k = integer_kernel(&a);
        let proj = k.select_rows(&(0..g4).collect::<Vec<_>>());
        hermite_rows(&proj.transpose())
    }

    fn cokernel_invariants(&self) -> Vec<BigInt> {
        let with = HomologyCobordism {
            genus: self.genus,
            relations: self.m_minus.hcat(&self.m_plus).hcat(&self.relations),
            m_plus: IntMatrix::zeros(self.generators(), 0),
            m_minus: IntMatrix::zeros(self.generators(), 0),
        };
        with.group_invariants()
    }

    /// Isomorphism of `V`s commuting with both markings. Exact when the
    /// markings generate `V`; otherwise compares the marking kernel and the
    /// invariants of `V` and of `V / image`.
    pub fn equivalent(&self, other: &Self) -> bool {
        if self.genus != other.genus {
            return false;
        }
        let (ga, gb) = (self.markings_generate(), other.markings_generate());
        if ga != gb || self.marking_kernel() != other.marking_kernel() {
            return false;
        }
        ga || (self.group_invariants() == other.group_invariants()
            && self.cokernel_invariants() == other.cokernel_invariants())
    }
}

fn stack(top: &IntMatrix, bottom: &IntMatrix) -> IntMatrix {
    top.transpose().hcat(&bottom.transpose()).transpose()
}

/// Action of a mapping class on `H_1(Σ_{g,1})`; column `j` is the image of
/// basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingClass {
    genus: usize,
    matrix: IntMatrix,
}

impl MappingClass {
    pub fn new(genus: usize, matrix: IntMatrix) -> Result<Self> {
        if matrix.nrows() != 2 * genus || matrix.ncols() != 2 * genus {
            return invalid(format!("mapping class matrix must be {0}x{0}", 2 * genus));
        }
        let j = SymplecticLattice::new(genus).form();
        if matrix.transpose().mul(&j).mul(&matrix) != j {
            return invalid("matrix does not preserve the intersection form");
        }
        Ok(MappingClass { genus, matrix })
    }

    pub fn identity(genus: usize) -> Self {
        MappingClass {
            genus,
            matrix: IntMatrix::identity(2 * genus),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `x ↦ x + ω(x, c) c`.
    pub fn dehn_twist(genus: usize, c: &[i64]) -> Result<Self> {
        Self::transvection(genus, c, 1)
    }

    fn transvection(genus: usize, c: &[i64], power: i64) -> Result<Self> {
        let lat = SymplecticLattice::new(genus);
        let n = lat.rank();
        if c.len() != n {
            return invalid(format!("twist curve has {} coordinates, expected {n}", c.len()));
        }
        let mut m = IntMatrix::identity(n);
        for x in 0..n {
            // ω(e_x, c)
            let w: i64 = (0..n).map(|k| lat.omega_basis(x, k) * c[k]).sum();
            for i in 0..n {
                m[(i, x)] += BigInt::from(power * w * c[i]);
            }
        }
        let f = MappingClass { genus, matrix: m };
        debug_assert!(MappingClass::new(genus, f.matrix.clone()).is_ok());
        Ok(f)
    }

    /// `T_{w_1} T_{w_2} ⋯` for signed basis twists.
    pub fn twist_word(genus: usize, word: &[Twist]) -> Result<Self> {
        let mut f = Self::identity(genus);
        for t in word {
            if t.basis >= 2 * genus {
                return invalid(format!("twist index {} out of range for genus {genus}", t.basis));
            }
            let mut c = vec![0; 2 * genus];
            c[t.basis] = 1;
            f = f.then(&Self::transvection(genus, &c, if t.inverse { -1 } else { 1 })?)?;
        }
        Ok(f)
    }

    /// Matrix product `self · other`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return invalid("mapping classes of different genus");
        }
        Ok(MappingClass {
            genus: self.genus,
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    pub fn is_torelli(&self) -> bool {
        self.matrix.is_identity()
    }

    /// `V = Z^{2g}`, `m_- = id`, `m_+ = f_*`.
    pub fn mapping_cylinder(&self) -> HomologyCobordism {
        let n = 2 * self.genus;
        HomologyCobordism {
            genus: self.genus,
            relations: IntMatrix::zeros(n, 0),
            m_plus: self.matrix.clone(),
            m_minus: IntMatrix::identity(n),
        }
    }
}

/// A twist along a basis class, possibly inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Twist {
    pub basis: usize,
    pub inverse: bool,
}

/// Mapping class given as a signed twist word, `word g=1 twists=a1,-b1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistWord {
    pub genus: usize,
    pub twists: Vec<Twist>,
}

impl TwistWord {
    pub fn mapping_class(&self) -> Result<MappingClass> {
        MappingClass::twist_word(self.genus, &self.twists)
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .twists
            .iter()
            .map(|t| format!("{}{}", if t.inverse { "-" } else { "" }, basis_label(self.genus, t.basis)))
            .collect();
        write!(f, "word g={} twists={}", self.genus, parts.join(","))
    }
}

impl FromStr for TwistWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields = fields(s, "word", &["g", "twists"])?;
        let genus = parse_genus(fields[0])?;
        let mut twists = Vec::new();
        for tok in fields[1].split(',').filter(|t| !t.is_empty()) {
            let (inverse, label) = match tok.strip_prefix('-') {
                Some(l) => (true, l),
                None => (false, tok),
            };
            let basis = parse_basis_label(genus, label)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown twist `{tok}` for genus {genus}")))?;
            twists.push(Twist { basis, inverse });
        }
        Ok(TwistWord { genus, twists })
    }
}

impl fmt::Display for HomologyCobordism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cobordism g={} rel={} mplus={} mminus={}",
            self.genus,
            rows_string(&self.relations),
            rows_string(&self.m_plus),
            rows_string(&self.m_minus)
        )
    }
}

impl FromStr for HomologyCobordism {
    type Err = Error;

    /// `cobordism g=1 rel=[] mplus=[1,0;0,1] mminus=[1,0;0,1]`; `[]` is a
    /// matrix without columns.
    fn from_str(s: &str) -> Result<Self> {
        let f = fields(s, "cobordism", &["g", "rel", "mplus", "mminus"])?;
        let genus = parse_genus(f[0])?;
        let rel = parse_rows(f[1])?;
        let plus = parse_rows(f[2])?;
        let minus = parse_rows(f[3])?;
        let n = [&plus, &minus, &rel]
            .iter()
            .map(|r| r.len())
            .max()
            .unwrap_or(0);
        let rel = to_matrix(rel, n, "rel")?;
        let plus = to_matrix(plus, n, "mplus")?;
        let minus = to_matrix(minus, n, "mminus")?;
        HomologyCobordism::new(genus, rel, plus, minus)
    }
}

fn parse_genus(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::InvalidArgument(format!("bad genus `{s}`")))
}

/// Splits `head k1=v1 k2=v2 ...` into values in the given key order.
fn fields<'a>(s: &'a str, head: &str, keys: &[&str]) -> Result<Vec<&'a str>> {
    let mut toks = s.split_whitespace();
    if toks.next() != Some(head) {
        return invalid(format!("expected `{head}`"));
    }
    let mut out = Vec::with_capacity(keys.len());
    for key in keys {
        let tok = toks
            .next()
            .ok_or_else(|| Error::InvalidArgument(format!("missing `{key}=`")))?;
        let v = tok
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| Error::InvalidArgument(format!("expected `{key}=`, found `{tok}`")))?;
        out.push(v);
    }
    if let Some(extra) = toks.next() {
        return invalid(format!("unexpected `{extra}`"));
    }
    Ok(out)
}

/// `[1,2;3,4]`; `[]` yields no rows.
pub fn parse_rows(s: &str) -> Result<Vec<Vec<BigInt>>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::InvalidArgument(format!("matrix `{s}` must be bracketed")))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(';')
        .map(|row| {
            row.split(',')
                .filter(|x| !x.is_empty())
                .map(|x| {
                    x.parse::<BigInt>()
                        .map_err(|_| Error::InvalidArgument(format!("bad matrix entry `{x}`")))
                })
                .collect()
        })
        .collect()
}

fn to_matrix(rows: Vec<Vec<BigInt>>, n: usize, name: &str) -> Result<IntMatrix> {
    if rows.is_empty() {
        return Ok(IntMatrix::zeros(n, 0));
    }
    if rows.len() != n {
        return invalid(format!("{name} has {} rows, expected {n}", rows.len()));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return invalid(format!("{name} rows have different lengths"));
    }
    Ok(IntMatrix::from_big_rows(n, cols, rows))
}

fn rows_string(m: &IntMatrix) -> String {
    if m.ncols() == 0 {
        "[]".to_string()
    } else {
        m.to_string()
    }
}
