//! Exact linear algebra: rational row reduction and integer matrices with
//! Smith and Hermite normal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Reduced row echelon form of a rational matrix.
#[derive(Clone, Debug)]
pub struct RowReduced {
    ncols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowReduced {
    /// Row reduces `rows`, each of length `ncols`.
    pub fn new(rows: Vec<Vec<Rational>>, ncols: usize) -> Self {
        let mut m: Vec<Vec<Rational>> = rows
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        RowReduced {
            ncols,
            rows: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Reduces `v` modulo the row span; the result is zero on every pivot
    /// column and is zero everywhere iff `v` lies in the span.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (x, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        out
    }

    /// Coordinates of `v` in the quotient by the row span, indexed by
    /// [`free_columns`](Self::free_columns).
    pub fn quotient_coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        let reduced = self.reduce(v);
        self.free_columns()
            .into_iter()
            .map(|c| reduced[c].clone())
            .collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    /// Builds a matrix with an explicit shape so that `n x 0` and `0 x n`
    /// matrices are representable.
    pub fn from_big_rows(rows: usize, cols: usize, entries: Vec<Vec<BigInt>>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in entries.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        IntMatrix { data, ..*self }
    }

    pub fn sub(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        IntMatrix { data, ..*self }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hcat(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    /// Block diagonal `diag(self, rhs)`.
    pub fn block_diag(&self, rhs: &IntMatrix) -> IntMatrix {
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out[(self.rows + i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    /// Rows `range` of the matrix.
    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(idx.len(), self.cols);
        for (k, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out[(k, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        self.transpose().select_rows(idx).transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(p) => {
                        m.swap(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * f;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * f;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    /// `[r11,r12;r21,r22]`, `[]` when there are no rows.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "[{}]", rows.join(";"))
    }
}

/// Smith normal form `left * A * right = diag(diagonal)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Invariant factors `d1 | d2 | ...`, nonnegative, length `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix with the shape of the original input.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.nrows(), self.right.nrows());
        for (i, x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (r, c) = (a.nrows(), a.ncols());
    let mut m = a.clone();
    let mut left = IntMatrix::identity(r);
    let mut right = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        // smallest nonzero entry of the remaining block goes to the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !m[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| m[(i, j)].abs() < m[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap_rows(t, pi);
        left.swap_rows(t, pi);
        m.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            // smallest nonzero entry of row t and column t becomes the pivot
            loop {
                let col_best = (t..r)
                    .filter(|&i| !m[(i, t)].is_zero())
                    .min_by(|&x, &y| m[(x, t)].abs().cmp(&m[(y, t)].abs()));
                let row_best = (t..c)
                    .filter(|&j| !m[(t, j)].is_zero())
                    .min_by(|&x, &y| m[(t, x)].abs().cmp(&m[(t, y)].abs()));
                match (col_best, row_best) {
                    (Some(i), Some(j)) if m[(t, j)].abs() < m[(i, t)].abs() => {
                        m.swap_cols(t, j);
                        right.swap_cols(t, j);
                    }
                    (Some(i), _) => {
                        m.swap_rows(t, i);
                        left.swap_rows(t, i);
                    }
                    (None, Some(j)) => {
                        m.swap_cols(t, j);
                        right.swap_cols(t, j);
                    }
                    (None, None) => unreachable!("block has a nonzero entry"),
                }
                let p = m[(t, t)].clone();
                for i in t + 1..r {
                    let q = -m[(i, t)].div_floor(&p);
                    m.add_row(i, t, &q);
                    left.add_row(i, t, &q);
                }
                for j in t + 1..c {
                    let q = -m[(t, j)].div_floor(&p);
                    m.add_col(j, t, &q);
                    right.add_col(j, t, &q);
                }
                let clear = (t + 1..r).all(|i| m[(i, t)].is_zero())
                    && (t + 1..c).all(|j| m[(t, j)].is_zero());
                if clear {
                    break;
                }
            }
            // pivot row and column are clear; enforce divisibility
            let p = m[(t, t)].clone();
            let offender = (t + 1..r)
                .find(|&i| (t + 1..c).any(|j| !m[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    m.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if m[(t, t)].is_negative() {
            m.negate_row(t);
            left.negate_row(t);
        }
    }

    let diagonal = (0..r.min(c)).map(|i| m[(i, i)].clone()).collect();
    SmithForm {
        diagonal,
        left,
        right,
    }
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`:
/// echelon rows with positive pivots, entries above each pivot reduced into
/// `[0, pivot)`, zero rows removed. Two row sets span the same lattice iff
/// their forms are equal.
pub fn hermite_rows(a: &IntMatrix) -> IntMatrix {
    let (r, c) = (a.nrows(), a.ncols());
    let mut m = a.clone();
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        loop {
            let best = (row..r)
                .filter(|&i| !m[(i, col)].is_zero())
                .min_by(|&x, &y| m[(x, col)].abs().cmp(&m[(y, col)].abs()));
            let Some(p) = best else { break };
            m.swap_rows(row, p);
            let mut done = true;
            for i in row + 1..r {
                if m[(i, col)].is_zero() {
                    continue;
                }
                let q = -m[(i, col)].div_floor(&m[(row, col)]);
                m.add_row(i, row, &q);
                if !m[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[(row, col)].is_zero() {
            continue;
        }
        if m[(row, col)].is_negative() {
            m.negate_row(row);
        }
        let p = m[(row, col)].clone();
        for i in 0..row {
            let q = -m[(i, col)].div_floor(&p);
            m.add_row(i, row, &q);
        }
        row += 1;
    }
    m.select_rows(&(0..row).collect::<Vec<_>>())
}

/// A basis of the integer kernel `{x : a x = 0}`, as columns.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let cols: Vec<usize> = (rank..a.ncols()).collect();
    snf.right.select_cols(&cols)
}

/// Whether `v` lies in the integer span of the columns of `a`.
pub fn in_column_span(a: &IntMatrix, v: &[BigInt]) -> bool {
    let snf = smith_normal_form(a);
    let w = snf.left.mul_vec(v);
    w.iter().enumerate().all(|(i, x)| match snf.diagonal.get(i) {
        Some(d) if !d.is_zero() => x.is_multiple_of(d),
        _ => x.is_zero(),
    })
}
