//! Exact linear algebra over the rationals: matrices, reduced row echelon
//! form, kernels and canonical subspaces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Scalar field of the whole crate.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("vector of length {got} does not fit ambient dimension {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("quotient requested but the second subspace is not contained in the first")]
    NotContained,
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q", "p" or "-p/q" into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Formats a rational as "p/q" (always with a denominator, as the document format expects).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![zero_vec(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self, LinAlgError> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(LinAlgError::LengthMismatch { expected: cols, got: r.len() });
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r]
    }

    pub fn row_vecs(&self) -> &[Vec<Rational>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<Rational>> {
        self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    t.data[j][i] = x.clone();
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                axpy(&mut out.data[i], a, &other.data[k]);
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::LengthMismatch { expected: self.cols, got: v.len() });
        }
        Ok(self
            .data
            .iter()
            .map(|r| {
                let mut s = Rational::zero();
                for (a, b) in r.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a * b;
                    }
                }
                s
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for r in &self.data {
            e.insert(r.clone());
        }
        e.rank()
    }

    pub fn inverse(&self) -> Result<Matrix, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug: Vec<Vec<Rational>> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend(unit_vec(n, i));
                row
            })
            .collect();
        let (red, pivots) = rref_rows(aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinAlgError::Singular);
        }
        let data = red.into_iter().take(n).map(|r| r[n..].to_vec()).collect();
        Ok(Matrix { rows: n, cols: n, data })
    }
}

/// Reduces rows in place to reduced row echelon form; returns the nonzero
/// rows and their pivot columns.
fn rref_rows(mut rows: Vec<Vec<Rational>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Unique reduced row echelon form (zero rows kept at the bottom so the shape is preserved).
pub fn rref(m: &Matrix) -> Matrix {
    let (mut rows, _) = rref_rows(m.data.clone(), m.cols);
    while rows.len() < m.rows {
        rows.push(zero_vec(m.cols));
    }
    Matrix { rows: m.rows, cols: m.cols, data: rows }
}

/// Null space of `m` (vectors v with m·v = 0).
pub fn kernel(m: &Matrix) -> Subspace {
    let (rows, pivots) = rref_rows(m.data.clone(), m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vec(m.cols);
        v[free] = Rational::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = -row[free].clone();
            }
        }
        basis.push(v);
    }
    Subspace::span(m.cols, basis)
}

/// Incrementally maintained reduced echelon basis. Inserting a vector reports
/// whether it enlarged the span.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows (result has zeros in all pivot columns).
    pub fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = -v[p].clone();
                axpy(&mut v, &f, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vec(&self.reduce(v.to_vec()))
    }

    pub fn insert(&mut self, v: Vec<Rational>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = -row[p].clone();
                axpy(row, &f, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace { ambient: self.dim, basis: self.rows, pivots: self.pivots }
    }
}

/// A linear subspace of Q^n stored by its reduced row echelon basis, so
/// equality of subspaces is structural equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| unit_vec(ambient, i)))
    }

    pub fn span<I: IntoIterator<Item = Vec<Rational>>>(ambient: usize, vectors: I) -> Self {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            e.insert(v);
        }
        e.into_subspace()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn echelon(&self) -> Echelon {
        Echelon { dim: self.ambient, rows: self.basis.clone(), pivots: self.pivots.clone() }
    }

    pub fn reduce(&self, v: Vec<Rational>) -> Vec<Rational> {
        self.echelon().reduce(v)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinAlgError> {
        if v.len() != self.ambient {
            return Err(LinAlgError::LengthMismatch { expected: self.ambient, got: v.len() });
        }
        Ok(self.echelon().contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check(other)?;
        let mut e = self.echelon();
        for v in &other.basis {
            e.insert(v.clone());
        }
        Ok(e.into_subspace())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check(other)?;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // Solve u·A = v·B, i.e. the kernel of [A^T | -B^T].
        let mut m = Matrix::zeros(self.ambient, a + b);
        for c in 0..self.ambient {
            for (i, row) in self.basis.iter().enumerate() {
                m.data[c][i] = row[c].clone();
            }
            for (j, row) in other.basis.iter().enumerate() {
                m.data[c][a + j] = -row[c].clone();
            }
        }
        let k = kernel(&m);
        let vecs = k.basis.iter().map(|coef| {
            let mut v = zero_vec(self.ambient);
            for (i, row) in self.basis.iter().enumerate() {
                axpy(&mut v, &coef[i], row);
            }
            v
        });
        Ok(Subspace::span(self.ambient, vecs.collect::<Vec<_>>()))
    }

    /// True when `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        self.check(other)?;
        let e = other.echelon();
        Ok(self.basis.iter().all(|v| e.contains(v)))
    }

    /// dim(self / sub); `sub` must be contained in `self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize, LinAlgError> {
        if !sub.is_subspace_of(self)? {
            return Err(LinAlgError::NotContained);
        }
        Ok(self.dim() - sub.dim())
    }

    /// Basis rows of `self` whose pivots are not pivots of `sub`: a canonical
    /// complement of `sub` inside `self` (requires `sub ⊆ self`).
    pub fn complement_rows(&self, sub: &Subspace) -> Result<Vec<Vec<Rational>>, LinAlgError> {
        if !sub.is_subspace_of(self)? {
            return Err(LinAlgError::NotContained);
        }
        Ok(self
            .basis
            .iter()
            .zip(&self.pivots)
            .filter(|(_, p)| !sub.pivots.contains(p))
            .map(|(r, _)| r.clone())
            .collect())
    }

    fn check(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }
}

/// Sparse vector: sorted `(column, nonzero value)` pairs.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn to_dense(v: &SparseVec, n: usize) -> Vec<Rational> {
    let mut out = zero_vec(n);
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn sparse_from_entries(mut entries: Vec<(usize, Rational)>) -> SparseVec {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (i, x) in entries {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// `a + c * b` on sparse vectors.
fn sparse_axpy(a: &SparseVec, c: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Echelon form for sparse linear systems (rows with distinct leading
/// columns, leading coefficient 1). Suited to the large, very sparse systems
/// produced by derivation and cocycle conditions.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    dim: usize,
    rows: std::collections::BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new(dim: usize) -> Self {
        SparseEchelon { dim, rows: Default::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        loop {
            let Some((lead, x)) = v.first().cloned() else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(row) => v = sparse_axpy(&v, &-x, row),
                None => {
                    let inv = x.recip();
                    for e in v.iter_mut() {
                        e.1 *= &inv;
                    }
                    self.rows.insert(lead, v);
                    return true;
                }
            }
        }
    }

    /// Basis of the solution space of the inserted homogeneous equations.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        // back-substitute to reduced form, from the last pivot upwards
        let mut reduced: std::collections::BTreeMap<usize, SparseVec> = Default::default();
        for (&p, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            loop {
                let hit = r.iter().skip(1).find(|(c, _)| reduced.contains_key(c)).cloned();
                match hit {
                    Some((c, x)) => r = sparse_axpy(&r, &-x, &reduced[&c]),
                    None => break,
                }
            }
            reduced.insert(p, r);
        }
        (0..self.dim)
            .filter(|c| !reduced.contains_key(c))
            .map(|free| {
                let mut v = zero_vec(self.dim);
                v[free] = Rational::one();
                for (&p, row) in &reduced {
                    if let Some((_, x)) = row.iter().find(|(c, _)| *c == free) {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Rank of an integer-valued rational matrix via fraction-free elimination in
/// `i128`, falling back to exact rationals if an intermediate overflows.
pub fn rank_fast(m: &Matrix) -> usize {
    let ints: Option<Vec<Vec<i128>>> = m
        .data
        .iter()
        .map(|r| {
            // clear the row's denominators
            let l = r.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
            r.iter()
                .map(|x| {
                    let v = x.numer() * (&l / x.denom());
                    i128::try_from(v).ok()
                })
                .collect()
        })
        .collect();
    if let Some(mut a) = ints {
        if let Some(r) = bareiss_rank(&mut a) {
            return r;
        }
    }
    m.rank()
}

fn bareiss_rank(a: &mut [Vec<i128>]) -> Option<usize> {
    let rows = a.len();
    if rows == 0 {
        return Some(0);
    }
    let cols = a[0].len();
    let mut r = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let x = a[i][j].checked_mul(a[r][c])?;
                let y = a[i][c].checked_mul(a[r][j])?;
                a[i][j] = x.checked_sub(y)? / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        r += 1;
    }
    Some(r)
}

/// Least common denominator of a vector.
pub fn common_denominator(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()))
}

/// Scales `v` so its first nonzero entry is 1 (the zero vector is returned unchanged).
pub fn normalize_leading(v: &[Rational]) -> Vec<Rational> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = lead.recip();
            v.iter().map(|x| x * &inv).collect()
        }
        None => v.to_vec(),
    }
}

pub fn abs_max(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(2);
        assert_eq!(rref(&id), id);
        let m = Matrix::from_i64(&[&[2, 4], &[1, 2]]);
        assert_eq!(rref(&m), Matrix::from_i64(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Matrix::zeros(3, 3)).dim(), 3);
        assert_eq!(kernel(&Matrix::identity(4)).dim(), 0);
        let k = kernel(&Matrix::from_i64(&[&[1, 1, 0]]));
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&[rat(1), rat(-1), rat(0)]).unwrap());
    }

    #[test]
    fn subspace_examples() {
        let e = |i| unit_vec(3, i);
        let a = Subspace::span(3, vec![e(0)]);
        let b = Subspace::span(3, vec![e(1)]);
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        let x = Subspace::span(3, vec![e(0), e(1)]);
        let y = Subspace::span(3, vec![e(1), e(2)]);
        assert_eq!(x.intersect(&y).unwrap(), Subspace::span(3, vec![e(1)]));
        let full = Subspace::full(3);
        assert_eq!(full.quotient_dim(&Subspace::span(3, vec![e(2)])).unwrap(), 2);
        assert_eq!(a.quotient_dim(&b), Err(LinAlgError::NotContained));
        assert!(matches!(
            a.sum(&Subspace::zero(4)),
            Err(LinAlgError::AmbientMismatch(3, 4))
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(), Err(LinAlgError::Singular));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("-3/6"), Some(frac(-1, 2)));
        assert_eq!(parse_rational("5"), Some(rat(5)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&frac(4, -6)), "-2/3");
    }

    #[test]
    fn sparse_echelon_kernel() {
        let m = Matrix::from_i64(&[&[1, 2, 0, -1], &[2, 4, 1, 0], &[3, 6, 1, -1]]);
        let mut e = SparseEchelon::new(4);
        for r in m.row_vecs() {
            e.insert(to_sparse(r));
        }
        assert_eq!(e.rank(), 2);
        let k = Subspace::span(4, e.kernel());
        assert_eq!(k, kernel(&m));
    }

    #[test]
    fn fast_rank_agrees() {
        let m = Matrix::from_rows(
            3,
            vec![
                vec![frac(1, 2), rat(1), rat(0)],
                vec![rat(1), rat(2), rat(0)],
                vec![rat(0), frac(1, 3), rat(5)],
            ],
        )
        .unwrap();
        assert_eq!(rank_fast(&m), 2);
        assert_eq!(m.rank(), 2);
    }
}
