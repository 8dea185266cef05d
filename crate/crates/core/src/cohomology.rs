//! Second cohomology with trivial coefficients: the bracket map λ on Λ²g,
//! the Jacobi subspace Ω, H₂ = Ker λ / Ω and the cocycle conditions used by
//! the extension machinery.

use crate::exactla::{
    sparse_from_entries, zero_vec, LinAlgError, Matrix, Rational, SparseEchelon, Subspace,
};
use crate::liecore::LieAlgebra;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("graded index grid needs 1 <= t <= {max}, got t = {t}")]
    DepthOutOfRange { t: u32, max: u32 },
    #[error("fractional grid needs odd t, got t = {0}")]
    EvenHalfDepth(u32),
    #[error("cochain lives on dimension {cochain}, algebra has dimension {algebra}")]
    DimensionMismatch { cochain: usize, algebra: usize },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Number of basis bivectors e_i∧e_j, i<j.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Lexicographic index of e_i∧e_j (i<j) among all pairs.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Coordinates of e_a∧e_b in the pair basis as (index, sign), or None if a == b.
fn wedge(n: usize, a: usize, b: usize) -> Option<(usize, i64)> {
    use std::cmp::Ordering::*;
    match a.cmp(&b) {
        Less => Some((pair_index(n, a, b), 1)),
        Greater => Some((pair_index(n, b, a), -1)),
        Equal => None,
    }
}

/// Alternating 2-cochain, `coeffs[(i, j)] = c(e_i, e_j)` for positions i < j.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoCochain {
    pub dim: usize,
    pub coeffs: BTreeMap<(usize, usize), Rational>,
}

impl TwoCochain {
    pub fn zero(dim: usize) -> Self {
        TwoCochain { dim, coeffs: BTreeMap::new() }
    }

    /// The unit cochain φ_ij (positions).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut c = Self::zero(dim);
        c.set(i, j, Rational::from_integer(1.into()));
        c
    }

    /// Sets c(e_i, e_j) (either order; stored with i < j).
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        let (key, v) = if i < j { ((i, j), v) } else { ((j, i), -v) };
        if v.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, v);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        if i < j {
            self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
        } else if i > j {
            -self.coeffs.get(&(j, i)).cloned().unwrap_or_else(Rational::zero)
        } else {
            Rational::zero()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// c(x, y) by bilinearity.
    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for ((i, j), a) in &self.coeffs {
            let t = &x[*i] * &y[*j] - &x[*j] * &y[*i];
            if !t.is_zero() {
                s += a * t;
            }
        }
        s
    }

    /// Dense coordinates in the pair basis.
    pub fn to_dense(&self) -> Vec<Rational> {
        let mut v = zero_vec(pair_count(self.dim));
        for ((i, j), a) in &self.coeffs {
            v[pair_index(self.dim, *i, *j)] = a.clone();
        }
        v
    }

    pub fn from_dense(dim: usize, v: &[Rational]) -> Self {
        let mut c = Self::zero(dim);
        for ((i, j), a) in pairs(dim).into_iter().zip(v) {
            if !a.is_zero() {
                c.coeffs.insert((i, j), a.clone());
            }
        }
        c
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        let mut c = Self::zero(self.dim);
        for (k, a) in &self.coeffs {
            let v = a * s;
            if !v.is_zero() {
                c.coeffs.insert(*k, v);
            }
        }
        c
    }

    /// Human-readable form "a φ_{i,j} + …" using the algebra's labels.
    pub fn display_with(&self, labels: &[u32]) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|((i, j), a)| format!("({}) φ_{{{},{}}}", a, labels[*i], labels[*j]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for TwoCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<u32> = (1..=self.dim as u32).collect();
        f.write_str(&self.display_with(&labels))
    }
}

/// λ: Λ²g → g as a dim × C(dim,2) matrix; column (i,j) holds [e_i, e_j].
pub fn lambda_map(g: &LieAlgebra) -> Matrix {
    let n = g.dim();
    let mut m = Matrix::zeros(n, pair_count(n));
    for (i, j, k, c) in g.brackets() {
        m.set(k, pair_index(n, i, j), c.clone());
    }
    m
}

/// Sparse generators of Ω: [e_a,e_b]∧e_c + [e_b,e_c]∧e_a + [e_c,e_a]∧e_b.
fn omega_generators(g: &LieAlgebra) -> Vec<Vec<(usize, Rational)>> {
    let n = g.dim();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let mut entries = Vec::new();
                for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                    for (p, coef) in g.bracket_basis(x, y) {
                        if let Some((idx, s)) = wedge(n, *p, z) {
                            entries.push((idx, coef * Rational::from_integer(s.into())));
                        }
                    }
                }
                let v = sparse_from_entries(entries);
                if !v.is_empty() {
                    out.push(v);
                }
            }
        }
    }
    out
}

pub fn omega_subspace(g: &LieAlgebra) -> Subspace {
    let n = pair_count(g.dim());
    let mut e = SparseEchelon::new(n);
    let mut kept = Vec::new();
    for v in omega_generators(g) {
        if e.insert(v.clone()) {
            kept.push(crate::exactla::to_dense(&v, n));
        }
    }
    Subspace::span(n, kept)
}

#[derive(Clone, Debug)]
pub struct CohomologySpace {
    pub ker_lambda: Subspace,
    pub omega: Subspace,
    pub h2_dim: usize,
    /// Unit cochains φ_ij dual to a pivot basis of Ker λ / Ω.
    pub representatives: Vec<TwoCochain>,
}

pub fn h2(g: &LieAlgebra) -> CohomologySpace {
    let n = g.dim();
    let ker_lambda = crate::exactla::kernel(&lambda_map(g));
    let omega = omega_subspace(g);
    let h2_dim = ker_lambda.dim() - omega.dim();
    let all = pairs(n);
    let representatives = ker_lambda
        .complement_rows(&omega)
        .map(|rows| {
            rows.iter()
                .map(|r| {
                    let p = r.iter().position(|x| !x.is_zero()).expect("nonzero row");
                    TwoCochain::unit(n, all[p].0, all[p].1)
                })
                .collect()
        })
        .unwrap_or_default();
    CohomologySpace { ker_lambda, omega, h2_dim, representatives }
}

/// Only the dimension of H²; avoids building dense subspaces.
pub fn h2_dim(g: &LieAlgebra) -> usize {
    let n = g.dim();
    let rank_lambda = lambda_map(g).rank();
    let ker = pair_count(n) - rank_lambda;
    let mut e = SparseEchelon::new(pair_count(n));
    for v in omega_generators(g) {
        e.insert(v);
    }
    ker - e.rank()
}

/// True iff the bivector Σ a^{ij} X_i∧X_j lies in Ω.
pub fn cocycle_zero_test(g: &LieAlgebra, c: &TwoCochain) -> Result<bool, CohomologyError> {
    check_dim(g, c)?;
    Ok(omega_subspace(g).contains(&c.to_dense())?)
}

/// The cocycle condition: c vanishes on Ω.
pub fn is_cocycle(g: &LieAlgebra, c: &TwoCochain) -> Result<bool, CohomologyError> {
    check_dim(g, c)?;
    let n = g.dim();
    for v in omega_generators(g) {
        let mut s = Rational::zero();
        for (idx, x) in &v {
            let (i, j) = pair_at(n, *idx);
            s += x * c.get(i, j);
        }
        if !s.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn pair_at(n: usize, idx: usize) -> (usize, usize) {
    let mut i = 0;
    let mut rem = idx;
    while rem >= n - i - 1 {
        rem -= n - i - 1;
        i += 1;
    }
    (i, i + 1 + rem)
}

fn check_dim(g: &LieAlgebra, c: &TwoCochain) -> Result<(), CohomologyError> {
    if c.dim != g.dim() {
        return Err(CohomologyError::DimensionMismatch { cochain: c.dim, algebra: g.dim() });
    }
    Ok(())
}

/// Basis of the cocycles supported on the given position pairs.
pub fn cocycle_space(g: &LieAlgebra, support: &[(usize, usize)]) -> Vec<TwoCochain> {
    let n = g.dim();
    let col: BTreeMap<usize, usize> =
        support.iter().enumerate().map(|(t, &(i, j))| (pair_index(n, i, j), t)).collect();
    let mut e = SparseEchelon::new(support.len());
    for v in omega_generators(g) {
        let row: Vec<(usize, Rational)> =
            v.into_iter().filter_map(|(idx, x)| col.get(&idx).map(|&t| (t, x))).collect();
        let row = sparse_from_entries(row);
        if !row.is_empty() {
            e.insert(row);
        }
    }
    e.kernel()
        .into_iter()
        .map(|coef| {
            let mut c = TwoCochain::zero(n);
            for (t, a) in coef.into_iter().enumerate() {
                let (i, j) = support[t];
                c.set(i, j, a);
            }
            c
        })
        .collect()
}

/// B²: cochains f∘λ, as a subspace of the pair coordinates.
pub fn coboundary_space(g: &LieAlgebra) -> Subspace {
    let m = lambda_map(g);
    Subspace::span(pair_count(g.dim()), m.into_rows())
}

/// Index grid of H_k^{2,t}: pairs 1 <= i < j <= n with i + j = 2t+1+k, or
/// i + j = t+1+k for the fractional family (t odd).
pub fn graded_cocycle_indices(
    n: u32,
    k: u32,
    t: u32,
    half: bool,
) -> Result<Vec<(u32, u32)>, CohomologyError> {
    let max = n.saturating_sub(3) / 2;
    if half {
        if t % 2 == 0 {
            return Err(CohomologyError::EvenHalfDepth(t));
        }
        if t < 1 || t > 2 * max + 1 {
            return Err(CohomologyError::DepthOutOfRange { t, max: 2 * max + 1 });
        }
    } else if t < 1 || t > max {
        return Err(CohomologyError::DepthOutOfRange { t, max });
    }
    let sum = if half { t + 1 + k } else { 2 * t + 1 + k };
    Ok((1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).filter(|(i, j)| i + j == sum).collect())
}
