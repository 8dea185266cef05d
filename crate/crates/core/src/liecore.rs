//! Lie algebras given by structure constants, and the invariants computed
//! from them: central series, centralizers, Jordan data of `ad`, the
//! characteristic sequence and the centralizer property.

use crate::exactla::{
    is_zero_vec, rat, sparse_from_entries, unit_vec, zero_vec, Echelon, LinAlgError, Rational,
    SparseEchelon, Subspace,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("label {0} does not name a basis vector")]
    UnknownLabel(u32),
    #[error("label {0} appears twice")]
    DuplicateLabel(u32),
    #[error("bracket [X{0}, X{0}] must vanish")]
    DiagonalBracket(u32),
    #[error("bracket [X{i}, X{j}] given twice")]
    DuplicateBracket { i: u32, j: u32 },
    #[error("algebra is not nilpotent (central series stabilizes at dimension {0})")]
    NotNilpotent(usize),
    #[error("ad(x) is not nilpotent")]
    NotNilpotentOperator,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Finite-dimensional algebra over Q with a labelled basis. Labels are the
/// subscripts used to name basis vectors (they need not be consecutive);
/// internally everything is indexed by position.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<u32>,
    // table[i][j] = [e_i, e_j] as sparse (position, coefficient) list
    table: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {}", self.dim())?;
        for (i, j, k, c) in self.brackets() {
            write!(f, ", [X{},X{}]={}X{}", self.labels[i], self.labels[j], c, self.labels[k])?;
        }
        write!(f, ")")
    }
}

/// One structure constant `[X_i, X_j] ∋ coeff · X_k` with labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub coeff: Rational,
}

impl LieAlgebra {
    pub fn abelian(n: usize) -> Self {
        let labels = (1..=n as u32).collect();
        LieAlgebra { labels, table: vec![vec![Vec::new(); n]; n] }
    }

    /// Builds an algebra from labelled constants. Each unordered pair may be
    /// given in either order but only once; repeated targets within a pair add up.
    pub fn from_brackets(labels: Vec<u32>, brackets: &[Bracket]) -> Result<Self, LieError> {
        let n = labels.len();
        let mut pos = BTreeMap::new();
        for (p, &l) in labels.iter().enumerate() {
            if pos.insert(l, p).is_some() {
                return Err(LieError::DuplicateLabel(l));
            }
        }
        let find = |l: u32| pos.get(&l).copied().ok_or(LieError::UnknownLabel(l));
        let mut entries: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
        let mut orientation: BTreeMap<(usize, usize), bool> = BTreeMap::new();
        for b in brackets {
            let (i, j, k) = (find(b.i)?, find(b.j)?, find(b.k)?);
            if i == j {
                return Err(LieError::DiagonalBracket(b.i));
            }
            let (key, sign) = if i < j { ((i, j), true) } else { ((j, i), false) };
            if let Some(&o) = orientation.get(&key) {
                if o != sign {
                    return Err(LieError::DuplicateBracket { i: b.i, j: b.j });
                }
            }
            orientation.insert(key, sign);
            let c = if sign { b.coeff.clone() } else { -b.coeff.clone() };
            entries.entry(key).or_default().push((k, c));
        }
        let mut table = vec![vec![Vec::new(); n]; n];
        for ((i, j), list) in entries {
            let v = sparse_from_entries(list);
            table[j][i] = v.iter().map(|(k, c)| (*k, -c.clone())).collect();
            table[i][j] = v;
        }
        Ok(LieAlgebra { labels, table })
    }

    /// Builds from position-indexed constants `(i, j, k, c)` with `i != j`.
    pub fn from_positions(labels: Vec<u32>, consts: &[(usize, usize, usize, Rational)]) -> Self {
        let n = labels.len();
        let mut acc: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
        for (i, j, k, c) in consts {
            let (key, c) = if i < j { ((*i, *j), c.clone()) } else { ((*j, *i), -c.clone()) };
            acc.entry(key).or_default().push((*k, c));
        }
        let mut table = vec![vec![Vec::new(); n]; n];
        for ((i, j), list) in acc {
            let v = sparse_from_entries(list);
            table[j][i] = v.iter().map(|(k, c)| (*k, -c.clone())).collect();
            table[i][j] = v;
        }
        LieAlgebra { labels, table }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn position(&self, label: u32) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn basis_vector(&self, label: u32) -> Result<Vec<Rational>, LieError> {
        let p = self.position(label).ok_or(LieError::UnknownLabel(label))?;
        Ok(unit_vec(self.dim(), p))
    }

    /// `[e_i, e_j]` by position, sparse.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i][j]
    }

    /// All nonzero constants `(i, j, k, c)` by position with `i < j`, in lexicographic order.
    pub fn brackets(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> + '_ {
        let n = self.dim();
        (0..n).flat_map(move |i| {
            (i + 1..n).flat_map(move |j| self.table[i][j].iter().map(move |(k, c)| (i, j, *k, c)))
        })
    }

    pub fn labelled_brackets(&self) -> Vec<Bracket> {
        self.brackets()
            .map(|(i, j, k, c)| Bracket {
                i: self.labels[i],
                j: self.labels[j],
                k: self.labels[k],
                coeff: c.clone(),
            })
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets().next().is_none()
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, LieError> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(LinAlgError::LengthMismatch { expected: n, got: v.len() }.into());
            }
        }
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() || self.table[i][j].is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i][j] {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    /// `[x, e_j]` for a dense x.
    fn bracket_with_basis(&self, x: &[Rational], j: usize) -> Vec<Rational> {
        let mut out = zero_vec(self.dim());
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, c) in &self.table[i][j] {
                out[*k] += a * c;
            }
        }
        out
    }

    /// Triples `i < j < k` (labels) whose Jacobi defect is nonzero.
    pub fn jacobi_violations(&self) -> Vec<JacobiDefect> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let d = self.jacobi_defect(i, j, k);
                    if !is_zero_vec(&d) {
                        out.push(JacobiDefect {
                            triple: (self.labels[i], self.labels[j], self.labels[k]),
                            defect: d,
                        });
                    }
                }
            }
        }
        out
    }

    fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        let mut d = zero_vec(self.dim());
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (p, x) in &self.table[b][c] {
                for (q, y) in &self.table[a][*p] {
                    d[*q] += x * y;
                }
            }
        }
        d
    }

    pub fn is_lie(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (i + 1..n).all(|j| (j + 1..n).all(|k| is_zero_vec(&self.jacobi_defect(i, j, k))))
        })
    }

    /// `[A, B]` for subspaces given by bases.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut e = Echelon::new(self.dim());
        for x in a.basis() {
            for y in b.basis() {
                e.insert(self.bracket_unchecked(x, y));
            }
        }
        e.into_subspace()
    }

    pub fn lower_central_series(&self) -> SeriesProfile {
        let n = self.dim();
        let mut terms = vec![Subspace::full(n)];
        loop {
            let last = terms.last().unwrap();
            if last.is_zero() {
                break;
            }
            let mut e = Echelon::new(n);
            for x in last.basis() {
                for j in 0..n {
                    e.insert(self.bracket_with_basis(x, j));
                }
            }
            let next = e.into_subspace();
            if next.dim() == last.dim() {
                return SeriesProfile { terms, nilindex: None, type_sequence: Vec::new() };
            }
            terms.push(next);
        }
        let nil = terms.len() - 1;
        let type_sequence = (1..terms.len()).map(|k| terms[k - 1].dim() - terms[k].dim()).collect();
        SeriesProfile { terms, nilindex: Some(nil), type_sequence }
    }

    pub fn is_filiform(&self) -> Result<bool, LieError> {
        let s = self.lower_central_series();
        let nil = s.nilindex.ok_or(LieError::NotNilpotent(s.terms.last().unwrap().dim()))?;
        let n = self.dim();
        if n < 2 {
            return Ok(false);
        }
        Ok((1..n).all(|k| {
            let d = if k <= nil { s.terms[k].dim() } else { 0 };
            d == n - k - 1
        }))
    }

    /// `{x : [x, v] = 0 for all v in s}`.
    pub fn centralizer(&self, s: &Subspace) -> Result<Subspace, LieError> {
        let n = self.dim();
        if s.ambient() != n {
            return Err(LinAlgError::AmbientMismatch(n, s.ambient()).into());
        }
        let mut eqs = SparseEchelon::new(n);
        for v in s.basis() {
            // coefficient of e_k in [x, v] = sum_i x_i [e_i, v]_k
            let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
            for i in 0..n {
                for (j, b) in v.iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    for (k, c) in &self.table[i][j] {
                        rows[*k].push((i, b * c));
                    }
                }
            }
            for r in rows {
                eqs.insert(sparse_from_entries(r));
            }
        }
        Ok(Subspace::span(n, eqs.kernel()))
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.dim())).expect("ambient matches")
    }

    /// Matrix of ad(x): column j holds [x, e_j].
    pub fn ad_matrix(&self, x: &[Rational]) -> crate::exactla::Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| self.bracket_with_basis(x, j)).collect();
        crate::exactla::Matrix::from_rows(n, cols).expect("square").transpose()
    }

    /// Ranks of ad(x)^s for s = 0, 1, ... until zero.
    fn ad_power_ranks(&self, x: &[Rational]) -> Result<Vec<usize>, LieError> {
        let n = self.dim();
        let mut ranks = vec![n];
        let mut image = Subspace::full(n);
        while !image.is_zero() {
            let mut e = Echelon::new(n);
            for v in image.basis() {
                e.insert(self.bracket_unchecked(x, v));
            }
            let next = e.into_subspace();
            if next.dim() == image.dim() {
                return Err(LieError::NotNilpotentOperator);
            }
            ranks.push(next.dim());
            image = next;
        }
        Ok(ranks)
    }

    /// Jordan block sizes of the nilpotent operator ad(x), non-increasing.
    pub fn jordan_block_sequence(&self, x: &[Rational]) -> Result<Vec<usize>, LieError> {
        let n = self.dim();
        if x.len() != n {
            return Err(LinAlgError::LengthMismatch { expected: n, got: x.len() }.into());
        }
        let r = self.ad_power_ranks(x)?;
        // blocks of size >= s: r[s-1] - r[s]
        let mut at_least: Vec<usize> = (1..r.len()).map(|s| r[s - 1] - r[s]).collect();
        at_least.push(0);
        let mut blocks = Vec::new();
        for s in (1..r.len()).rev() {
            let exact = at_least[s - 1] - at_least[s];
            blocks.extend(std::iter::repeat(s).take(exact));
        }
        Ok(blocks)
    }

    /// Lexicographic maximum of the Jordan data of ad(X), X outside C^1,
    /// over the candidate set: basis vectors outside C^1, their pairwise
    /// sums and eight seeded random integer combinations.
    pub fn characteristic_sequence(&self, seed: u64) -> Result<CharacteristicSequence, LieError> {
        let n = self.dim();
        let series = self.lower_central_series();
        if series.nilindex.is_none() {
            return Err(LieError::NotNilpotent(series.terms.last().unwrap().dim()));
        }
        let c1 = if series.terms.len() > 1 { series.terms[1].clone() } else { Subspace::zero(n) };
        if c1.is_zero() {
            return Ok(CharacteristicSequence {
                blocks: vec![1; n],
                witness: if n > 0 { unit_vec(n, 0) } else { Vec::new() },
                generic_agreement: true,
            });
        }
        let outside: Vec<usize> = (0..n).filter(|&i| !c1.contains(&unit_vec(n, i)).unwrap()).collect();
        let mut candidates: Vec<(Vec<Rational>, bool)> = Vec::new();
        for &i in &outside {
            candidates.push((unit_vec(n, i), false));
        }
        for (a, &i) in outside.iter().enumerate() {
            for &j in &outside[a + 1..] {
                let mut v = unit_vec(n, i);
                v[j] = Rational::one();
                candidates.push((v, false));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut drawn = 0;
        while drawn < 8 {
            let v: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-9..=9))).collect();
            if c1.contains(&v).unwrap() {
                continue;
            }
            candidates.push((v, true));
            drawn += 1;
        }
        let mut best: Option<(Vec<usize>, Vec<Rational>)> = None;
        let mut random_values = Vec::new();
        for (v, random) in candidates {
            if c1.contains(&v).unwrap() {
                continue;
            }
            let b = self.jordan_block_sequence(&v)?;
            if random {
                random_values.push(b.clone());
            }
            if best.as_ref().map_or(true, |(bb, _)| b > *bb) {
                best = Some((b, v));
            }
        }
        let (blocks, witness) = best.expect("at least one candidate");
        let generic_agreement = random_values.iter().all(|b| *b == blocks);
        Ok(CharacteristicSequence { blocks, witness, generic_agreement })
    }

    /// Degree of each basis vector read off the central series: the largest
    /// k with e_i ∈ C^{k-1}. `adapted` reports whether the basis is
    /// filtration-adapted (every C^k is spanned by the basis vectors it contains).
    pub fn filtration_degrees(&self) -> Result<(Vec<u32>, bool), LieError> {
        let s = self.lower_central_series();
        let nil = s.nilindex.ok_or(LieError::NotNilpotent(s.terms.last().unwrap().dim()))?;
        let n = self.dim();
        let mut degrees = vec![1u32; n];
        for (i, d) in degrees.iter_mut().enumerate() {
            let e = unit_vec(n, i);
            for k in 1..nil {
                if s.terms[k].contains(&e).unwrap() {
                    *d = k as u32 + 1;
                } else {
                    break;
                }
            }
        }
        let adapted = (1..nil).all(|k| {
            let count = degrees.iter().filter(|&&d| d as usize > k).count();
            count == s.terms[k].dim()
        });
        Ok((degrees, adapted))
    }

    /// Checks the centralizer property (P) and classifies P1/P2/neither.
    pub fn centralizer_property(&self) -> Result<CentralizerReport, LieError> {
        let s = self.lower_central_series();
        let nil = s.nilindex.ok_or(LieError::NotNilpotent(s.terms.last().unwrap().dim()))?;
        let frontier = nil / 2;
        let mut layers = Vec::new();
        for p in 1..nil {
            let cp = &s.terms[p];
            let cent = self.centralizer(cp)?;
            let contains = cp.is_subspace_of(&cent)?;
            let expected = p >= frontier;
            layers.push(LayerCheck {
                p,
                dim_c_p: cp.dim(),
                dim_centralizer: cent.dim(),
                centralizer_contains_c_p: contains,
                expected_contains: expected,
            });
        }
        let holds_p = layers.iter().all(|l| l.centralizer_contains_c_p == l.expected_contains);
        let mut witnesses = Vec::new();
        let variant = if frontier == 0 {
            PVariant::Neither
        } else {
            let w = &s.terms[frontier - 1];
            let v = &s.terms[frontier];
            let block = self.frontier_block(w, v)?;
            let p1 = self.first_nonzero_pair(&block, &block);
            match p1 {
                Some(wit) => {
                    witnesses.push(wit);
                    PVariant::P1
                }
                None => match self.first_nonzero_pair(w.basis(), w.basis()) {
                    Some(wit) => {
                        witnesses.push(wit);
                        PVariant::P2
                    }
                    None => PVariant::Neither,
                },
            }
        };
        let frontier_disagrees = (nil.saturating_sub(1)) / 2 != frontier;
        Ok(CentralizerReport {
            holds_p,
            variant,
            frontier,
            nilindex: nil,
            layers,
            witnesses,
            frontier_disagrees,
        })
    }

    /// The degree-`f` block: basis vectors of W outside V when the basis is
    /// adapted, otherwise the canonical (earliest-pivot) complement of V in W.
    fn frontier_block(&self, w: &Subspace, v: &Subspace) -> Result<Vec<Vec<Rational>>, LieError> {
        let n = self.dim();
        let units: Vec<Vec<Rational>> = (0..n)
            .map(|i| unit_vec(n, i))
            .filter(|e| w.contains(e).unwrap() && !v.contains(e).unwrap())
            .collect();
        if units.len() == w.dim() - v.dim() {
            return Ok(units);
        }
        Ok(w.complement_rows(v)?)
    }

    fn first_nonzero_pair(&self, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Option<BracketWitness> {
        for x in a {
            for y in b {
                let z = self.bracket_unchecked(x, y);
                if !is_zero_vec(&z) {
                    return Some(BracketWitness { x: x.clone(), y: y.clone(), bracket: z });
                }
            }
        }
        None
    }

    /// Dimension of the derivation algebra Der(g).
    pub fn derivation_dim(&self) -> usize {
        let n = self.dim();
        let var = |row: usize, col: usize| row * n + col; // D(e_col) has e_row-coefficient D[row][col]
        let mut eqs = SparseEchelon::new(n * n);
        for i in 0..n {
            for j in i + 1..n {
                for o in 0..n {
                    let mut e: Vec<(usize, Rational)> = Vec::new();
                    for (k, c) in &self.table[i][j] {
                        e.push((var(o, *k), c.clone()));
                    }
                    for k in 0..n {
                        for (t, c) in &self.table[k][j] {
                            if *t == o {
                                e.push((var(k, i), -c.clone()));
                            }
                        }
                        for (t, c) in &self.table[i][k] {
                            if *t == o {
                                e.push((var(k, j), -c.clone()));
                            }
                        }
                    }
                    let e = sparse_from_entries(e);
                    if !e.is_empty() {
                        eqs.insert(e);
                    }
                }
            }
        }
        n * n - eqs.rank()
    }

    /// Expresses the algebra in a new basis (rows of `basis`, coordinates in the
    /// old basis). Labels are kept positionally.
    pub fn change_basis(&self, basis: &[Vec<Rational>]) -> Result<LieAlgebra, LieError> {
        let n = self.dim();
        let b = crate::exactla::Matrix::from_rows(n, basis.to_vec())?;
        if b.rows() != n {
            return Err(LinAlgError::Shape("basis must have dim rows".into()).into());
        }
        // old coordinates v = B^T c  =>  c = (B^T)^{-1} v
        let inv = b.transpose().inverse()?;
        let mut consts = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let z = self.bracket_unchecked(&basis[i], &basis[j]);
                if is_zero_vec(&z) {
                    continue;
                }
                let c = inv.apply(&z)?;
                for (k, x) in c.into_iter().enumerate() {
                    if !x.is_zero() {
                        consts.push((i, j, k, x));
                    }
                }
            }
        }
        Ok(LieAlgebra::from_positions(self.labels.clone(), &consts))
    }

    /// Quotient by the span of a central basis vector (given by label); the
    /// remaining basis vectors keep their labels.
    pub fn quotient_by_basis_vector(&self, label: u32) -> Result<LieAlgebra, LieError> {
        let p = self.position(label).ok_or(LieError::UnknownLabel(label))?;
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| i != p).collect();
        let new_pos = |i: usize| keep.iter().position(|&k| k == i);
        let mut consts = Vec::new();
        for (i, j, k, c) in self.brackets() {
            if let (Some(a), Some(b), Some(t)) = (new_pos(i), new_pos(j), new_pos(k)) {
                consts.push((a, b, t, c.clone()));
            } else if i == p || j == p {
                // the vector is assumed central; any bracket with it is dropped
            }
        }
        let labels = keep.iter().map(|&i| self.labels[i]).collect();
        Ok(LieAlgebra::from_positions(labels, &consts))
    }

    /// g ⊕ Q^k with new labels after the current maximum.
    pub fn direct_sum_abelian(&self, k: usize) -> LieAlgebra {
        let max = self.labels.iter().copied().max().unwrap_or(0);
        let mut labels = self.labels.clone();
        labels.extend((1..=k as u32).map(|i| max + i));
        let consts: Vec<_> = self.brackets().map(|(i, j, t, c)| (i, j, t, c.clone())).collect();
        LieAlgebra::from_positions(labels, &consts)
    }

    /// Relabels the basis (same constants).
    pub fn with_labels(&self, labels: Vec<u32>) -> Result<LieAlgebra, LieError> {
        if labels.len() != self.dim() {
            return Err(LinAlgError::LengthMismatch { expected: self.dim(), got: labels.len() }.into());
        }
        let mut seen = std::collections::BTreeSet::new();
        for &l in &labels {
            if !seen.insert(l) {
                return Err(LieError::DuplicateLabel(l));
            }
        }
        Ok(LieAlgebra { labels, table: self.table.clone() })
    }

    /// Formats a coordinate vector as a combination of labelled basis vectors.
    pub fn format_vector(&self, v: &[Rational]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    format!("X{}", self.labels[i])
                } else {
                    format!("({})X{}", c, self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiDefect {
    pub triple: (u32, u32, u32),
    pub defect: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct SeriesProfile {
    /// C^0 ⊇ C^1 ⊇ ... ; ends with the zero subspace when nilpotent.
    pub terms: Vec<Subspace>,
    pub nilindex: Option<usize>,
    pub type_sequence: Vec<usize>,
}

impl SeriesProfile {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.dim()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicSequence {
    pub blocks: Vec<usize>,
    pub witness: Vec<Rational>,
    /// All random candidates reached the maximum (the usual certificate that
    /// the generic value was found).
    pub generic_agreement: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PVariant {
    P1,
    P2,
    Neither,
}

impl fmt::Display for PVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PVariant::P1 => "P1",
            PVariant::P2 => "P2",
            PVariant::Neither => "neither",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerCheck {
    pub p: usize,
    pub dim_c_p: usize,
    pub dim_centralizer: usize,
    pub centralizer_contains_c_p: bool,
    pub expected_contains: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketWitness {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    pub bracket: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerReport {
    pub holds_p: bool,
    pub variant: PVariant,
    pub frontier: usize,
    pub nilindex: usize,
    pub layers: Vec<LayerCheck>,
    pub witnesses: Vec<BracketWitness>,
    /// The alternative frontier ⌊(n−1)/2⌋ differs from ⌊n/2⌋ (even nilindex).
    pub frontier_disagrees: bool,
}

impl CentralizerReport {
    /// (P) holds and the variant is P2.
    pub fn is_p2(&self) -> bool {
        self.holds_p && self.variant == PVariant::P2
    }

    pub fn is_p1(&self) -> bool {
        self.holds_p && self.variant == PVariant::P1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::frac;

    fn alg(labels: &[u32], b: &[(u32, u32, u32, i64)]) -> LieAlgebra {
        let br: Vec<Bracket> =
            b.iter().map(|&(i, j, k, c)| Bracket { i, j, k, coeff: rat(c) }).collect();
        LieAlgebra::from_brackets(labels.to_vec(), &br).unwrap()
    }

    fn h3() -> LieAlgebra {
        alg(&[1, 2, 3], &[(1, 2, 3, 1)])
    }

    fn l3() -> LieAlgebra {
        alg(&[1, 2, 3, 4], &[(1, 2, 3, 1), (1, 3, 4, 1)])
    }

    fn e(n: usize, i: usize) -> Vec<Rational> {
        unit_vec(n, i)
    }

    #[test]
    fn bracket_examples() {
        let h = h3();
        assert_eq!(h.bracket(&e(3, 0), &e(3, 1)).unwrap(), e(3, 2));
        let x = vec![rat(2), frac(1, 3), rat(-1)];
        assert!(is_zero_vec(&h.bracket(&x, &x).unwrap()));
        assert!(h.bracket(&e(2, 0), &e(3, 0)).is_err());
    }

    #[test]
    fn jacobi_examples() {
        assert!(h3().jacobi_violations().is_empty());
        let bad = alg(&[1, 2, 3, 4, 5], &[(1, 2, 3, 1), (1, 3, 4, 1), (2, 4, 5, 1)]);
        let v = bad.jacobi_violations();
        assert!(v.iter().any(|d| d.triple == (1, 2, 3)));
    }

    #[test]
    fn series_examples() {
        let ab = LieAlgebra::abelian(4);
        let s = ab.lower_central_series();
        assert_eq!(s.nilindex, Some(1));
        assert_eq!(s.type_sequence, vec![4]);
        let s = l3().lower_central_series();
        assert_eq!(s.dims(), vec![4, 2, 1, 0]);
        assert_eq!(s.nilindex, Some(3));
        assert_eq!(s.type_sequence, vec![2, 1, 1]);
    }

    #[test]
    fn non_nilpotent_is_reported() {
        // sl2-like: [h,e]=2e, [h,f]=-2f, [e,f]=h
        let g = alg(&[1, 2, 3], &[(1, 2, 2, 2), (1, 3, 3, -2), (2, 3, 1, 1)]);
        assert_eq!(g.lower_central_series().nilindex, None);
        assert!(matches!(g.is_filiform(), Err(LieError::NotNilpotent(3))));
        assert!(g.centralizer_property().is_err());
    }

    #[test]
    fn filiform_examples() {
        assert!(l3().is_filiform().unwrap());
        assert!(!h3().direct_sum_abelian(1).is_filiform().unwrap());
    }

    #[test]
    fn centralizer_examples() {
        let h = h3();
        assert_eq!(h.centralizer(&Subspace::zero(3)).unwrap().dim(), 3);
        assert_eq!(h.centralizer(&Subspace::span(3, vec![e(3, 2)])).unwrap().dim(), 3);
        let l = l3();
        let c1 = l.lower_central_series().terms[1].clone();
        let c = l.centralizer(&c1).unwrap();
        assert_eq!(c, Subspace::span(4, vec![e(4, 1), e(4, 2), e(4, 3)]));
    }

    #[test]
    fn jordan_examples() {
        let h = h3();
        assert_eq!(h.jordan_block_sequence(&zero_vec(3)).unwrap(), vec![1, 1, 1]);
        assert_eq!(h.jordan_block_sequence(&e(3, 0)).unwrap(), vec![2, 1]);
    }

    #[test]
    fn derivations_of_small_algebras() {
        // Der(h3) has dimension 6; Der(abelian Q^2) = gl2
        assert_eq!(h3().derivation_dim(), 6);
        assert_eq!(LieAlgebra::abelian(2).derivation_dim(), 4);
    }

    #[test]
    fn change_basis_round_trip() {
        let l = l3();
        let b = vec![e(4, 1), e(4, 0), e(4, 2), e(4, 3)];
        let m = l.change_basis(&b).unwrap();
        // [e1', e0'] = [X2, X1] = -X3 = -e2'
        assert_eq!(m.bracket_basis(0, 1), &[(2, rat(-1))]);
        assert!(m.jacobi_violations().is_empty());
    }
}
