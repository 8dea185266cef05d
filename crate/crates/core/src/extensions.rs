//! One-dimensional central extensions μ = μ₀ + α: construction, exhaustive
//! enumeration of the naturally graded ones, equivalence reduction and the
//! iterated towers of the catalog.

use crate::cohomology::{cocycle_space, coboundary_space, pair_count, pair_index, TwoCochain};
use crate::exactla::{
    kernel, normalize_leading, rref, LinAlgError, Matrix, Rational, Subspace,
};
use crate::grading::{natural_graded_verdict, GradedConclusion, Grading, GradingError};
use crate::liecore::{LieAlgebra, LieError};
use crate::models::{adopted_forms, make, tower_base, ModelError, ModelId};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

/// Upper bound on the zero-pattern strata explored by one enumeration.
pub const MAX_STRATA: usize = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("inconsistent extension spec: {0}")]
    InconsistentSpec(String),
    #[error("cochain is not a cocycle: {violations} Jacobi triples fail in the extension")]
    NotCocycle { violations: usize },
    #[error("more than {0} zero-pattern strata; narrow the spec")]
    TooManyStrata(usize),
    #[error("{0} is not a tower family")]
    NotATower(String),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Depth of the adjoined vector: integer t (degree 2t+1) or t/2 with t odd
/// (degree t+1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Depth {
    Integer(u32),
    Half(u32),
}

impl Depth {
    pub fn degree(self) -> u32 {
        match self {
            Depth::Integer(t) => 2 * t + 1,
            Depth::Half(t) => t + 1,
        }
    }
}

/// Restricts the support to index pairs with i + j = (2t+1 or t+1) + k, k in `ks`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySelector {
    pub depth: Depth,
    pub ks: Vec<u32>,
}

impl FamilySelector {
    pub fn new(depth: Depth, ks: Vec<u32>) -> Self {
        FamilySelector { depth, ks }
    }

    pub fn index_sums(&self) -> Vec<u32> {
        let base = self.depth.degree();
        self.ks.iter().map(|k| base + k).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExtensionSpec {
    /// Degree of the adjoined vector; derived from the family when omitted.
    pub target_degree: Option<u32>,
    /// Required nilindex of the extension (must be n(g) or n(g)+1).
    pub target_nilindex: Option<usize>,
    pub required_charseq: Option<Vec<usize>>,
    pub require_p2: bool,
    pub family: Option<FamilySelector>,
    pub seed: u64,
}

impl ExtensionSpec {
    pub fn degree(d: u32) -> Self {
        ExtensionSpec { target_degree: Some(d), ..Default::default() }
    }

    pub fn family(depth: Depth, ks: Vec<u32>) -> Self {
        ExtensionSpec { family: Some(FamilySelector::new(depth, ks)), ..Default::default() }
    }

    pub fn nilindex(mut self, p: usize) -> Self {
        self.target_nilindex = Some(p);
        self
    }

    pub fn charseq(mut self, c: Vec<usize>) -> Self {
        self.required_charseq = Some(c);
        self
    }

    pub fn p2(mut self) -> Self {
        self.require_p2 = true;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn resolved_degree(&self) -> Result<u32, ExtensionError> {
        match (self.target_degree, &self.family) {
            (Some(d), Some(f)) if d != f.depth.degree() => Err(ExtensionError::InconsistentSpec(
                format!("degree {} but the family selects degree {}", d, f.depth.degree()),
            )),
            (Some(d), _) => Ok(d),
            (None, Some(f)) => Ok(f.depth.degree()),
            (None, None) => {
                Err(ExtensionError::InconsistentSpec("neither degree nor family given".into()))
            }
        }
    }
}

/// Isomorphism invariants used to separate classes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fingerprint {
    pub type_sequence: Vec<usize>,
    pub charseq: Vec<usize>,
    pub h2_dim: usize,
    /// dim C_g(C^p g) for p = 0, 1, …, nilindex−1.
    pub centralizer_dims: Vec<usize>,
    pub derivation_dim: usize,
}

pub fn fingerprint(g: &LieAlgebra, seed: u64) -> Result<Fingerprint, ExtensionError> {
    let s = g.lower_central_series();
    let mut centralizer_dims = Vec::new();
    for t in &s.terms {
        if t.is_zero() {
            break;
        }
        centralizer_dims.push(g.centralizer(t)?.dim());
    }
    Ok(Fingerprint {
        type_sequence: s.type_sequence,
        charseq: g.characteristic_sequence(seed)?.blocks,
        h2_dim: crate::cohomology::h2_dim(g),
        centralizer_dims,
        derivation_dim: g.derivation_dim(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionCertificate {
    /// Grading-compatible support (labels).
    pub support: Vec<(u32, u32)>,
    /// dim of the cocycles on the support.
    pub cocycle_dim: usize,
    /// dim of the coboundaries on the support.
    pub coboundary_dim: usize,
    /// Support pairs forced to vanish in the representative's stratum.
    pub zero_pattern: Vec<(u32, u32)>,
    /// Pair whose coefficient was normalized to 1.
    pub normalized: Option<(u32, u32)>,
    /// Number of strata (or candidates) merged into this class.
    pub merged: usize,
}

#[derive(Clone, Debug)]
pub struct ExtensionClass {
    pub base: LieAlgebra,
    pub cochain: TwoCochain,
    pub extended: LieAlgebra,
    pub new_label: u32,
    pub fingerprint: Fingerprint,
    pub certificate: ExtensionCertificate,
}

/// Smallest positive integer not used as a label.
pub fn next_label(g: &LieAlgebra) -> u32 {
    (1..).find(|l| !g.labels().contains(l)).unwrap()
}

/// [X_i,X_j]_new = [X_i,X_j] + c(X_i,X_j) X_new with X_new central.
pub fn central_extend(g: &LieAlgebra, c: &TwoCochain) -> Result<LieAlgebra, ExtensionError> {
    let n = g.dim();
    if c.dim != n {
        return Err(LinAlgError::LengthMismatch { expected: n, got: c.dim }.into());
    }
    let mut labels = g.labels().to_vec();
    labels.push(next_label(g));
    let mut consts: Vec<_> = g.brackets().map(|(i, j, k, x)| (i, j, k, x.clone())).collect();
    for (&(i, j), x) in &c.coeffs {
        consts.push((i, j, n, x.clone()));
    }
    let h = LieAlgebra::from_positions(labels, &consts);
    let violations = h.jacobi_violations().len();
    if violations > 0 {
        return Err(ExtensionError::NotCocycle { violations });
    }
    Ok(h)
}

/// Same labels and the same labelled structure constants.
pub fn same_constants(a: &LieAlgebra, b: &LieAlgebra) -> bool {
    let key = |g: &LieAlgebra| {
        let mut v: Vec<_> = g.labelled_brackets().into_iter().map(|b| (b.i, b.j, b.k, b.coeff)).collect();
        v.sort();
        v
    };
    let mut la = a.labels().to_vec();
    let mut lb = b.labels().to_vec();
    la.sort_unstable();
    lb.sort_unstable();
    la == lb && key(a) == key(b)
}

/// Solution set {y0 + span K} of A y = b, or None when inconsistent.
fn solve_affine(rows: &[(Vec<Rational>, Rational)], r: usize) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    if rows.is_empty() {
        let basis = (0..r).map(|i| crate::exactla::unit_vec(r, i)).collect();
        return Some((crate::exactla::zero_vec(r), basis));
    }
    let aug: Vec<Vec<Rational>> = rows
        .iter()
        .map(|(a, b)| {
            let mut v = a.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let red = rref(&Matrix::from_rows(r + 1, aug).ok()?);
    let mut y0 = crate::exactla::zero_vec(r);
    for row in red.row_vecs() {
        match row.iter().position(|x| !x.is_zero()) {
            None => {}
            Some(p) if p == r => return None,
            Some(p) => y0[p] = row[r].clone(),
        }
    }
    let a = Matrix::from_rows(r, rows.iter().map(|(a, _)| a.clone()).collect()).ok()?;
    Some((y0, kernel(&a).basis().to_vec()))
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// The coordinate functional is identically zero on {y0 + span K}.
fn vanishes(col: &[Rational], sol: &(Vec<Rational>, Vec<Vec<Rational>>)) -> bool {
    dot(col, &sol.0).is_zero() && sol.1.iter().all(|k| dot(col, k).is_zero())
}

struct Strata<'a> {
    cols: &'a [Vec<Rational>],
    order: &'a [usize],
    r: usize,
    out: Vec<(Vec<usize>, Option<usize>, (Vec<Rational>, Vec<Vec<Rational>>))>,
}

impl Strata<'_> {
    /// Depth-first over zero/nonzero decisions for each coordinate in `order`.
    fn walk(
        &mut self,
        pos: usize,
        rows: &mut Vec<(Vec<Rational>, Rational)>,
        zeros: &mut Vec<usize>,
        nonzero: &mut Vec<usize>,
        lead: Option<usize>,
    ) -> Result<(), ExtensionError> {
        let Some(sol) = solve_affine(rows, self.r) else { return Ok(()) };
        if nonzero.iter().any(|&c| vanishes(&self.cols[c], &sol)) {
            return Ok(());
        }
        if pos == self.order.len() {
            if lead.is_some() {
                if self.out.len() >= MAX_STRATA {
                    return Err(ExtensionError::TooManyStrata(MAX_STRATA));
                }
                self.out.push((zeros.clone(), lead, sol));
            }
            return Ok(());
        }
        let c = self.order[pos];
        let col = self.cols[c].clone();
        // c = 0
        rows.push((col.clone(), Rational::zero()));
        zeros.push(c);
        self.walk(pos + 1, rows, zeros, nonzero, lead)?;
        zeros.pop();
        rows.pop();
        // c ≠ 0; the first nonzero coordinate is normalized to 1
        if !vanishes(&col, &sol) {
            nonzero.push(c);
            if lead.is_none() {
                rows.push((col, Rational::one()));
                self.walk(pos + 1, rows, zeros, nonzero, Some(c))?;
                rows.pop();
            } else {
                self.walk(pos + 1, rows, zeros, nonzero, lead)?;
            }
            nonzero.pop();
        }
        Ok(())
    }
}

/// Enumerates the naturally graded one-dimensional central extensions of g
/// with the adjoined vector in the spec's degree, up to coboundaries,
/// rescaling and fingerprint equivalence. The zero class (split extension)
/// is never reported.
pub fn enumerate_graded_extensions(
    g: &LieAlgebra,
    gr: &Grading,
    spec: &ExtensionSpec,
) -> Result<Vec<ExtensionClass>, ExtensionError> {
    let n = g.dim();
    if gr.degrees.len() != n {
        return Err(GradingError::BlocksDoNotSpan { expected: n, got: gr.degrees.len() }.into());
    }
    let degree = spec.resolved_degree()?;
    let series = g.lower_central_series();
    let n0 = series.nilindex.ok_or(LieError::NotNilpotent(series.terms.last().unwrap().dim()))?;
    if let Some(p) = spec.target_nilindex {
        if p != n0 && p != n0 + 1 {
            return Err(ExtensionError::InconsistentSpec(format!(
                "nilindex {} is neither {} nor {}",
                p,
                n0,
                n0 + 1
            )));
        }
    }
    let labels = g.labels();
    let sums = spec.family.as_ref().map(|f| f.index_sums());
    let support: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| gr.degrees[i] + gr.degrees[j] == degree)
        .filter(|&(i, j)| sums.as_ref().map_or(true, |s| s.contains(&(labels[i] + labels[j]))))
        .collect();
    if support.is_empty() {
        return Ok(Vec::new());
    }
    let s = support.len();
    let to_local = |c: &TwoCochain| support.iter().map(|&(i, j)| c.get(i, j)).collect::<Vec<_>>();

    // coboundaries supported on the grid, in grid coordinates
    let grid = Subspace::span(
        pair_count(n),
        support.iter().map(|&(i, j)| crate::exactla::unit_vec(pair_count(n), pair_index(n, i, j))),
    );
    let b_full = coboundary_space(g).intersect(&grid)?;
    let b_local = Subspace::span(
        s,
        b_full.basis().iter().map(|v| support.iter().map(|&(i, j)| v[pair_index(n, i, j)].clone()).collect()),
    );
    let cocycles = cocycle_space(g, &support);
    let classes = Subspace::span(s, cocycles.iter().map(|c| b_local.reduce(to_local(c))));
    let r = classes.dim();
    if r == 0 {
        return Ok(Vec::new());
    }
    // coordinate functionals on the class parameters y ∈ Q^r
    let cols: Vec<Vec<Rational>> =
        (0..s).map(|c| classes.basis().iter().map(|row| row[c].clone()).collect()).collect();
    let mut order: Vec<usize> = (0..s).filter(|&c| cols[c].iter().any(|x| !x.is_zero())).collect();
    // the conventional lead pair ω1∧ω_top goes first so that it is the normalized one
    let lead = lead_pair(g, gr, &support);
    if let Some(lead) = lead {
        if let Some(p) = order.iter().position(|&c| c == lead) {
            order.remove(p);
            order.insert(0, lead);
        }
    }
    let mut strata = Strata { cols: &cols, order: &order, r, out: Vec::new() };
    strata.walk(0, &mut Vec::new(), &mut Vec::new(), &mut Vec::new(), None)?;

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut candidates = Vec::new();
    for (zeros, lead_norm, sol) in strata.out {
        let nonzero: Vec<usize> = order.iter().copied().filter(|c| !zeros.contains(c)).collect();
        let Some(y) = generic_point(&sol, &cols, &nonzero, &mut rng) else { continue };
        let mut c = TwoCochain::zero(n);
        for (t, &(i, j)) in support.iter().enumerate() {
            c.set(i, j, dot(&cols[t], &y));
        }
        let extended = central_extend(g, &c)?;
        let new_label = *extended.labels().last().unwrap();
        if !passes(&extended, spec, n0)? {
            continue;
        }
        let fp = fingerprint(&extended, spec.seed)?;
        candidates.push(ExtensionClass {
            base: g.clone(),
            cochain: c,
            extended,
            new_label,
            fingerprint: fp,
            certificate: ExtensionCertificate {
                support: (0..s).map(|t| (labels[support[t].0], labels[support[t].1])).collect(),
                cocycle_dim: cocycles.len(),
                coboundary_dim: b_local.dim(),
                zero_pattern: zeros.iter().map(|&t| (labels[support[t].0], labels[support[t].1])).collect(),
                normalized: lead_norm.map(|t| (labels[support[t].0], labels[support[t].1])),
                merged: 1,
            },
        });
    }
    // prefer representatives normalized on the lead pair, then the sparsest
    let lead_labels = lead.map(|t| (labels[support[t].0], labels[support[t].1]));
    candidates.sort_by_key(|c| {
        (c.certificate.normalized != lead_labels, std::cmp::Reverse(c.certificate.zero_pattern.len()))
    });
    Ok(reduce_by_equivalence(candidates))
}

/// (first degree-1 vector, unique top vector) when that pair is in the support.
fn lead_pair(g: &LieAlgebra, gr: &Grading, support: &[(usize, usize)]) -> Option<usize> {
    let first = gr.degrees.iter().position(|&d| d == 1)?;
    let top = gr.top();
    let tops: Vec<usize> = (0..g.dim()).filter(|&i| gr.degrees[i] == top).collect();
    if tops.len() != 1 {
        return None;
    }
    support.iter().position(|&p| p == (first.min(tops[0]), first.max(tops[0])))
}

fn generic_point(
    sol: &(Vec<Rational>, Vec<Vec<Rational>>),
    cols: &[Vec<Rational>],
    nonzero: &[usize],
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Rational>> {
    for attempt in 0..64 {
        let mut y = sol.0.clone();
        for k in &sol.1 {
            // small coefficients first, wider ones if they keep hitting zeros
            let bound = if attempt < 8 { 3 } else { 9 };
            let a = Rational::from_integer(rng.gen_range(-bound..=bound).into());
            for (yi, ki) in y.iter_mut().zip(k) {
                *yi += &a * ki;
            }
        }
        if nonzero.iter().all(|&c| !dot(&cols[c], &y).is_zero()) {
            return Some(y);
        }
    }
    None
}

fn passes(h: &LieAlgebra, spec: &ExtensionSpec, n0: usize) -> Result<bool, ExtensionError> {
    let nil = h.lower_central_series().nilindex;
    match spec.target_nilindex {
        Some(p) if nil != Some(p) => return Ok(false),
        None if nil != Some(n0) && nil != Some(n0 + 1) => return Ok(false),
        _ => {}
    }
    if natural_graded_verdict(h, spec.seed)?.conclusion != GradedConclusion::NaturallyGraded {
        return Ok(false);
    }
    if let Some(cs) = &spec.required_charseq {
        if &h.characteristic_sequence(spec.seed)?.blocks != cs {
            return Ok(false);
        }
    }
    if spec.require_p2 && !h.centralizer_property()?.is_p2() {
        return Ok(false);
    }
    Ok(true)
}

/// Collapses candidates that differ by a coboundary of the base or by a
/// rescaling of the adjoined vector, then merges those with equal
/// fingerprints. The first candidate of each class is kept as representative.
pub fn reduce_by_equivalence(candidates: Vec<ExtensionClass>) -> Vec<ExtensionClass> {
    let mut bases: Vec<(LieAlgebra, Subspace)> = Vec::new();
    let mut seen: Vec<(usize, Vec<Rational>, usize)> = Vec::new();
    let mut by_fp: BTreeMap<(usize, Fingerprint), usize> = BTreeMap::new();
    let mut out: Vec<ExtensionClass> = Vec::new();
    for c in candidates {
        let bi = match bases.iter().position(|(b, _)| *b == c.base) {
            Some(i) => i,
            None => {
                bases.push((c.base.clone(), coboundary_space(&c.base)));
                bases.len() - 1
            }
        };
        let reduced = normalize_leading(&bases[bi].1.reduce(c.cochain.to_dense()));
        if reduced.iter().all(|x| x.is_zero()) {
            continue;
        }
        let target = seen
            .iter()
            .find(|(b, v, _)| *b == bi && *v == reduced)
            .map(|&(_, _, k)| k)
            .or_else(|| by_fp.get(&(bi, c.fingerprint.clone())).copied());
        match target {
            Some(k) => {
                out[k].certificate.merged += c.certificate.merged;
                seen.push((bi, reduced, k));
            }
            None => {
                by_fp.insert((bi, c.fingerprint.clone()), out.len());
                seen.push((bi, reduced, out.len()));
                out.push(c);
            }
        }
    }
    out.sort_by(|a, b| {
        a.certificate.zero_pattern.len().cmp(&b.certificate.zero_pattern.len()).reverse().then_with(
            || a.certificate.normalized.cmp(&b.certificate.normalized),
        )
    });
    out
}

/// One level of a catalog tower.
#[derive(Clone, Debug)]
pub struct TowerStep {
    pub id: ModelId,
    pub algebra: LieAlgebra,
    /// The cocycle adjoining the top vector to the previous level (None at q = 0).
    pub cochain: Option<TwoCochain>,
    /// central_extend(previous, cochain) has exactly the catalog constants.
    pub matches_catalog: bool,
    /// The quotient by the top vector has exactly the previous level's constants.
    pub quotient_matches: bool,
    pub charseq: Vec<usize>,
}

/// Builds g_0, …, g_{q_max} of a tower family, re-deriving each level as a
/// central extension of the previous one.
pub fn extension_tower(id: &ModelId, q_max: u32, seed: u64) -> Result<Vec<TowerStep>, ExtensionError> {
    if !id.family.is_tower() {
        return Err(ExtensionError::NotATower(id.family.name().into()));
    }
    if q_max > 0 {
        ModelId { q: q_max, ..*id }.validate()?;
    }
    let base = make(&tower_base(id))?;
    let mut steps = vec![TowerStep {
        id: tower_base(id),
        charseq: base.algebra.characteristic_sequence(seed)?.blocks,
        algebra: base.algebra,
        cochain: None,
        matches_catalog: true,
        quotient_matches: true,
    }];
    for q in 1..=q_max {
        let qid = ModelId { q, ..*id };
        let prev = &steps.last().unwrap().algebra;
        let new = next_label(prev);
        let forms = adopted_forms(&qid)?;
        let mut c = TwoCochain::zero(prev.dim());
        for (i, j, x) in forms.form(new) {
            let (Some(a), Some(b)) = (prev.position(i), prev.position(j)) else {
                return Err(LieError::UnknownLabel(i.max(j)).into());
            };
            c.set(a, b, x);
        }
        let rebuilt = central_extend(prev, &c)?;
        let catalog = make(&qid)?.algebra;
        let quotient = catalog.quotient_by_basis_vector(new)?;
        steps.push(TowerStep {
            id: qid,
            matches_catalog: same_constants(&rebuilt, &catalog),
            quotient_matches: same_constants(&quotient, prev),
            charseq: catalog.characteristic_sequence(seed)?.blocks,
            algebra: catalog,
            cochain: Some(c),
        });
    }
    Ok(steps)
}

/// Classes of naturally graded filiform algebras of each dimension from
/// `seed.dim()+1` to `max_dim`, grown from `seed` by filiform graded central
/// extensions (the adjoined vector one degree above the top) and merged by
/// fingerprint across parents. Entry `i` holds the classes of dimension
/// `seed.dim() + 1 + i`.
pub fn filiform_chain(seed_algebra: &LieAlgebra, max_dim: usize, seed: u64) -> Result<Vec<Vec<ExtensionClass>>, ExtensionError> {
    let mut levels: Vec<Vec<ExtensionClass>> = Vec::new();
    let mut current = vec![seed_algebra.clone()];
    for _ in seed_algebra.dim() + 1..=max_dim {
        let mut found: Vec<ExtensionClass> = Vec::new();
        for g in &current {
            let (degrees, _) = g.filtration_degrees()?;
            let top = degrees.iter().copied().max().unwrap_or(0);
            let spec = ExtensionSpec::degree(top + 1).nilindex(top as usize + 1).seed(seed);
            for c in enumerate_graded_extensions(g, &Grading { degrees }, &spec)? {
                if !found.iter().any(|f| f.fingerprint == c.fingerprint) {
                    found.push(c);
                }
            }
        }
        current = found.iter().map(|c| c.extended.clone()).collect();
        levels.push(found);
    }
    Ok(levels)
}
