//! Root systems of the simple types (Bourbaki numbering), height strata, the
//! search for two middle-height roots with a root sum, and the combinatorial
//! centralizer-property check for nilradicals of Borel subalgebras.

use crate::exactla::unit_vec;
use crate::liecore::{BracketWitness, CentralizerReport, LayerCheck, PVariant};
use serde::Serialize;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("invalid root system type '{0}' (expected e.g. A3, B5, E8, G2)")]
    InvalidType(String),
}

/// Coefficients over the simple roots α_1..α_l.
pub type Root = Vec<i32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootType {
    pub letter: char,
    pub rank: usize,
}

impl RootType {
    pub fn new(letter: char, rank: usize) -> Result<Self, RootError> {
        let letter = letter.to_ascii_uppercase();
        let ok = match letter {
            'A' => rank >= 1,
            'B' => rank >= 2,
            'C' => rank >= 3,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if ok {
            Ok(RootType { letter, rank })
        } else {
            Err(RootError::InvalidType(format!("{}{}", letter, rank)))
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

impl FromStr for RootType {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().replace('_', "");
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| RootError::InvalidType(s.clone()))?;
        let rank = chars.as_str().parse().map_err(|_| RootError::InvalidType(s.clone()))?;
        RootType::new(letter, rank)
    }
}

/// Cartan matrix A_ij = 2(α_i,α_j)/(α_j,α_j), Bourbaki numbering.
pub fn cartan_matrix(t: RootType) -> Vec<Vec<i32>> {
    let l = t.rank;
    let mut a = vec![vec![0; l]; l];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i32, aji: i32| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match t.letter {
        'A' | 'B' | 'C' => {
            for i in 0..l - 1 {
                link(i, i + 1, -1, -1);
            }
            if t.letter == 'B' {
                link(l - 2, l - 1, -2, -1);
            } else if t.letter == 'C' {
                link(l - 2, l - 1, -1, -2);
            }
        }
        'D' => {
            for i in 0..l - 2 {
                link(i, i + 1, -1, -1);
            }
            link(l - 3, l - 1, -1, -1);
        }
        'E' => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for i in 2..l - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        'F' => {
            link(0, 1, -1, -1);
            link(1, 2, -2, -1);
            link(2, 3, -1, -1);
        }
        'G' => link(0, 1, -1, -3),
        _ => unreachable!(),
    }
    a
}

pub fn height(r: &[i32]) -> i32 {
    r.iter().sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightStratum {
    pub k: i32,
    pub roots: Vec<Root>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub kind: RootType,
    pub cartan: Vec<Vec<i32>>,
    /// Positive roots sorted by height, then with larger α1, α2, … coefficients first.
    pub positive: Vec<Root>,
    lookup: HashSet<Root>,
}

/// Positive roots by root strings: β + α_i is a root iff q > 0 where
/// q = p − ⟨β, α_i^∨⟩ and p is the largest k with β − kα_i a root.
pub fn build(kind: RootType) -> RootSystem {
    let l = kind.rank;
    let cartan = cartan_matrix(kind);
    let mut all: BTreeSet<Root> = BTreeSet::new();
    let mut layer: Vec<Root> = (0..l).map(|i| unit_root(l, i)).collect();
    all.extend(layer.iter().cloned());
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..l {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i32 = (0..l).map(|j| beta[j] * cartan[j][i]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !all.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next.into_iter().collect();
    }
    let mut positive: Vec<Root> = all.into_iter().collect();
    positive.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
    let lookup = positive.iter().cloned().collect();
    RootSystem { kind, cartan, positive, lookup }
}

fn unit_root(l: usize, i: usize) -> Root {
    let mut r = vec![0; l];
    r[i] = 1;
    r
}

fn add(a: &[i32], b: &[i32]) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.kind.rank
    }

    pub fn is_positive_root(&self, r: &[i32]) -> bool {
        self.lookup.contains(r)
    }

    pub fn highest_root(&self) -> &Root {
        self.positive.last().unwrap()
    }

    pub fn highest_height(&self) -> i32 {
        height(self.highest_root())
    }

    /// Δ(k) for k = 1..ht(δ).
    pub fn strata(&self) -> Vec<HeightStratum> {
        (1..=self.highest_height()).map(|k| HeightStratum { k, roots: self.stratum(k) }).collect()
    }

    pub fn stratum(&self, k: i32) -> Vec<Root> {
        self.positive.iter().filter(|r| height(r) == k).cloned().collect()
    }

    /// δ − α_s as a vector.
    pub fn delta_minus(&self, s: usize) -> Root {
        let mut r = self.highest_root().clone();
        r[s - 1] -= 1;
        r
    }

    /// Names a root relative to δ: "δ", "δ−α_s" or its coefficient vector.
    pub fn describe_relative_to_delta(&self, r: &[i32]) -> SumIdentity {
        let d = self.highest_root();
        if r == d.as_slice() {
            return SumIdentity::Delta;
        }
        let diff: Vec<i32> = d.iter().zip(r).map(|(a, b)| a - b).collect();
        match (diff.iter().all(|&x| x >= 0), diff.iter().filter(|&&x| x != 0).count(), height(&diff)) {
            (true, 1, 1) => SumIdentity::DeltaMinus(diff.iter().position(|&x| x == 1).unwrap() + 1),
            _ => SumIdentity::Other(r.to_vec()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SumIdentity {
    Delta,
    /// δ − α_s (1-based s).
    DeltaMinus(usize),
    Other(Root),
}

impl fmt::Display for SumIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumIdentity::Delta => f.write_str("δ"),
            SumIdentity::DeltaMinus(s) => write!(f, "δ−α{}", s),
            SumIdentity::Other(r) => f.write_str(&format_root(r)),
        }
    }
}

pub fn format_root(r: &[i32]) -> String {
    let terms: Vec<String> = r
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| if c == 1 { format!("α{}", i + 1) } else { format!("{}α{}", c, i + 1) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// The first pair (in root order, see `RootSystem::positive`) of distinct roots
/// in Δ(⌊ht δ/2⌋) whose sum is a positive root.
pub fn proposition1_pair(rs: &RootSystem) -> Option<(Root, Root)> {
    pairs_in_middle(rs).into_iter().next()
}

/// All pairs of distinct roots in Δ(⌊ht δ/2⌋) whose sum is a positive root, in root order.
pub fn pairs_in_middle(rs: &RootSystem) -> Vec<(Root, Root)> {
    let mid = rs.stratum(rs.highest_height() / 2);
    let mut out = Vec::new();
    for (a, x) in mid.iter().enumerate() {
        for y in &mid[a + 1..] {
            if rs.is_positive_root(&add(x, y)) {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

/// The sum identity the classical case analysis states for each type:
/// δ−α_s, or δ itself for A_l with l even.
pub fn stated_identity(kind: RootType) -> Option<SumIdentity> {
    let l = kind.rank;
    Some(match (kind.letter, l) {
        ('A', l) if l % 2 == 0 => SumIdentity::Delta,
        ('A', l) => SumIdentity::DeltaMinus(l),
        ('B', _) | ('D', _) => SumIdentity::DeltaMinus(2),
        ('C', _) => SumIdentity::DeltaMinus(1),
        ('E', 6) => SumIdentity::DeltaMinus(2),
        ('E', 7) => SumIdentity::DeltaMinus(1),
        ('E', 8) => SumIdentity::DeltaMinus(8),
        ('F', _) => SumIdentity::DeltaMinus(1),
        _ => return None,
    })
}

/// The explicit pair (ω1, ω2) written down for each type.
pub fn stated_pair(kind: RootType) -> Option<(Root, Root)> {
    let l = kind.rank;
    let range = |from: usize, to: usize| -> Root {
        (1..=l).map(|i| i32::from(i >= from && i <= to)).collect()
    };
    Some(match kind.letter {
        'A' if l >= 2 => {
            let q = l / 2;
            (range(1, q), range(q + 1, 2 * q))
        }
        'B' => {
            let mut w1 = range(3, l - 1);
            w1[l - 1] = 2;
            (w1, range(1, l - 1))
        }
        'C' => (range(2, l), range(1, l - 1)),
        'D' => (range(3, l), range(1, l - 2)),
        'E' => match l {
            6 => (vec![1, 0, 1, 1, 1, 1], vec![0, 1, 1, 2, 1, 0]),
            7 => (vec![1, 1, 2, 2, 1, 1, 0], vec![0, 1, 1, 2, 2, 1, 1]),
            _ => (vec![1, 2, 2, 3, 3, 2, 1, 0], vec![1, 1, 2, 3, 2, 2, 2, 1]),
        },
        'F' => (vec![1, 2, 2, 0], vec![0, 1, 2, 2]),
        _ => return None,
    })
}

/// Whether the stated pair really lies in Δ(⌊ht δ/2⌋)² with the stated sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatedPairCheck {
    pub kind: RootType,
    pub omega1: Root,
    pub omega2: Root,
    pub omega1_is_root: bool,
    pub omega2_is_root: bool,
    pub heights_match: bool,
    pub sum_is_root: bool,
    pub sum: SumIdentity,
    pub stated: Option<SumIdentity>,
    pub reproduced: bool,
}

pub fn check_stated_pair(rs: &RootSystem) -> Option<StatedPairCheck> {
    let (w1, w2) = stated_pair(rs.kind)?;
    let h = rs.highest_height() / 2;
    let s = add(&w1, &w2);
    let sum = rs.describe_relative_to_delta(&s);
    let stated = stated_identity(rs.kind);
    let (r1, r2) = (rs.is_positive_root(&w1), rs.is_positive_root(&w2));
    let heights_match = height(&w1) == h && height(&w2) == h;
    let sum_is_root = rs.is_positive_root(&s);
    Some(StatedPairCheck {
        kind: rs.kind,
        reproduced: r1 && r2 && heights_match && sum_is_root && stated.as_ref() == Some(&sum),
        omega1: w1,
        omega2: w2,
        omega1_is_root: r1,
        omega2_is_root: r2,
        heights_match,
        sum_is_root,
        sum,
        stated,
    })
}

/// A pair in Δ(⌊ht δ/2⌋)² whose sum is the stated identity, found by search.
pub fn identity_witness(rs: &RootSystem) -> Option<(Root, Root)> {
    let stated = stated_identity(rs.kind)?;
    pairs_in_middle(rs).into_iter().find(|(a, b)| rs.describe_relative_to_delta(&add(a, b)) == stated)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPCheck {
    pub report: CentralizerReport,
    /// (α, β, α+β) for the bracket certifying the variant.
    pub witness_roots: Option<(Root, Root, Root)>,
}

/// (P) for the nilradical n = ⊕ L_α (α > 0), decided on root sums: C^p n is
/// spanned by the roots of height > p, [e_α, e_β] ≠ 0 iff α+β is a root, and
/// the centralizer of a span of root vectors is spanned by root vectors.
/// Vectors in the report are coordinates in the basis of positive roots.
pub fn borel_nilradical_p_check(rs: &RootSystem) -> RootPCheck {
    let n = rs.positive.len();
    let nil = rs.highest_height() as usize;
    let frontier = nil / 2;
    let idx = |r: &Root| rs.positive.iter().position(|x| x == r).unwrap();
    let term = |p: usize| -> Vec<&Root> { rs.positive.iter().filter(|r| height(r) as usize > p).collect() };
    let mut layers = Vec::new();
    for p in 1..nil {
        let cp = term(p);
        let centralizer: Vec<&Root> = rs
            .positive
            .iter()
            .filter(|g| cp.iter().all(|b| !rs.is_positive_root(&add(g, b))))
            .collect();
        layers.push(LayerCheck {
            p,
            dim_c_p: cp.len(),
            dim_centralizer: centralizer.len(),
            centralizer_contains_c_p: cp.iter().all(|r| centralizer.contains(r)),
            expected_contains: p >= frontier,
        });
    }
    let holds_p = layers.iter().all(|l| l.centralizer_contains_c_p == l.expected_contains);
    let first_pair = |a: &[Root], b: &[Root]| {
        a.iter().find_map(|x| {
            b.iter().find_map(|y| {
                let s = add(x, y);
                rs.is_positive_root(&s).then(|| (x.clone(), y.clone(), s))
            })
        })
    };
    let (variant, witness_roots) = if frontier == 0 {
        (PVariant::Neither, None)
    } else {
        let block = rs.stratum(frontier as i32);
        let w: Vec<Root> = term(frontier - 1).into_iter().cloned().collect();
        match first_pair(&block, &block) {
            Some(wit) => (PVariant::P1, Some(wit)),
            None => match first_pair(&w, &w) {
                Some(wit) => (PVariant::P2, Some(wit)),
                None => (PVariant::Neither, None),
            },
        }
    };
    let witnesses = witness_roots
        .iter()
        .map(|(a, b, s)| BracketWitness { x: unit_vec(n, idx(a)), y: unit_vec(n, idx(b)), bracket: unit_vec(n, idx(s)) })
        .collect();
    RootPCheck {
        report: CentralizerReport {
            holds_p,
            variant,
            frontier,
            nilindex: nil,
            layers,
            witnesses,
            frontier_disagrees: nil.saturating_sub(1) / 2 != frontier,
        },
        witness_roots,
    }
}

/// Classical count of positive roots.
pub fn classical_positive_count(kind: RootType) -> usize {
    let l = kind.rank;
    match kind.letter {
        'A' => l * (l + 1) / 2,
        'B' | 'C' => l * l,
        'D' => l * (l - 1),
        'E' => [36, 63, 120][l - 6],
        'F' => 24,
        'G' => 6,
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        build(s.parse().unwrap())
    }

    #[test]
    fn counts_and_heights() {
        for s in ["A1", "A4", "B3", "C4", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let r = rs(s);
            assert_eq!(r.positive.len(), classical_positive_count(r.kind), "{s}");
            let total: usize = r.strata().iter().map(|h| h.roots.len()).sum();
            assert_eq!(total, r.positive.len());
            assert_eq!(r.stratum(1).len(), r.rank());
            // δ dominates every positive root
            let d = r.highest_root();
            assert!(r.positive.iter().all(|x| x.iter().zip(d).all(|(a, b)| a <= b)));
        }
        let expected = [("F4", 11), ("E6", 11), ("E7", 17), ("E8", 29), ("G2", 5), ("B4", 7), ("A5", 5)];
        for (s, h) in expected {
            assert_eq!(rs(s).highest_height(), h, "{s}");
        }
        assert_eq!(rs("G2").highest_root(), &vec![3, 2]);
        assert_eq!(rs("A2").positive, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(rs("B3").stratum(2), vec![vec![1, 1, 0], vec![0, 1, 1]]);
    }

    #[test]
    fn parse_types() {
        assert!("E9".parse::<RootType>().is_err());
        assert!("C2".parse::<RootType>().is_err());
        assert!("Z3".parse::<RootType>().is_err());
        assert_eq!("e_8".parse::<RootType>().unwrap().to_string(), "E8");
    }

    #[test]
    fn pairs() {
        assert_eq!(proposition1_pair(&rs("A4")), Some((vec![1, 1, 0, 0], vec![0, 0, 1, 1])));
        // Δ(2) of B3 is {α1+α2, α2+α3} and their sum is not a root
        assert_eq!(proposition1_pair(&rs("B3")), None);
        assert_eq!(proposition1_pair(&rs("G2")), None);
        let f4 = rs("F4");
        let c = check_stated_pair(&f4).unwrap();
        assert!(c.reproduced);
        assert_eq!(c.sum, SumIdentity::DeltaMinus(1));
        assert!(check_stated_pair(&rs("E8")).unwrap().reproduced);
    }

    #[test]
    fn p_checks() {
        let a3 = borel_nilradical_p_check(&rs("A3"));
        assert!(a3.report.is_p1());
        let g2 = borel_nilradical_p_check(&rs("G2"));
        assert!(!g2.report.is_p1());
        let e6 = borel_nilradical_p_check(&rs("E6"));
        assert!(e6.report.is_p1());
        let (a, b, s) = e6.witness_roots.unwrap();
        assert_eq!(add(&a, &b), s);
    }
}
