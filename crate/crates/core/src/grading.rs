//! Gradings, the graded algebra associated to the central-series filtration,
//! and certificates for natural gradedness.

use crate::cohomology::h2_dim;
use crate::exactla::{frac, unit_vec, LinAlgError, Rational, Subspace};
use crate::liecore::{LieAlgebra, LieError};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("grading has {got} degrees but the algebra has dimension {expected}")]
    BlocksDoNotSpan { expected: usize, got: usize },
    #[error("degrees must be positive")]
    ZeroDegree,
    #[error("vector is not homogeneous for the grading")]
    NotHomogeneous,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Degrees of the basis vectors (by position); block g_k is spanned by the
/// basis vectors of degree k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Grading {
    pub degrees: Vec<u32>,
}

impl Grading {
    pub fn new(degrees: Vec<u32>) -> Result<Self, GradingError> {
        if degrees.contains(&0) {
            return Err(GradingError::ZeroDegree);
        }
        Ok(Grading { degrees })
    }

    pub fn blocks(&self) -> BTreeMap<u32, Subspace> {
        let n = self.degrees.len();
        let mut by_degree: BTreeMap<u32, Vec<Vec<Rational>>> = BTreeMap::new();
        for (i, &d) in self.degrees.iter().enumerate() {
            by_degree.entry(d).or_default().push(unit_vec(n, i));
        }
        by_degree.into_iter().map(|(d, v)| (d, Subspace::span(n, v))).collect()
    }

    pub fn top(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Degree of a homogeneous coordinate vector.
    pub fn degree_of(&self, v: &[Rational]) -> Result<u32, GradingError> {
        let mut deg = None;
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(self.degrees[i]),
                Some(d) if d != self.degrees[i] => return Err(GradingError::NotHomogeneous),
                _ => {}
            }
        }
        deg.ok_or(GradingError::NotHomogeneous)
    }
}

/// Depth (d−1)/2 of a vector of degree d.
pub fn depth(gr: &Grading, index: usize) -> Rational {
    frac(gr.degrees[index] as i64 - 1, 2)
}

/// Depth of a homogeneous vector.
pub fn depth_of_vector(gr: &Grading, v: &[Rational]) -> Result<Rational, GradingError> {
    Ok(frac(gr.degree_of(v)? as i64 - 1, 2))
}

pub fn is_graded_law(g: &LieAlgebra, gr: &Grading) -> Result<bool, GradingError> {
    if gr.degrees.len() != g.dim() {
        return Err(GradingError::BlocksDoNotSpan { expected: g.dim(), got: gr.degrees.len() });
    }
    let d = &gr.degrees;
    Ok(g.brackets().all(|(i, j, k, _)| d[k] == d[i] + d[j]))
}

/// Basis adapted to C^0 ⊇ C^1 ⊇ …: in each layer the rref rows of C^{k−1}
/// whose pivots are not pivots of C^k. Returns the rows and their degrees.
pub fn adapted_basis(g: &LieAlgebra) -> Result<(Vec<Vec<Rational>>, Vec<u32>), GradingError> {
    let s = g.lower_central_series();
    let nil = s.nilindex.ok_or(LieError::NotNilpotent(s.terms.last().unwrap().dim()))?;
    let mut rows = Vec::new();
    let mut degrees = Vec::new();
    for k in 0..nil {
        for r in s.terms[k].complement_rows(&s.terms[k + 1])? {
            rows.push(r);
            degrees.push(k as u32 + 1);
        }
    }
    Ok((rows, degrees))
}

/// gr(g) in the canonical adapted basis, together with its grading. Labels
/// are kept when the adapted basis consists of the original basis vectors.
pub fn associated_graded(g: &LieAlgebra) -> Result<(LieAlgebra, Grading), GradingError> {
    let (rows, degrees) = adapted_basis(g)?;
    let h = g.change_basis(&rows)?;
    let consts: Vec<_> = h
        .brackets()
        .filter(|&(i, j, k, _)| degrees[k] == degrees[i] + degrees[j])
        .map(|(i, j, k, c)| (i, j, k, c.clone()))
        .collect();
    let labels = unit_labels(g, &rows).unwrap_or_else(|| (1..=g.dim() as u32).collect());
    Ok((LieAlgebra::from_positions(labels, &consts), Grading { degrees }))
}

fn unit_labels(g: &LieAlgebra, rows: &[Vec<Rational>]) -> Option<Vec<u32>> {
    rows.iter()
        .map(|r| {
            let nz: Vec<usize> = (0..r.len()).filter(|&i| !r[i].is_zero()).collect();
            (nz.len() == 1 && r[nz[0]] == Rational::from_integer(1.into()))
                .then(|| g.labels()[nz[0]])
        })
        .collect()
}

/// Invariants compared between g and gr(g).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedInvariants {
    pub type_sequence: Vec<usize>,
    pub charseq: Vec<usize>,
    pub h2_dim: usize,
    pub derivation_dim: usize,
}

pub fn graded_invariants(g: &LieAlgebra, seed: u64) -> Result<GradedInvariants, GradingError> {
    Ok(GradedInvariants {
        type_sequence: g.lower_central_series().type_sequence,
        charseq: g.characteristic_sequence(seed)?.blocks,
        h2_dim: h2_dim(g),
        derivation_dim: g.derivation_dim(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GradedConclusion {
    NaturallyGraded,
    NotNaturallyGraded,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVerdict {
    pub graded_in_given_basis: bool,
    /// False when the given basis had to be re-adapted to the filtration.
    pub basis_was_adapted: bool,
    pub natural_degrees: Grading,
    /// None when not needed (graded in the given basis means g equals gr(g)).
    pub invariants: Option<(GradedInvariants, GradedInvariants)>,
    pub invariants_match: bool,
    pub conclusion: GradedConclusion,
}

/// Certificate-based decision of g ≅ gr(g). A graded law in the
/// filtration-adapted basis certifies yes; differing invariants between g and
/// gr(g) certify no; anything else is inconclusive.
pub fn natural_graded_verdict(g: &LieAlgebra, seed: u64) -> Result<GradedVerdict, GradingError> {
    let (degrees, adapted) = g.filtration_degrees()?;
    let (work, degrees) = if adapted {
        (g.clone(), degrees)
    } else {
        let (rows, degs) = adapted_basis(g)?;
        (g.change_basis(&rows)?, degs)
    };
    let natural_degrees = Grading { degrees };
    let graded = is_graded_law(&work, &natural_degrees)?;
    if graded {
        return Ok(GradedVerdict {
            graded_in_given_basis: adapted,
            basis_was_adapted: adapted,
            natural_degrees,
            invariants: None,
            invariants_match: true,
            conclusion: GradedConclusion::NaturallyGraded,
        });
    }
    let (gr, _) = associated_graded(g)?;
    let a = graded_invariants(g, seed)?;
    let b = graded_invariants(&gr, seed)?;
    let matches = a == b;
    Ok(GradedVerdict {
        graded_in_given_basis: false,
        basis_was_adapted: adapted,
        natural_degrees,
        invariants: Some((a, b)),
        invariants_match: matches,
        conclusion: if matches {
            GradedConclusion::Inconclusive
        } else {
            GradedConclusion::NotNaturallyGraded
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use crate::liecore::Bracket;

    fn alg(labels: &[u32], b: &[(u32, u32, u32, i64)]) -> LieAlgebra {
        let br: Vec<Bracket> =
            b.iter().map(|&(i, j, k, c)| Bracket { i, j, k, coeff: rat(c) }).collect();
        LieAlgebra::from_brackets(labels.to_vec(), &br).unwrap()
    }

    fn non_graded_5() -> LieAlgebra {
        alg(&[1, 2, 3, 4, 5], &[(1, 2, 3, 1), (1, 3, 4, 1), (2, 3, 5, 1), (1, 4, 5, 1)])
    }

    #[test]
    fn graded_law_examples() {
        let h3 = alg(&[1, 2, 3], &[(1, 2, 3, 1)]);
        assert!(!is_graded_law(&h3, &Grading::new(vec![1, 1, 1]).unwrap()).unwrap());
        assert!(is_graded_law(&h3, &Grading::new(vec![1, 1, 2]).unwrap()).unwrap());
        assert!(is_graded_law(&h3, &Grading::new(vec![1, 1]).unwrap()).is_err());
    }

    #[test]
    fn associated_graded_drops_mismatched_terms() {
        let g = non_graded_5();
        assert!(g.jacobi_violations().is_empty());
        let (gr, grading) = associated_graded(&g).unwrap();
        assert_eq!(grading.degrees, vec![1, 1, 2, 3, 4]);
        // [X2,X3] = X5 has degrees 1+2 != 4 and is dropped; [X1,X4] = X5 stays
        assert!(gr.bracket_basis(1, 2).is_empty());
        assert_eq!(gr.bracket_basis(0, 3), &[(4, rat(1))]);
        assert!(is_graded_law(&gr, &grading).unwrap());
        assert_eq!(gr.lower_central_series().type_sequence, g.lower_central_series().type_sequence);
    }

    #[test]
    fn verdict_examples() {
        let v = natural_graded_verdict(&non_graded_5(), 7).unwrap();
        assert!(!v.graded_in_given_basis);
        assert!(!v.invariants_match);
        assert_eq!(v.conclusion, GradedConclusion::NotNaturallyGraded);
        let ab = natural_graded_verdict(&LieAlgebra::abelian(3), 7).unwrap();
        assert_eq!(ab.conclusion, GradedConclusion::NaturallyGraded);
    }

    #[test]
    fn depth_examples() {
        let gr = Grading::new(vec![1, 3, 4]).unwrap();
        assert_eq!(depth(&gr, 0), rat(0));
        assert_eq!(depth(&gr, 1), rat(1));
        assert_eq!(depth(&gr, 2), frac(3, 2));
        let mixed = vec![rat(1), rat(1), rat(0)];
        assert_eq!(depth_of_vector(&gr, &mixed), Err(GradingError::NotHomogeneous));
    }
}
