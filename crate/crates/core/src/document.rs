//! The JSON document format for algebras: exact coefficients as "p/q"
//! strings, brackets keyed by labels, optional grading and provenance.

use crate::exactla::{format_rational, parse_rational};
use crate::grading::Grading;
use crate::liecore::{Bracket, LieAlgebra, LieError};
use crate::models::{Model, ModelError, ModelId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version '{0}' (expected \"{SCHEMA_VERSION}\")")]
    Schema(String),
    #[error("dim is {dim} but {labels} labels are given")]
    DimMismatch { dim: usize, labels: usize },
    #[error("bracket entry [X{i}, X{j}] must have i < j")]
    Unordered { i: u32, j: u32 },
    #[error("coefficient '{0}' is not an exact rational")]
    Coefficient(String),
    #[error("grading has {got} degrees for dimension {dim}")]
    GradingLength { dim: usize, got: usize },
    #[error("provenance '{0}' is not a model id")]
    Provenance(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub schema_version: String,
    pub dim: usize,
    pub labels: Vec<u32>,
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl AlgebraDocument {
    /// Brackets are listed in (i, j, k) position order, so equal algebras give
    /// byte-identical documents.
    pub fn from_algebra(g: &LieAlgebra, grading: Option<&Grading>, provenance: Option<&ModelId>) -> Self {
        AlgebraDocument {
            schema_version: SCHEMA_VERSION.into(),
            dim: g.dim(),
            labels: g.labels().to_vec(),
            brackets: g
                .labelled_brackets()
                .into_iter()
                .map(|b| {
                    let (i, j, c) = if b.i < b.j { (b.i, b.j, b.coeff) } else { (b.j, b.i, -b.coeff) };
                    BracketEntry { i, j, k: b.k, coeff: format_rational(&c) }
                })
                .collect(),
            grading: grading.map(|gr| gr.degrees.clone()),
            provenance: provenance.map(|id| id.to_string()),
        }
    }

    pub fn from_model(m: &Model) -> Self {
        Self::from_algebra(&m.algebra, Some(&m.grading), Some(&m.id))
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra, DocumentError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::Schema(self.schema_version.clone()));
        }
        if self.dim != self.labels.len() {
            return Err(DocumentError::DimMismatch { dim: self.dim, labels: self.labels.len() });
        }
        let brackets = self
            .brackets
            .iter()
            .map(|b| {
                if b.i >= b.j {
                    return Err(DocumentError::Unordered { i: b.i, j: b.j });
                }
                let coeff = parse_rational(&b.coeff)
                    .ok_or_else(|| DocumentError::Coefficient(b.coeff.clone()))?;
                Ok(Bracket { i: b.i, j: b.j, k: b.k, coeff })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LieAlgebra::from_brackets(self.labels.clone(), &brackets)?)
    }

    pub fn grading(&self) -> Result<Option<Grading>, DocumentError> {
        match &self.grading {
            None => Ok(None),
            Some(d) if d.len() != self.dim => {
                Err(DocumentError::GradingLength { dim: self.dim, got: d.len() })
            }
            Some(d) => Ok(Some(Grading { degrees: d.clone() })),
        }
    }

    pub fn provenance(&self) -> Result<Option<ModelId>, DocumentError> {
        self.provenance
            .as_deref()
            .map(|s| s.parse().map_err(|_: ModelError| DocumentError::Provenance(s.into())))
            .transpose()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{make, Family};

    #[test]
    fn round_trip_is_lossless() {
        let m = make(&ModelId::with(Family::G21q, 4, 1, 0, 2)).unwrap();
        let doc = AlgebraDocument::from_model(&m);
        let back = AlgebraDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_algebra().unwrap(), m.algebra);
        assert_eq!(back.grading().unwrap(), Some(m.grading));
        assert_eq!(back.provenance().unwrap(), Some(m.id));
    }

    #[test]
    fn rejects_bad_entries() {
        let mut doc = AlgebraDocument::from_model(&make(&ModelId::l(3)).unwrap());
        doc.brackets[0].coeff = "1.5".into();
        assert!(matches!(doc.to_algebra(), Err(DocumentError::Coefficient(_))));
        doc.brackets[0] = BracketEntry { i: 3, j: 1, k: 4, coeff: "1/1".into() };
        assert!(matches!(doc.to_algebra(), Err(DocumentError::Unordered { .. })));
        doc.dim = 9;
        assert!(matches!(doc.to_algebra(), Err(DocumentError::DimMismatch { .. })));
    }
}
