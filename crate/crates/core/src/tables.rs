//! Regeneration of the two summary tables (dimension, characteristic
//! sequence, type) from the constructed models, diffed against the printed
//! cells and reconciled with the repair report.

use crate::liecore::LieAlgebra;
use crate::models::{make, repair_report, Family, ModelId, RepairKind};
use serde::Serialize;
use std::fmt;
use std::ops::RangeInclusive;

/// Which table: 1 (sequence (2m−1,2,1)) or 2 (the towers).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TableNumber {
    One,
    Two,
}

impl TableNumber {
    pub fn from_number(n: u32) -> Option<Self> {
        match n {
            1 => Some(TableNumber::One),
            2 => Some(TableNumber::Two),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cells {
    pub dim: usize,
    pub charseq: Vec<usize>,
    pub type_sequence: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Column {
    Dim,
    Charseq,
    Type,
    /// The row's model could not be built.
    Model,
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Column::Dim => "dim",
            Column::Charseq => "ch.s.",
            Column::Type => "type",
            Column::Model => "model",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellDiff {
    pub column: Column,
    pub printed: String,
    pub computed: String,
    /// Location of the repair entry accounting for the difference.
    pub covered_by: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub id: ModelId,
    pub printed: Cells,
    pub computed: Option<Cells>,
    pub diffs: Vec<CellDiff>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub table: TableNumber,
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn diff_count(&self) -> usize {
        self.rows.iter().map(|r| r.diffs.len()).sum()
    }

    pub fn uncovered(&self) -> Vec<(&ModelId, &CellDiff)> {
        self.rows
            .iter()
            .flat_map(|r| r.diffs.iter().filter(|d| d.covered_by.is_none()).map(move |d| (&r.id, d)))
            .collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let n = if self.table == TableNumber::One { 1 } else { 2 };
        out.push_str(&format!("Table {n}\n"));
        out.push_str(&format!("{:<22} {:>4} {:<12} {}\n", "algebra", "dim", "ch.s.", "type"));
        for r in &self.rows {
            let (dim, cs, ty) = match &r.computed {
                Some(c) => (c.dim.to_string(), seq(&c.charseq), seq(&c.type_sequence)),
                None => ("-".into(), "-".into(), "-".into()),
            };
            out.push_str(&format!("{:<22} {:>4} {:<12} {}\n", r.id.to_string(), dim, cs, ty));
            for d in &r.diffs {
                let status = match &d.covered_by {
                    Some(loc) => format!("covered by repair entry '{loc}'"),
                    None => "UNCOVERED".into(),
                };
                out.push_str(&format!(
                    "    {} printed {} computed {} [{}]\n",
                    d.column, d.printed, d.computed, status
                ));
            }
        }
        let uncovered = self.uncovered().len();
        out.push_str(&format!(
            "{} rows, {} diffs, {} uncovered\n",
            self.rows.len(),
            self.diff_count(),
            uncovered
        ));
        out
    }
}

fn seq(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Type sequence of the given length: `base` in position 1, 2 at the listed
/// (1-based) positions, 1 elsewhere.
fn pattern(len: usize, base: usize, twos: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut v = vec![1; len];
    v[0] = base;
    for p in twos {
        if (1..=len).contains(&p) {
            v[p - 1] = 2;
        }
    }
    v
}

/// The cells as printed in the tables.
pub fn printed_cells(id: &ModelId) -> Option<Cells> {
    let m = id.m as usize;
    let (t, q) = (id.t as usize, id.q as usize);
    let len = 2 * m - 1;
    let type_sequence = match id.family {
        Family::G1k => pattern(len, 3, [2]),
        Family::G21 => pattern(len, 2, [2 * t + 1, 2 * t + 2]),
        Family::G22 => pattern(len, 2, [3, 4]),
        Family::G31 => pattern(len, 2, [2 * m - 3, 2 * m - 2]),
        Family::G5 => pattern(len, 2, [5, 6]),
        Family::G1kq => pattern(len, 3, 2..=2 + q),
        Family::G21q => pattern(len, 2, 2 * t + 1..=q + 2 * t + 1),
        Family::G22q => pattern(len, 2, 3..=3 + q),
        Family::G5q => pattern(len, 2, 5..=5 + q),
        Family::G311 => pattern(len, 2, len - 2..=len),
        _ => return None,
    };
    let (dim, charseq) = match id.family {
        Family::G311 => (2 * m + 3, vec![2 * m - 1, 3, 1]),
        f if f.is_tower() => (2 * m + 2 + q, vec![2 * m - 1, 2 + q, 1]),
        _ => (2 * m + 2, vec![2 * m - 1, 2, 1]),
    };
    Some(Cells { dim, charseq, type_sequence })
}

/// Rows of a table for the given ranges, restricted to printed parameter ranges.
pub fn table_rows(table: TableNumber, ms: RangeInclusive<u32>, qs: RangeInclusive<u32>) -> Vec<ModelId> {
    let mut out = Vec::new();
    for m in ms.filter(|&m| m >= 4) {
        match table {
            TableNumber::One => {
                out.push(ModelId::with(Family::G1k, m, 0, 0, 0));
                out.push(ModelId::with(Family::G1k, m, 0, 1, 0));
                for t in 1..=m - 2 {
                    out.push(ModelId::with(Family::G21, m, t, 0, 0));
                }
                out.push(ModelId::with_m(Family::G22, m));
                out.push(ModelId::with_m(Family::G31, m));
                out.push(ModelId::with_m(Family::G5, m));
            }
            TableNumber::Two => {
                for q in qs.clone() {
                    for k in 0..=1 {
                        out.push(ModelId::with(Family::G1kq, m, 0, k, q));
                    }
                    for t in 1..=m - 2 {
                        out.push(ModelId::with(Family::G21q, m, t, 0, q));
                    }
                    out.push(ModelId::with(Family::G22q, m, 0, 0, q));
                    out.push(ModelId::with(Family::G5q, m, 0, 0, q));
                }
                out.push(ModelId::with_m(Family::G311, m));
            }
        }
    }
    out.retain(|id| id.validate().is_ok());
    out
}

pub fn computed_cells(g: &LieAlgebra, seed: u64) -> Result<Cells, String> {
    Ok(Cells {
        dim: g.dim(),
        charseq: g.characteristic_sequence(seed).map_err(|e| e.to_string())?.blocks,
        type_sequence: g.lower_central_series().type_sequence,
    })
}

/// Builds the table with the catalog constructors.
pub fn build_table(
    table: TableNumber,
    ms: RangeInclusive<u32>,
    qs: RangeInclusive<u32>,
    seed: u64,
) -> TableReport {
    build_table_with(table, ms, qs, seed, |id| make(id).map(|m| m.algebra).map_err(|e| e.to_string()))
}

/// Builds the table with a caller-supplied constructor (used to inject faults).
pub fn build_table_with(
    table: TableNumber,
    ms: RangeInclusive<u32>,
    qs: RangeInclusive<u32>,
    seed: u64,
    construct: impl Fn(&ModelId) -> Result<LieAlgebra, String>,
) -> TableReport {
    let rows = table_rows(table, ms, qs)
        .into_iter()
        .map(|id| {
            let printed = printed_cells(&id).expect("table rows have printed cells");
            let repairs = repair_report(&id).unwrap_or_default();
            let cover = |kind: RepairKind| {
                repairs.iter().find(|e| e.kind == kind).map(|e| e.location.clone())
            };
            let computed = construct(&id).and_then(|g| computed_cells(&g, seed));
            let mut diffs = Vec::new();
            match &computed {
                Err(e) => diffs.push(CellDiff {
                    column: Column::Model,
                    printed: "law with the printed invariants".into(),
                    computed: e.clone(),
                    covered_by: cover(RepairKind::Unresolved),
                }),
                Ok(c) => {
                    if c.dim != printed.dim {
                        diffs.push(CellDiff {
                            column: Column::Dim,
                            printed: printed.dim.to_string(),
                            computed: c.dim.to_string(),
                            covered_by: None,
                        });
                    }
                    if c.charseq != printed.charseq {
                        diffs.push(CellDiff {
                            column: Column::Charseq,
                            printed: seq(&printed.charseq),
                            computed: seq(&c.charseq),
                            covered_by: None,
                        });
                    }
                    if c.type_sequence != printed.type_sequence {
                        diffs.push(CellDiff {
                            column: Column::Type,
                            printed: seq(&printed.type_sequence),
                            computed: seq(&c.type_sequence),
                            covered_by: cover(RepairKind::TableCell),
                        });
                    }
                }
            }
            TableRow { id, printed, computed: computed.ok(), diffs }
        })
        .collect();
    TableReport { table, rows }
}
