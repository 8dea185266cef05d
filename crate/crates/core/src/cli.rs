//! Command implementations behind the `nilext` binary. Each command returns
//! its human-readable text, a JSON value and an exit code (0 success,
//! 1 verification failure, 2 usage or parse error), so they can be driven
//! from tests without a process boundary.

use crate::document::{AlgebraDocument, DocumentError};
use crate::exactla::format_rational;
use crate::extensions::{
    enumerate_graded_extensions, Depth, ExtensionError, ExtensionSpec, FamilySelector,
};
use crate::grading::{natural_graded_verdict, GradedConclusion, Grading};
use crate::liecore::{LieAlgebra, PVariant};
use crate::models::{make, ModelError, ModelId};
use crate::roots::{
    borel_nilradical_p_check, build, check_stated_pair, format_root, proposition1_pair,
    stated_identity, RootError, RootType,
};
use crate::tables::{build_table, TableNumber};
use serde::Serialize;
use serde_json::{json, Value};
use std::ops::RangeInclusive;
use std::path::Path;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            // an in-range cell without a closing law is a failed check, not a usage error
            CliError::Model(ModelError::NoClosedLaw { .. }) => EXIT_FAIL,
            CliError::Extension(ExtensionError::Model(ModelError::NoClosedLaw { .. })) => EXIT_FAIL,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommandOutput {
    pub text: String,
    pub json: Value,
    pub exit: i32,
}

impl CommandOutput {
    pub fn from_error(e: &CliError) -> Self {
        CommandOutput {
            text: format!("error: {e}\n"),
            json: json!({ "error": e.to_string(), "exit": e.exit_code() }),
            exit: e.exit_code(),
        }
    }
}

/// An algebra read from a model id or a document file.
#[derive(Clone, Debug)]
pub struct Source {
    pub name: String,
    pub algebra: LieAlgebra,
    pub grading: Option<Grading>,
    pub id: Option<ModelId>,
}

/// Resolves a model id ("Q:m=4") or the path of a JSON document.
pub fn load_source(s: &str) -> Result<Source, CliError> {
    match s.parse::<ModelId>() {
        Ok(id) => {
            let m = make(&id)?;
            Ok(Source { name: id.to_string(), algebra: m.algebra, grading: Some(m.grading), id: Some(id) })
        }
        Err(e) if !Path::new(s).is_file() => Err(e.into()),
        Err(_) => {
            let text = std::fs::read_to_string(s)
                .map_err(|source| CliError::Io { path: s.into(), source })?;
            let doc = AlgebraDocument::from_json(&text)?;
            Ok(Source {
                name: s.to_string(),
                algebra: doc.to_algebra()?,
                grading: doc.grading()?,
                id: doc.provenance()?,
            })
        }
    }
}

fn seq(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// `model`: builds the catalog algebra and writes (or prints) its document.
pub fn cmd_model(id: &str, out: Option<&Path>) -> Result<CommandOutput, CliError> {
    let id: ModelId = id.parse()?;
    let m = make(&id)?;
    let doc = AlgebraDocument::from_model(&m);
    let json_text = doc.to_json();
    let text = match out {
        Some(path) => {
            std::fs::write(path, format!("{json_text}\n"))
                .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            format!(
                "{}: dim {}, {} bracket entries, written to {}\n",
                id,
                doc.dim,
                doc.brackets.len(),
                path.display()
            )
        }
        None => format!("{json_text}\n"),
    };
    Ok(CommandOutput { text, json: serde_json::to_value(&doc).expect("serializable"), exit: EXIT_OK })
}

/// Checks selected by `verify`; all of them when none is set.
#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyChecks {
    pub jacobi: bool,
    pub charseq: bool,
    pub graded: bool,
    pub p2: bool,
}

impl VerifyChecks {
    pub fn all() -> Self {
        VerifyChecks { jacobi: true, charseq: true, graded: true, p2: true }
    }

    fn resolved(self) -> Self {
        if self.jacobi || self.charseq || self.graded || self.p2 {
            self
        } else {
            Self::all()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub source: String,
    pub dim: usize,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn render(&self) -> String {
        let mut out = format!("{} (dim {})\n", self.source, self.dim);
        for c in &self.checks {
            out.push_str(&format!(
                "  {:<8} expected {:<24} computed {:<24} {}\n",
                c.name,
                c.expected,
                c.computed,
                if c.pass { "PASS" } else { "FAIL" }
            ));
        }
        out.push_str(if self.pass { "all checks pass\n" } else { "verification FAILED\n" });
        out
    }
}

/// Runs the selected invariant checks. The expected characteristic sequence
/// comes from `expect_charseq`, else from the model id (or document
/// provenance); without either the check only reports the computed value.
pub fn verify_source(src: &Source, checks: VerifyChecks, expect_charseq: Option<Vec<usize>>, seed: u64) -> VerifyReport {
    let checks = checks.resolved();
    let g = &src.algebra;
    let mut results = Vec::new();
    if checks.jacobi {
        let v = g.jacobi_violations();
        let computed = match v.first() {
            None => "none".to_string(),
            Some(d) => {
                let (i, j, k) = d.triple;
                if v.len() == 1 { format!("({i},{j},{k})") } else { format!("({i},{j},{k}) +{} more", v.len() - 1) }
            }
        };
        results.push(CheckResult {
            name: "jacobi".into(),
            expected: "no violated triple".into(),
            computed,
            pass: v.is_empty(),
        });
    }
    if checks.charseq {
        let expected = expect_charseq.or_else(|| src.id.map(|id| id.claimed_charseq()));
        let (computed, value) = match g.characteristic_sequence(seed) {
            Ok(c) => (seq(&c.blocks), Some(c.blocks)),
            Err(e) => (e.to_string(), None),
        };
        results.push(CheckResult {
            name: "charseq".into(),
            expected: expected.as_deref().map(seq).unwrap_or_else(|| "(not stated)".into()),
            pass: value.is_some() && expected.as_ref().map_or(true, |e| Some(e) == value.as_ref()),
            computed,
        });
    }
    if checks.graded {
        let (computed, pass) = match natural_graded_verdict(g, seed) {
            Ok(v) => (format!("{:?}", v.conclusion), v.conclusion == GradedConclusion::NaturallyGraded),
            Err(e) => (e.to_string(), false),
        };
        results.push(CheckResult { name: "graded".into(), expected: "NaturallyGraded".into(), computed, pass });
    }
    if checks.p2 {
        let (computed, pass) = match g.centralizer_property() {
            Ok(r) if !r.holds_p => (format!("(P) fails ({})", r.variant), false),
            Ok(r) => (r.variant.to_string(), r.variant == PVariant::P2),
            Err(e) => (e.to_string(), false),
        };
        results.push(CheckResult { name: "p2".into(), expected: "P2".into(), computed, pass });
    }
    VerifyReport {
        source: src.name.clone(),
        dim: g.dim(),
        pass: results.iter().all(|c| c.pass),
        checks: results,
    }
}

/// `verify`: exit 0 iff every selected check passes.
pub fn cmd_verify(
    source: &str,
    checks: VerifyChecks,
    expect_charseq: Option<Vec<usize>>,
    seed: u64,
) -> Result<CommandOutput, CliError> {
    let src = match load_source(source) {
        Ok(s) => s,
        Err(e) if e.exit_code() == EXIT_FAIL => {
            let report = VerifyReport {
                source: source.into(),
                dim: 0,
                checks: vec![CheckResult {
                    name: "model".into(),
                    expected: "Jacobi-closed law".into(),
                    computed: e.to_string(),
                    pass: false,
                }],
                pass: false,
            };
            return Ok(CommandOutput {
                text: report.render(),
                json: serde_json::to_value(&report).expect("serializable"),
                exit: EXIT_FAIL,
            });
        }
        Err(e) => return Err(e),
    };
    let report = verify_source(&src, checks, expect_charseq, seed);
    Ok(CommandOutput {
        text: report.render(),
        json: serde_json::to_value(&report).expect("serializable"),
        exit: if report.pass { EXIT_OK } else { EXIT_FAIL },
    })
}

/// Parses "t=2,k=2" or "t=3/2,k=2,4" (half-integer depth t/2, t odd).
pub fn parse_family(s: &str) -> Result<FamilySelector, CliError> {
    let bad = || CliError::Usage(format!("bad family '{s}' (expected e.g. \"t=2,k=2\" or \"t=3/2,k=2,4\")"));
    let mut depth = None;
    let mut ks = Vec::new();
    let mut in_k = false;
    for part in s.split(',').map(str::trim) {
        if let Some(v) = part.strip_prefix("t=") {
            depth = Some(match v.split_once('/') {
                Some((num, "2")) => {
                    let t: u32 = num.trim().parse().map_err(|_| bad())?;
                    if t % 2 == 0 {
                        Depth::Integer(t / 2)
                    } else {
                        Depth::Half(t)
                    }
                }
                Some(_) => return Err(bad()),
                None => Depth::Integer(v.parse().map_err(|_| bad())?),
            });
        } else if let Some(v) = part.strip_prefix("k=") {
            ks.push(v.parse().map_err(|_| bad())?);
            in_k = true;
        } else if in_k {
            ks.push(part.parse().map_err(|_| bad())?);
        } else {
            return Err(bad());
        }
    }
    match depth {
        Some(d) if !ks.is_empty() => Ok(FamilySelector::new(d, ks)),
        _ => Err(bad()),
    }
}

/// Parses "7,1,1" or "(7,1,1)".
pub fn parse_sequence(s: &str) -> Result<Vec<usize>, CliError> {
    s.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("bad sequence '{s}'"))))
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct ExtendArgs {
    pub degree: Option<u32>,
    pub family: Option<FamilySelector>,
    pub nilindex: Option<usize>,
    pub p2: bool,
    pub charseq: Option<Vec<usize>>,
    pub seed: u64,
}

/// `extend`: one document per class of graded central extensions.
pub fn cmd_extend(base: &str, args: &ExtendArgs) -> Result<CommandOutput, CliError> {
    let src = load_source(base)?;
    let g = &src.algebra;
    let verdict = natural_graded_verdict(g, args.seed).map_err(ExtensionError::from)?;
    if verdict.conclusion != GradedConclusion::NaturallyGraded || !verdict.basis_was_adapted {
        return Err(CliError::Usage(format!(
            "base {} must be naturally graded in a filtration-adapted basis ({:?})",
            src.name, verdict.conclusion
        )));
    }
    let grading = src.grading.clone().unwrap_or(verdict.natural_degrees);
    let mut spec = ExtensionSpec {
        target_degree: args.degree,
        family: args.family.clone(),
        ..Default::default()
    }
    .seed(args.seed);
    if let Some(p) = args.nilindex {
        spec = spec.nilindex(p);
    }
    if let Some(c) = &args.charseq {
        spec = spec.charseq(c.clone());
    }
    if args.p2 {
        spec = spec.p2();
    }
    let classes = enumerate_graded_extensions(g, &grading, &spec)?;
    let mut text = format!("{}: {} class(es)\n", src.name, classes.len());
    let mut items = Vec::new();
    for (n, c) in classes.iter().enumerate() {
        let degree = spec.target_degree.or(spec.family.as_ref().map(|f| f.depth.degree())).unwrap_or(0);
        let mut degrees = grading.degrees.clone();
        degrees.push(degree);
        let doc = AlgebraDocument::from_algebra(&c.extended, Some(&Grading { degrees }), None);
        let cochain = c.cochain.display_with(g.labels());
        text.push_str(&format!(
            "class {}: X{} via {}\n  type {} ch.s. {} h2 {} der {}\n",
            n + 1,
            c.new_label,
            cochain,
            seq(&c.fingerprint.type_sequence),
            seq(&c.fingerprint.charseq),
            c.fingerprint.h2_dim,
            c.fingerprint.derivation_dim
        ));
        let coeffs: Vec<Value> = c
            .cochain
            .coeffs
            .iter()
            .map(|((i, j), a)| json!({ "i": g.labels()[*i], "j": g.labels()[*j], "coeff": format_rational(a) }))
            .collect();
        items.push(json!({
            "document": doc,
            "new_label": c.new_label,
            "cochain": coeffs,
            "fingerprint": c.fingerprint,
            "certificate": c.certificate,
        }));
    }
    Ok(CommandOutput {
        text,
        json: json!({ "base": src.name, "class_count": classes.len(), "classes": items }),
        exit: EXIT_OK,
    })
}

/// `table`: regenerates a table; exit 1 on a diff no repair entry covers.
pub fn cmd_table(
    n: u32,
    ms: RangeInclusive<u32>,
    qs: RangeInclusive<u32>,
    seed: u64,
) -> Result<CommandOutput, CliError> {
    let table = TableNumber::from_number(n).ok_or_else(|| CliError::Usage(format!("no table {n} (1 or 2)")))?;
    if *ms.start() < 4 {
        return Err(CliError::Usage("table rows require m ≥ 4".into()));
    }
    if table == TableNumber::Two && *qs.start() < 1 {
        return Err(CliError::Usage("tower rows require q ≥ 1".into()));
    }
    let report = build_table(table, ms, qs, seed);
    Ok(CommandOutput {
        text: report.render(),
        exit: if report.uncovered().is_empty() { EXIT_OK } else { EXIT_FAIL },
        json: serde_json::to_value(&report).expect("serializable"),
    })
}

/// `roots`: the middle-height pair and/or the (P) check for the Borel
/// nilradical. Exit 1 when the result contradicts the stated claim for the type.
pub fn cmd_roots(kind: &str, prop1: bool, pcheck: bool) -> Result<CommandOutput, CliError> {
    let kind: RootType = kind.parse()?;
    let rs = build(kind);
    let (prop1, pcheck) = if prop1 || pcheck { (prop1, pcheck) } else { (true, true) };
    let mut text = format!(
        "{}: {} positive roots, δ = {} (height {})\n",
        kind,
        rs.positive.len(),
        format_root(rs.highest_root()),
        rs.highest_height()
    );
    let mut out = serde_json::Map::new();
    out.insert("type".into(), json!(kind.to_string()));
    let mut ok = true;
    if prop1 {
        let stated = stated_identity(kind);
        match proposition1_pair(&rs) {
            Some((a, b)) => {
                let sum: Vec<i32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                let ident = rs.describe_relative_to_delta(&sum);
                text.push_str(&format!(
                    "pair in height {}: ω1 = {}, ω2 = {}, ω1+ω2 = {}\n",
                    rs.highest_height() / 2,
                    format_root(&a),
                    format_root(&b),
                    ident
                ));
                out.insert(
                    "pair".into(),
                    json!({ "omega1": a, "omega2": b, "sum": sum, "identity": ident.to_string() }),
                );
            }
            None => {
                text.push_str("pair: none\n");
                out.insert("pair".into(), Value::Null);
                ok &= stated.is_none();
            }
        }
        if let Some(check) = check_stated_pair(&rs) {
            text.push_str(&format!(
                "stated pair {} + {} = {} (stated {}): {}\n",
                format_root(&check.omega1),
                format_root(&check.omega2),
                check.sum,
                check.stated.as_ref().map_or("-".into(), |s| s.to_string()),
                if check.reproduced { "reproduced" } else { "NOT reproduced" }
            ));
            out.insert("stated_pair".into(), serde_json::to_value(&check).expect("serializable"));
        }
    }
    if pcheck {
        let r = borel_nilradical_p_check(&rs);
        let variant = if r.report.holds_p { r.report.variant.to_string() } else { "(P) fails".into() };
        text.push_str(&format!(
            "centralizer property: {} (nilindex {}, frontier {})\n",
            variant, r.report.nilindex, r.report.frontier
        ));
        if let Some((a, b, s)) = &r.witness_roots {
            text.push_str(&format!("  witness: {} + {} = {}\n", format_root(a), format_root(b), format_root(s)));
        }
        let expect_p1 = kind.letter != 'G';
        ok &= r.report.is_p1() == expect_p1;
        out.insert(
            "pcheck".into(),
            json!({
                "holds_p": r.report.holds_p,
                "variant": r.report.variant,
                "nilindex": r.report.nilindex,
                "frontier": r.report.frontier,
                "layers": r.report.layers,
                "witness": r.witness_roots,
            }),
        );
    }
    out.insert("consistent_with_stated".into(), json!(ok));
    Ok(CommandOutput { text, json: Value::Object(out), exit: if ok { EXIT_OK } else { EXIT_FAIL } })
}

/// Runs a command result into an output, mapping errors to their exit code.
pub fn finish(r: Result<CommandOutput, CliError>) -> CommandOutput {
    r.unwrap_or_else(|e| CommandOutput::from_error(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_grammar() {
        let f = parse_family("t=2,k=2").unwrap();
        assert_eq!((f.depth, f.ks), (Depth::Integer(2), vec![2]));
        let f = parse_family("t=3/2,k=2,4").unwrap();
        assert_eq!((f.depth, f.ks), (Depth::Half(3), vec![2, 4]));
        assert!(parse_family("k=2").is_err());
        assert!(parse_family("t=1/3,k=2").is_err());
        assert_eq!(parse_sequence("(7,1,1)").unwrap(), vec![7, 1, 1]);
    }

    #[test]
    fn model_exit_codes() {
        assert_eq!(finish(cmd_model("L:n=3", None)).exit, EXIT_OK);
        let bad = finish(cmd_model("g2:m=9,t=9", None));
        assert_eq!(bad.exit, EXIT_USAGE);
        assert!(bad.text.contains("1 ≤ t ≤ m−2"));
        assert_eq!(finish(cmd_model("nope", None)).exit, EXIT_USAGE);
    }
}
