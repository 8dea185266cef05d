//! The command layer and the binary: documented examples, exit codes and
//! deterministic JSON round trips.

use nilext::cli::{
    cmd_extend, cmd_model, cmd_roots, cmd_table, cmd_verify, finish, parse_family, ExtendArgs,
    VerifyChecks, EXIT_FAIL, EXIT_OK, EXIT_USAGE,
};
use nilext::document::AlgebraDocument;
use nilext::models::{make, Family, ModelId};
use nilext::tables::{build_table_with, TableNumber};
use std::path::PathBuf;
use std::process::Command;

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nilext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn model_documents() {
    let q = finish(cmd_model("Q:m=4", None));
    assert_eq!(q.exit, EXIT_OK);
    assert_eq!(q.json["dim"], 8);
    // 6 chain brackets [X1,Xi] plus 3 pairing brackets into X8
    assert_eq!(q.json["brackets"].as_array().unwrap().len(), 9);
    let l = finish(cmd_model("L:n=3", None));
    assert_eq!((l.json["dim"].as_u64(), l.json["brackets"].as_array().unwrap().len()), (Some(4), 2));
    let bad = finish(cmd_model("g2:m=9,t=9", None));
    assert_eq!(bad.exit, EXIT_USAGE);
    assert!(bad.text.contains("1 ≤ t ≤ m−2"));
    assert_eq!(finish(cmd_model("g22q:m=4,q=5", None)).exit, EXIT_FAIL);
}

#[test]
fn verify_examples() {
    let ok = finish(cmd_verify("g4:m=4", VerifyChecks::all(), None, 0));
    assert_eq!(ok.exit, EXIT_OK, "{}", ok.text);
    assert!(ok.text.contains("(7,1,1)"));
    let l7 = finish(cmd_verify("L:n=7", VerifyChecks { p2: true, ..Default::default() }, None, 0));
    assert_eq!(l7.exit, EXIT_FAIL);
    assert!(l7.text.contains("neither"));
    assert_eq!(finish(cmd_verify("/no/such/file.json", VerifyChecks::all(), None, 0)).exit, EXIT_USAGE);
}

#[test]
fn broken_jacobi_triple_is_named() {
    let mut doc = AlgebraDocument::from_model(&make(&ModelId::with_m(Family::Q, 4)).unwrap());
    let entry = doc.brackets.iter_mut().find(|b| (b.i, b.j) == (2, 7)).unwrap();
    entry.coeff = "2/1".into();
    let path = temp("broken.json");
    std::fs::write(&path, doc.to_json()).unwrap();
    let out = finish(cmd_verify(path.to_str().unwrap(), VerifyChecks { jacobi: true, ..Default::default() }, None, 0));
    assert_eq!(out.exit, EXIT_FAIL);
    let computed = out.json["checks"][0]["computed"].as_str().unwrap().to_string();
    assert!(computed.starts_with('('), "{computed}");
    let violated: Vec<(u32, u32, u32)> = doc.to_algebra().unwrap().jacobi_violations().iter().map(|d| d.triple).collect();
    let (i, j, k) = violated[0];
    assert!(computed.starts_with(&format!("({i},{j},{k})")));

    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(finish(cmd_verify(path.to_str().unwrap(), VerifyChecks::all(), None, 0)).exit, EXIT_USAGE);
}

#[test]
fn round_trip_reports_are_identical() {
    let path = temp("g21q.json");
    let id = "g21q:m=4,t=1,q=2";
    assert_eq!(finish(cmd_model(id, Some(&path))).exit, EXIT_OK);
    let a = finish(cmd_verify(id, VerifyChecks::all(), None, 3));
    let b = finish(cmd_verify(path.to_str().unwrap(), VerifyChecks::all(), None, 3));
    assert_eq!(a.json["checks"], b.json["checks"]);
    let again = finish(cmd_verify(path.to_str().unwrap(), VerifyChecks::all(), None, 3));
    assert_eq!(serde_json::to_string(&b.json).unwrap(), serde_json::to_string(&again.json).unwrap());
    let reread = AlgebraDocument::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(reread.to_json(), AlgebraDocument::from_model(&make(&id.parse().unwrap()).unwrap()).to_json());
}

#[test]
fn extend_examples() {
    let args = |family: &str| ExtendArgs { family: Some(parse_family(family).unwrap()), nilindex: Some(7), ..Default::default() };
    let one = finish(cmd_extend("Q:m=4", &args("t=2,k=2")));
    assert_eq!(one.json["class_count"], 1);
    let doc: AlgebraDocument = serde_json::from_value(one.json["classes"][0]["document"].clone()).unwrap();
    assert_eq!(doc.dim, 9);
    assert!(doc.to_algebra().unwrap().jacobi_violations().is_empty());
    assert_eq!(finish(cmd_extend("Q:m=4", &args("t=3/2,k=2"))).json["class_count"], 0);
    let s4 = ExtendArgs { degree: Some(7), nilindex: Some(7), p2: true, ..Default::default() };
    assert_eq!(finish(cmd_extend("s:m=4", &s4)).json["class_count"], 2);
    let wrong = ExtendArgs { degree: Some(7), nilindex: Some(8), ..Default::default() };
    assert_eq!(finish(cmd_extend("s:m=4", &wrong)).exit, EXIT_USAGE);
    // a base that is not naturally graded is refused
    assert_eq!(finish(cmd_extend("g5:m=5", &ExtendArgs { degree: Some(10), ..Default::default() })).exit, EXIT_USAGE);
}

#[test]
fn table_examples() {
    let t1 = finish(cmd_table(1, 4..=6, 1..=1, 0));
    assert_eq!(t1.exit, EXIT_OK, "{}", t1.text);
    assert!(t1.text.contains("0 diffs"));
    let t2 = finish(cmd_table(2, 4..=4, 1..=2, 0));
    assert_eq!(t2.exit, EXIT_OK, "{}", t2.text);
    for row in t2.json["rows"].as_array().unwrap() {
        let id: ModelId = row["id"].as_str().unwrap().parse().unwrap();
        if !row["computed"].is_null() {
            assert_eq!(row["computed"]["dim"].as_u64().unwrap() as usize, id.claimed_dim());
        }
    }
    assert_eq!(finish(cmd_table(3, 4..=4, 1..=1, 0)).exit, EXIT_USAGE);
}

#[test]
fn corrupted_catalog_fails_the_table() {
    let report = build_table_with(TableNumber::One, 4..=5, 1..=1, 0, |id| {
        if id.family == Family::G31 {
            // the constructor hands back the t = 1 law instead
            let wrong = make(&ModelId::with(Family::G21, id.m, 1, 0, 0)).map_err(|e| e.to_string())?;
            Ok(wrong.algebra)
        } else {
            make(id).map(|m| m.algebra).map_err(|e| e.to_string())
        }
    });
    assert!(!report.uncovered().is_empty());
    assert!(report.uncovered().iter().all(|(id, _)| id.family == Family::G31));
}

#[test]
fn roots_examples() {
    let e7 = finish(cmd_roots("E7", true, false));
    assert_eq!(e7.json["pair"]["identity"], "δ−α1");
    let g2 = finish(cmd_roots("G2", true, false));
    assert!(g2.json["pair"].is_null());
    assert_eq!(g2.exit, EXIT_OK);
    let b4 = finish(cmd_roots("B4", false, true));
    assert_eq!(b4.json["pcheck"]["variant"], "P1");
    assert_eq!(finish(cmd_roots("Z9", true, true)).exit, EXIT_USAGE);
}

#[test]
fn binary_contract() {
    let bin = env!("CARGO_BIN_EXE_nilext");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let out = run(&["--json", "model", "L:n=3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim"], 4);
    let bad = run(&["model", "g2:m=9,t=9"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("1 ≤ t ≤ m−2"));
    assert_eq!(run(&["verify", "L:n=7", "--p2"]).status.code(), Some(1));
    assert_eq!(run(&["--seed", "5", "verify", "g4:m=4", "--all"]).status.code(), Some(0));
    assert_eq!(run(&["extend", "Q:m=4", "--family", "t=2,k=2", "--nilindex", "7"]).status.code(), Some(0));
    assert_eq!(run(&["table", "1", "--m-range", "4..5"]).status.code(), Some(0));
    assert_eq!(run(&["roots", "E8", "--prop1"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
