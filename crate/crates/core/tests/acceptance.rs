//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the test
//! harness so every line is printed; exits nonzero when any criterion fails.

mod common;

use nilext::cohomology::h2_dim;
use nilext::extensions::{
    enumerate_graded_extensions, extension_tower, filiform_chain, fingerprint, Depth, ExtensionSpec,
    Fingerprint,
};
use nilext::grading::{natural_graded_verdict, GradedConclusion};
use nilext::liecore::PVariant;
use nilext::models::{
    catalog, make, printed_variants, repair_report, unjustified_divergences, Family, Group, ModelId,
    RepairKind,
};
use nilext::roots::{borel_nilradical_p_check, build, identity_witness, proposition1_pair, RootType};
use nilext::tables::{build_table, TableNumber};
use std::time::Instant;

const SEED: u64 = 0;

struct Outcome {
    pass: bool,
    summary: String,
    failures: Vec<String>,
}

impl Outcome {
    fn from(failures: Vec<String>, summary: String) -> Self {
        Outcome { pass: failures.is_empty(), summary, failures }
    }
}

fn fp(id: &ModelId) -> Fingerprint {
    fingerprint(&make(id).unwrap().algebra, SEED).unwrap()
}

/// Every model in the stated ranges (m = 4..8) is Jacobi-closed, certified
/// naturally graded and has the stated characteristic sequence.
fn catalog_soundness() -> Outcome {
    let ids = catalog(4..=8);
    let mut failures = Vec::new();
    for id in &ids {
        let m = match make(id) {
            Ok(m) => m,
            Err(e) => {
                failures.push(e.to_string());
                continue;
            }
        };
        if !m.algebra.jacobi_violations().is_empty() {
            failures.push(format!("{id}: Jacobi fails"));
        }
        let verdict = natural_graded_verdict(&m.algebra, SEED).unwrap().conclusion;
        if verdict != GradedConclusion::NaturallyGraded {
            failures.push(format!("{id}: {verdict:?}"));
        }
        let cs = m.algebra.characteristic_sequence(SEED).unwrap().blocks;
        if cs != id.claimed_charseq() {
            failures.push(format!("{id}: ch.s. {cs:?} != {:?}", id.claimed_charseq()));
        }
    }
    let n = ids.len();
    Outcome::from(failures, format!("{n} catalog models, m = 4..8"))
}

/// Every model of the three classification groups is P2; Q is P2; L is neither.
fn centralizer_property() -> Outcome {
    let mut failures = Vec::new();
    let (mut count, mut missing) = (0, 0);
    for id in catalog(4..=8) {
        let expected = match id.family.group() {
            Group::Auxiliary => continue,
            Group::Filiform if id.family == Family::L => PVariant::Neither,
            _ => PVariant::P2,
        };
        count += 1;
        match make(&id) {
            Err(e) => {
                missing += 1;
                failures.push(e.to_string());
            }
            Ok(m) => {
                let r = m.algebra.centralizer_property().unwrap();
                let got = if r.holds_p { r.variant } else { PVariant::Neither };
                if got != expected {
                    failures.push(format!("{id}: {got} (expected {expected})"));
                }
            }
        }
    }
    let wrong = failures.len() - missing;
    Outcome::from(
        failures,
        format!("{count} models: {} as stated, {wrong} with another variant, {missing} without a closing law", count - wrong - missing),
    )
}

/// Graded filiform algebras in dims 6..10 grown from L_3: {L, Q} in even
/// dimension, {L} in odd dimension; the Q class is the only P2 one.
fn filiform_dichotomy() -> Outcome {
    let l3 = make(&ModelId::l(3)).unwrap().algebra;
    let levels = filiform_chain(&l3, 10, SEED).unwrap();
    let mut failures = Vec::new();
    for (i, classes) in levels.iter().enumerate() {
        let dim = l3.dim() + 1 + i;
        if dim < 6 {
            continue;
        }
        let mut expected = vec![fp(&ModelId::l(dim as u32 - 1))];
        if dim % 2 == 0 {
            expected.push(fp(&ModelId::with_m(Family::Q, dim as u32 / 2)));
        }
        let mut got: Vec<Fingerprint> = classes.iter().map(|c| c.fingerprint.clone()).collect();
        got.sort();
        expected.sort();
        if got != expected {
            failures.push(format!("dim {dim}: {} classes, not the L/Q fingerprints", got.len()));
        }
        let p2: Vec<bool> =
            classes.iter().map(|c| c.extended.centralizer_property().unwrap().is_p2()).collect();
        let q_fp = (dim % 2 == 0).then(|| fp(&ModelId::with_m(Family::Q, dim as u32 / 2)));
        for (c, is_p2) in classes.iter().zip(p2) {
            if is_p2 != (Some(&c.fingerprint) == q_fp.as_ref()) {
                failures.push(format!("dim {dim}: P2 does not single out the Q class"));
            }
        }
    }
    Outcome::from(failures, "dims 6..10 from L_3".into())
}

/// Half-integer depth (q+1)/2, k = 2 over Q_{2m−1} and L_{2m−1}: no classes.
fn emptiness() -> Outcome {
    let mut failures = Vec::new();
    for m in 4..=6u32 {
        for q in [2u32, 4] {
            for id in [ModelId::with_m(Family::Q, m), ModelId::l(2 * m - 1)] {
                let base = make(&id).unwrap();
                let spec = ExtensionSpec::family(Depth::Half(q + 1), vec![2])
                    .nilindex(2 * m as usize - 1)
                    .seed(SEED);
                let n = enumerate_graded_extensions(&base.algebra, &base.grading, &spec).unwrap().len();
                if n != 0 {
                    failures.push(format!("{id}, q = {q}: {n} classes"));
                }
            }
        }
    }
    Outcome::from(failures, "m = 4..6, q ∈ {2,4}, Q and L bases".into())
}

fn classes(id: &ModelId, spec: ExtensionSpec) -> Vec<Fingerprint> {
    let base = make(id).unwrap();
    enumerate_graded_extensions(&base.algebra, &base.grading, &spec.seed(SEED))
        .unwrap()
        .into_iter()
        .map(|c| c.fingerprint)
        .collect()
}

/// Unique (or, for s_4, exactly two) extensions with the expected fingerprints.
fn uniqueness() -> Outcome {
    let mut failures = Vec::new();
    for m in 4..=6u32 {
        let nil = 2 * m as usize - 1;
        for t in 1..=m - 2 {
            let got = classes(&ModelId::with_m(Family::Q, m), ExtensionSpec::family(Depth::Integer(t), vec![2]).nilindex(nil));
            let want = fp(&ModelId::with(Family::G2, m, t, 0, 0));
            if got != vec![want] {
                failures.push(format!("Q m={m} t={t}: {} classes / fingerprint mismatch", got.len()));
            }
        }
        let got = classes(&ModelId::l(2 * m - 1), ExtensionSpec::family(Depth::Integer(m - 1), vec![2]).nilindex(nil));
        if got != vec![fp(&ModelId::with_m(Family::G4, m))] {
            failures.push(format!("L m={m}: {} classes / fingerprint mismatch", got.len()));
        }
        let got = classes(&ModelId::with_m(Family::S, m), ExtensionSpec::degree(2 * m - 1).nilindex(nil).p2());
        let g3 = fp(&ModelId::with_m(Family::G3, m));
        if m == 4 {
            let mut want = vec![g3, fp(&ModelId::new(Family::G1_42))];
            let mut got = got;
            want.sort();
            got.sort();
            if got != want {
                failures.push(format!("s_4: {} classes (expected g3 and g1_42)", got.len()));
            }
        } else if got != vec![g3] {
            failures.push(format!("s_{m}: {} classes / fingerprint mismatch", got.len()));
        }
    }
    Outcome::from(failures, "m = 4..6".into())
}

/// Each tower level is a central extension of the previous one and the
/// characteristic sequence steps to (2m−1, 2+q, 1).
fn towers() -> Outcome {
    let mut failures = Vec::new();
    let mut levels = 0;
    for m in 4..=5u32 {
        let mut bases = vec![
            ModelId::with(Family::G1kq, m, 0, 0, 0),
            ModelId::with(Family::G1kq, m, 0, 1, 0),
            ModelId::with(Family::G22q, m, 0, 0, 0),
            ModelId::with(Family::G5q, m, 0, 0, 0),
        ];
        bases.extend((1..=m - 2).map(|t| ModelId::with(Family::G21q, m, t, 0, 0)));
        for id in bases {
            let bound = (1..=2 * m).take_while(|&q| ModelId { q, ..id }.validate().is_ok()).last().unwrap_or(0);
            let q_max = bound.min(4);
            for q in 1..=q_max {
                levels += 1;
                let qid = ModelId { q, ..id };
                match extension_tower(&qid, q, SEED) {
                    Err(e) => failures.push(format!("{qid}: {e}")),
                    Ok(steps) => {
                        let top = steps.last().unwrap();
                        if !top.matches_catalog || !top.quotient_matches {
                            failures.push(format!("{qid}: quotient differs from level q−1"));
                        }
                        let want = vec![2 * m as usize - 1, 2 + q as usize, 1];
                        if top.charseq != want {
                            failures.push(format!("{qid}: ch.s. {:?}", top.charseq));
                        }
                    }
                }
            }
        }
    }
    Outcome::from(failures, format!("{levels} tower levels, m = 4..5, q ≤ min(bound, 4)"))
}

/// Every dim / ch.s. / type cell of both tables is reproduced.
fn tables() -> Outcome {
    let mut failures = Vec::new();
    let t1 = build_table(TableNumber::One, 4..=7, 1..=1, SEED);
    let t2 = build_table(TableNumber::Two, 4..=5, 1..=3, SEED);
    let mut uncovered = 0;
    for t in [&t1, &t2] {
        uncovered += t.uncovered().len();
        for r in &t.rows {
            for d in &r.diffs {
                failures.push(format!("{} {}: printed {} computed {}", r.id, d.column, d.printed, d.computed));
            }
        }
    }
    let summary = format!(
        "{} + {} rows, {} diffs ({} not covered by the repair report)",
        t1.rows.len(),
        t2.rows.len(),
        failures.len(),
        uncovered
    );
    Outcome::from(failures, summary)
}

/// Middle-height pairs with the stated sum identities; P1 for every type but G2.
fn roots() -> Outcome {
    let mut kinds: Vec<String> = Vec::new();
    kinds.extend((2..=8).map(|l| format!("A{l}")));
    kinds.extend((2..=8).map(|l| format!("B{l}")));
    kinds.extend((3..=8).map(|l| format!("C{l}")));
    kinds.extend((4..=8).map(|l| format!("D{l}")));
    kinds.extend(["E6", "E7", "E8", "F4"].map(String::from));
    let mut failures = Vec::new();
    for k in &kinds {
        let rs = build(k.parse::<RootType>().unwrap());
        if proposition1_pair(&rs).is_none() {
            failures.push(format!("{k}: no pair"));
        } else if identity_witness(&rs).is_none() {
            failures.push(format!("{k}: stated sum identity not attained"));
        }
        let r = borel_nilradical_p_check(&rs).report;
        if !r.is_p1() {
            failures.push(format!("{k}: {}", r.variant));
        }
    }
    let g2 = build("G2".parse().unwrap());
    if proposition1_pair(&g2).is_some() {
        failures.push("G2: unexpected pair".into());
    }
    if borel_nilradical_p_check(&g2).report.is_p1() {
        failures.push("G2: P1".into());
    }
    Outcome::from(failures, format!("{} types plus G2", kinds.len()))
}

/// h2_dim agrees with the brute-force cocycle system on the small corpus.
fn cohomology_oracle() -> Outcome {
    let mut corpus: Vec<(String, nilext::liecore::LieAlgebra)> = catalog(3..=8)
        .into_iter()
        .chain([ModelId::l(3), ModelId::l(4)])
        .filter_map(|id| make(&id).ok().map(|m| (id.to_string(), m.algebra)))
        .filter(|(_, g)| g.dim() <= 6)
        .collect();
    for s in 0..50u64 {
        let start = 2 + (s % 3) as usize;
        let dim = 4 + (s % 3) as usize;
        corpus.push((format!("random #{s}"), common::random_law(1000 + s, start, dim)));
    }
    let mut failures = Vec::new();
    for (name, g) in &corpus {
        let (a, b) = (h2_dim(g), common::brute_h2(g));
        if a != b {
            failures.push(format!("{name}: h2_dim {a}, brute force {b}"));
        }
    }
    Outcome::from(failures, format!("{} algebras of dim ≤ 6", corpus.len()))
}

/// Every divergence between a printed display and the adopted law is in the
/// repair report with a justification, and every entry describes a real
/// divergence whose adopted side closes.
fn repair_ledger() -> Outcome {
    let mut failures = Vec::new();
    let ids = catalog(4..=8);
    for id in &ids {
        failures.extend(unjustified_divergences(id).unwrap());
        let report = repair_report(id).unwrap();
        for v in printed_variants(id).unwrap() {
            let adopted = nilext::models::adopted_forms(id).unwrap();
            for k in nilext::models::form_diffs(&v.forms, &adopted) {
                let loc = format!("dω{k}");
                if !report.iter().any(|e| e.location == loc && e.source == v.source) {
                    failures.push(format!("{id}: {loc} ({}) diverges without an entry", v.source));
                }
            }
        }
        for e in report.iter().filter(|e| e.kind == RepairKind::Coefficient) {
            if e.printed_variant == e.adopted_variant {
                failures.push(format!("{id}: stale entry at {}", e.location));
            }
            if let Some(c) = &e.certificate {
                if make(id).is_ok() && c.adopted_violations != 0 {
                    failures.push(format!("{id}: adopted law at {} does not close", e.location));
                }
            }
        }
    }
    Outcome::from(failures, format!("{} catalog ids", ids.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("catalog soundness", catalog_soundness),
        ("centralizer property", centralizer_property),
        ("filiform dichotomy", filiform_dichotomy),
        ("emptiness results", emptiness),
        ("uniqueness results", uniqueness),
        ("towers", towers),
        ("tables", tables),
        ("roots", roots),
        ("cohomology oracle equivalence", cohomology_oracle),
        ("repair ledger completeness", repair_ledger),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "criterion {:>2} {:<30} {}  {} [{:.1}s]",
            n + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.summary,
            secs
        );
        for f in o.failures.iter().take(12) {
            println!("      {f}");
        }
        if o.failures.len() > 12 {
            println!("      … {} more", o.failures.len() - 12);
        }
        if !o.pass {
            failed += 1;
        }
    }
    println!("{} of 10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
