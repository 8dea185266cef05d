//! Extension results checked against independently built catalog models.

use nilext::cohomology::{is_cocycle, TwoCochain};
use nilext::exactla::rat;
use nilext::extensions::{central_extend, fingerprint};
use nilext::models::{adopted_forms, catalog, make, printed_variants, Family, ModelId};

#[test]
fn g4_from_q_and_from_l() {
    for m in 4..=6u32 {
        let g4 = fingerprint(&make(&ModelId::with_m(Family::G4, m)).unwrap().algebra, 0).unwrap();
        let q = make(&ModelId::with_m(Family::Q, m)).unwrap().algebra;
        // Σ_{j=2}^{m} (−1)^j φ_{j,2m+1−j}
        let mut c = TwoCochain::zero(q.dim());
        for j in 2..=m {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            c.set(j as usize - 1, (2 * m - j) as usize, rat(sign));
        }
        let h = central_extend(&q, &c).unwrap();
        assert_eq!(fingerprint(&h, 0).unwrap(), g4, "m = {m}");
    }
}

#[test]
fn adopted_top_forms_are_cocycles_of_their_quotients() {
    // each catalog law restricted below its last vector is the quotient, and the
    // last form is a cocycle on it
    for id in catalog(4..=5) {
        let Ok(model) = make(&id) else { continue };
        let g = &model.algebra;
        let forms = adopted_forms(&id).unwrap();
        let top = *g.labels().iter().max().unwrap();
        if g.center().dim() == 0 || !forms.targets().contains(&top) {
            continue;
        }
        let quotient = g.quotient_by_basis_vector(top).unwrap();
        let mut c = TwoCochain::zero(quotient.dim());
        for (i, j, x) in forms.form(top) {
            c.set(quotient.position(i).unwrap(), quotient.position(j).unwrap(), x);
        }
        assert!(is_cocycle(&quotient, &c).unwrap(), "{id}");
    }
}

#[test]
fn every_family_has_a_printed_display() {
    for id in catalog(4..=4) {
        assert!(!printed_variants(&id).unwrap().is_empty(), "{id}");
    }
}
