//! Property tests for the exact linear algebra and for structural invariants
//! of random nilpotent laws.

mod common;

use nilext::cohomology::{h2_dim, is_cocycle, TwoCochain};
use nilext::document::AlgebraDocument;
use nilext::exactla::{kernel, rat, rref, Matrix, Rational, Subspace};
use nilext::extensions::central_extend;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        let data = v.chunks(cols).map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Matrix::from_rows(cols, data).unwrap()
    })
}

fn vectors(n: usize, count: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), 0..=count)
        .prop_map(|vs| vs.into_iter().map(|v| v.into_iter().map(rat).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))) {
        let once = rref(&m);
        prop_assert_eq!(rref(&once), once.clone());
        prop_assert_eq!(once.rank(), m.rank());
    }

    #[test]
    fn rank_nullity(m in (1usize..6, 1usize..7).prop_flat_map(|(r, c)| matrix(r, c))) {
        let k = kernel(&m);
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        for v in k.basis() {
            prop_assert!(m.apply(v).unwrap().iter().all(|x| *x == rat(0)));
        }
    }

    #[test]
    fn dimension_formula_for_subspaces(a in vectors(5, 4), b in vectors(5, 4)) {
        let (u, w) = (Subspace::span(5, a), Subspace::span(5, b));
        let sum = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(meet.is_subspace_of(&u).unwrap() && meet.is_subspace_of(&w).unwrap());
    }

    #[test]
    fn random_laws_are_lie_and_nilpotent(seed in 0u64..10_000, start in 2usize..4, extra in 1usize..4) {
        let g = common::random_law(seed, start, start + extra);
        prop_assert!(g.jacobi_violations().is_empty());
        for (i, j, k, c) in g.brackets() {
            prop_assert_eq!(g.bracket_basis(j, i).iter().find(|(p, _)| *p == k).map(|(_, x)| x.clone()), Some(-c.clone()));
        }
        let s = g.lower_central_series();
        prop_assert!(s.nilindex.is_some());
        prop_assert_eq!(s.type_sequence.iter().sum::<usize>(), g.dim());
        let is_filiform_type = s.type_sequence.len() + 1 == g.dim()
            && s.type_sequence[0] == 2
            && s.type_sequence[1..].iter().all(|&p| p == 1);
        prop_assert_eq!(g.is_filiform().unwrap(), is_filiform_type);
    }

    #[test]
    fn h2_matches_brute_force(seed in 0u64..10_000, start in 2usize..4, extra in 1usize..3) {
        let g = common::random_law(seed, start, start + extra);
        prop_assert_eq!(h2_dim(&g), common::brute_h2(&g));
    }

    #[test]
    fn coboundaries_are_cocycles(seed in 0u64..10_000, target in 0usize..5) {
        let g = common::random_law(seed, 2, 5);
        // θ∘[·,·] for θ the dual of basis vector `target`
        let mut c = TwoCochain::zero(g.dim());
        for (i, j, k, x) in g.brackets() {
            if k == target {
                c.set(i, j, x.clone());
            }
        }
        prop_assert!(is_cocycle(&g, &c).unwrap());
        let h = central_extend(&g, &c).unwrap();
        prop_assert_eq!(h.dim(), g.dim() + 1);
    }

    #[test]
    fn documents_round_trip(seed in 0u64..10_000) {
        let g = common::random_law(seed, 3, 6);
        let doc = AlgebraDocument::from_algebra(&g, None, None);
        let back = AlgebraDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(back.to_algebra().unwrap(), g);
    }
}
