use proptest::prelude::*;
use tightnb::graph::{
    build_g, build_t, classify, oracle_classification, predicted_families, GraphFamilyId,
    OracleMode,
};
use tightnb::Exec;

#[test]
fn family_sizes_and_connectivity() {
    for r in 1..=8 {
        for s in 1..=8 {
            let g = build_g(r, s).unwrap();
            assert_eq!(g.n(), 1 + 3 * (r + s - 1));
            assert_eq!(g.edge_count(), g.n() + 2);
            assert!(g.is_two_connected(), "G({r},{s})");
            assert_eq!(classify(&g), GraphFamilyId::G { r, s });
            if (r, s) == (1, 1) {
                continue;
            }
            let t = build_t(r, s).unwrap();
            assert_eq!(t.n(), 3 * r + s);
            assert_eq!(t.edge_count(), t.n() + 2);
            if s == 1 {
                assert!(!t.is_two_connected(), "T({r},1)");
                assert_eq!(classify(&t), GraphFamilyId::Neither);
            } else {
                assert!(t.is_two_connected(), "T({r},{s})");
                assert_eq!(classify(&t), GraphFamilyId::T { r, s });
            }
        }
    }
}

#[test]
fn predicted_families_are_pairwise_distinct() {
    for n in 4..=25 {
        let fams = predicted_families(n);
        for (i, a) in fams.iter().enumerate() {
            for b in &fams[i + 1..] {
                let (ga, gb) = (a.build().unwrap(), b.build().unwrap());
                assert_ne!(classify(&ga), classify(&gb), "{a} vs {b}");
            }
        }
    }
}

#[test]
fn degenerate_parameters_rejected() {
    assert!(build_g(0, 3).is_err());
    assert!(build_t(1, 1).is_err());
    assert!(build_t(2, 0).is_err());
}

#[test]
fn small_oracle_matches_prediction() {
    for n in [4, 5, 6, 7] {
        let rep = oracle_classification(n, OracleMode::Exhaustive, Exec::Parallel).unwrap();
        assert!(rep.matches_prediction, "n={n}");
        let found: Vec<GraphFamilyId> = rep.classes.iter().map(|c| c.family).collect();
        let mut want = predicted_families(n);
        want.sort();
        let mut got = found.clone();
        got.sort();
        assert_eq!(got, want, "n={n}");
    }
}

#[test]
fn oracle_is_deterministic_across_modes() {
    let a = oracle_classification(7, OracleMode::Exhaustive, Exec::Sequential).unwrap();
    let b = oracle_classification(7, OracleMode::Exhaustive, Exec::Parallel).unwrap();
    assert_eq!(a.scanned, b.scanned);
    assert_eq!(a.qualifying, b.qualifying);
    assert_eq!(a.classes.len(), b.classes.len());
}

#[test]
fn exhaustive_mode_refuses_large_n() {
    assert!(oracle_classification(10, OracleMode::Exhaustive, Exec::Parallel).is_err());
}

fn arb_family() -> impl Strategy<Value = GraphFamilyId> {
    prop_oneof![
        (1usize..=8, 1usize..=8).prop_map(|(r, s)| GraphFamilyId::G { r, s }),
        (1usize..=8, 2usize..=8).prop_map(|(r, s)| GraphFamilyId::T { r, s }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classify_is_invariant_under_relabeling(
        (fam, perm) in arb_family().prop_flat_map(|f| {
            let n = f.build().unwrap().n();
            (Just(f), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        })
    ) {
        let g = fam.build().unwrap().permuted(&perm);
        prop_assert_eq!(classify(&g), fam);
    }
}
