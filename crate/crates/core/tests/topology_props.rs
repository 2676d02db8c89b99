mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tightnb::dual::DualGraph;
use tightnb::topology::{
    boundary, in_kbar, is_stacked_ball, is_stacked_sphere, isomorphic, z2_betti,
};
use tightnb::SimplicialComplex;

use common::{random_pasting, random_stacked_ball};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn stacked_balls_are_recognized(seed in any::<u64>(), d in 2usize..=5, m in 1usize..=40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_stacked_ball(&mut rng, d, m);
        prop_assert_eq!(b.facets().len(), m);
        prop_assert_eq!(b.n(), m + d);
        prop_assert!(DualGraph::of(&b).is_tree());
        prop_assert!(is_stacked_ball(&b));
        prop_assert!(in_kbar(&b, false));
        prop_assert_eq!(z2_betti(&b).0.iter().sum::<usize>(), 1);
    }

    #[test]
    fn boundaries_of_stacked_balls_are_stacked_spheres(
        seed in any::<u64>(), d in 2usize..=5, m in 1usize..=40
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = boundary(&random_stacked_ball(&mut rng, d, m)).unwrap();
        prop_assert!(is_stacked_sphere(&s));
        prop_assert!(s.is_weak_pseudomanifold(false));
        let betti = z2_betti(&s).0;
        prop_assert_eq!(betti[0], 1);
        prop_assert_eq!(betti[d - 1], 1);
        prop_assert_eq!(betti.iter().sum::<usize>(), 2);
    }

    #[test]
    fn tree_pastings_bound_vertex_count(seed in any::<u64>(), d in 2usize..=4, m in 1usize..=25) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (k, all_new) = random_pasting(&mut rng, d, m);
        if DualGraph::of(&k).is_tree() {
            let bound = k.facets().len() + d;
            prop_assert!(k.n() <= bound);
            prop_assert_eq!(k.n() == bound, all_new);
            prop_assert_eq!(is_stacked_ball(&k), all_new);
        }
    }

    #[test]
    fn betti_sum_matches_euler(seed in any::<u64>(), d in 2usize..=4, m in 1usize..=25) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (k, _) = random_pasting(&mut rng, d, m);
        let betti = z2_betti(&k);
        prop_assert_eq!(betti.euler_characteristic(), k.euler_characteristic());
        if let Ok(b) = boundary(&k) {
            prop_assert_eq!(z2_betti(&b).euler_characteristic(), b.euler_characteristic());
        }
    }

    #[test]
    fn isomorphism_survives_relabeling(seed in any::<u64>(), d in 2usize..=4, m in 1usize..=20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (k, _) = random_pasting(&mut rng, d, m);
        let mut p: Vec<usize> = (0..k.n()).collect();
        rand::seq::SliceRandom::shuffle(p.as_mut_slice(), &mut rng);
        let image = k.relabel(&p).unwrap();
        let map = isomorphic(&k, &image).expect("relabeling is an isomorphism");
        let mapped = k.relabel(&map).unwrap();
        prop_assert_eq!(mapped.facets(), image.facets());
        prop_assert!(isomorphic(&image, &k).is_some());
    }
}

fn octahedron() -> SimplicialComplex {
    let mut facets = Vec::new();
    for x in ["x+", "x-"] {
        for y in ["y+", "y-"] {
            for z in ["z+", "z-"] {
                facets.push(vec![x, y, z]);
            }
        }
    }
    SimplicialComplex::build(&facets).unwrap()
}

#[test]
fn octahedron_is_a_sphere_but_not_stacked() {
    let o = octahedron();
    assert_eq!(z2_betti(&o).0, vec![1, 0, 1]);
    assert!(o.is_weak_pseudomanifold(false));
    assert!(!is_stacked_sphere(&o));
}

#[test]
fn cone_over_octahedron_is_not_a_stacked_ball() {
    let ball = octahedron().cone("apex").unwrap();
    assert!(!is_stacked_ball(&ball));
    assert!(!DualGraph::of(&ball).is_tree());
}

#[test]
fn non_isomorphic_same_f_vector() {
    let path = SimplicialComplex::build(&[vec!["p", "q"], vec!["q", "r"], vec!["r", "s"]]).unwrap();
    let claw = SimplicialComplex::build(&[vec!["p", "q"], vec!["p", "r"], vec!["p", "s"]]).unwrap();
    assert_eq!(path.f_vector(), claw.f_vector());
    assert!(isomorphic(&path, &claw).is_none());
}

#[test]
fn tree_pasting_with_reused_vertex_loses_a_vertex() {
    let k = SimplicialComplex::build(&[
        vec!["0", "1", "2"],
        vec!["1", "2", "3"],
        vec!["2", "3", "4"],
        vec!["3", "4", "5"],
        vec!["4", "5", "0"],
    ])
    .unwrap();
    assert!(DualGraph::of(&k).is_tree());
    assert_eq!(k.n() + 1, k.facets().len() + k.dim());
    assert!(!is_stacked_ball(&k));
}

#[test]
fn random_tree_pastings_include_reuse() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let hits = (0..2000)
        .filter(|_| {
            let (k, all_new) = random_pasting(&mut rng, 2, 12);
            !all_new && DualGraph::of(&k).is_tree()
        })
        .count();
    assert!(hits > 0);
}
