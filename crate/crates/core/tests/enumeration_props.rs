use proptest::prelude::*;
use tightnb::catalog::{catalog_get, IDS};
use tightnb::enumeration::{
    centralizer_elements, decode, encode, is_minimal, leave_sequence_check,
    minimal_representative, normalizer_elements, normalizer_exponent, normalizer_generators,
    phi_perm, string_rep, Z0,
};
use tightnb::topology::{boundary, isomorphic};
use tightnb::{Exec, SimplicialComplex};

fn catalog_complexes() -> Vec<SimplicialComplex> {
    IDS.iter().map(|id| catalog_get(id).unwrap()).collect()
}

#[test]
fn normalizer_and_centralizer_orders() {
    let n = normalizer_elements();
    assert_eq!(n.len(), 58320);
    assert!(n.iter().all(|g| normalizer_exponent(g).is_some()));
    assert!(normalizer_generators().iter().all(|g| normalizer_exponent(g).is_some()));
    let c = centralizer_elements();
    assert_eq!(c.len(), 29160);
    let phi = phi_perm();
    for g in c.iter().step_by(97) {
        let gp: Vec<u8> = phi.iter().map(|&x| g[x as usize]).collect();
        let pg: Vec<u8> = g.iter().map(|&x| phi[x as usize]).collect();
        assert_eq!(gp, pg);
    }
}

#[test]
fn encode_decode_round_trip() {
    for (id, k) in IDS.iter().zip(catalog_complexes()) {
        let t = encode(&k).unwrap();
        assert_eq!(t.z0, Z0, "{id}");
        assert_eq!(decode(&t).unwrap().to_facet_file(), k.to_facet_file(), "{id}");
        assert_eq!(t.string_rep_of_arm().unwrap(), string_rep(&k).unwrap(), "{id}");
    }
}

#[test]
fn catalog_tuples_are_minimal_and_follow_the_leave_sequence() {
    for (id, k) in IDS.iter().zip(catalog_complexes()) {
        let t = encode(&k).unwrap();
        assert!(is_minimal(&t, Exec::Parallel).unwrap(), "{id}");
        assert!(leave_sequence_check(&t).holds(), "{id}: {:?}", leave_sequence_check(&t));
        let m = minimal_representative(&k, Exec::Parallel).unwrap();
        assert_eq!(m.tuple.z0, Z0, "{id}");
    }
}

#[test]
fn some_conjugate_is_not_minimal() {
    let k = catalog_get("N5").unwrap();
    let found = centralizer_elements().iter().step_by(11).take(200).any(|g| {
        let p: Vec<usize> = g.iter().map(|&x| x as usize).collect();
        let image = k.relabel(&p).unwrap();
        !is_minimal(&encode(&image).unwrap(), Exec::Sequential).unwrap()
    });
    assert!(found);
}

#[test]
fn catalog_is_pairwise_non_isomorphic() {
    let ks = catalog_complexes();
    let bs: Vec<SimplicialComplex> = ks.iter().map(|k| boundary(k).unwrap()).collect();
    for i in 0..ks.len() {
        for j in i + 1..ks.len() {
            assert!(isomorphic(&ks[i], &ks[j]).is_none(), "N{} ≅ N{}", i + 1, j + 1);
            assert!(isomorphic(&bs[i], &bs[j]).is_none(), "∂N{} ≅ ∂N{}", i + 1, j + 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn minimal_form_recovers_the_catalog_entry(
        i in 0usize..12,
        perm in Just((0..15).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let k = catalog_get(IDS[i]).unwrap();
        let image = k.relabel(&perm).unwrap();
        let m = minimal_representative(&image, Exec::Parallel).unwrap();
        prop_assert_eq!(m.complex.to_facet_file(), k.to_facet_file());
    }

    #[test]
    fn normalizer_images_keep_phi(i in 0usize..12, idx in 0usize..58320) {
        let g = normalizer_elements()[idx];
        let perm: Vec<usize> = g.iter().map(|&x| x as usize).collect();
        let image = catalog_get(IDS[i]).unwrap().relabel(&perm).unwrap();
        let t = encode(&image).unwrap();
        prop_assert_eq!(decode(&t).unwrap().to_facet_file(), image.to_facet_file());
    }
}
