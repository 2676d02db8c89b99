mod common;

use tightnb::catalog::{catalog, catalog_entry, catalog_get, IDS};
use tightnb::enumeration::decode;
use tightnb::SimplicialComplex;

use common::{facet_sets, table_facets};

#[test]
fn catalog_matches_independent_expansion() {
    for (i, id) in IDS.iter().enumerate() {
        assert_eq!(facet_sets(&catalog_get(id).unwrap()), table_facets(i), "{id}");
    }
}

#[test]
fn facet_file_round_trip() {
    for id in IDS {
        let k = catalog_get(id).unwrap();
        let back = SimplicialComplex::parse_facet_file(&k.to_facet_file()).unwrap();
        assert_eq!(back.facets(), k.facets(), "{id}");
        assert_eq!(back.labels(), k.labels(), "{id}");
    }
}

#[test]
fn entries_are_consistent() {
    let entries = catalog().unwrap();
    assert_eq!(entries.len(), 12);
    let mut graphs: Vec<&str> = entries.iter().map(|e| e.graph.as_str()).collect();
    graphs.sort();
    let count = |g: &str| graphs.iter().filter(|&&x| x == g).count();
    assert_eq!([count("G(3,6)"), count("G(4,5)"), count("G(5,4)"), count("G(6,3)")], [1, 3, 8, 0]);
    for e in &entries {
        assert_eq!(e.complex.facets().len(), 25);
        assert_eq!(e.z0, "a1b1c1a2b2c2");
        assert_eq!(e.arm.len(), 8);
        assert_eq!(decode(&e.tuple).unwrap().facets(), e.complex.facets(), "{}", e.id);
        assert_eq!(e.boundary_orientable, !["N1", "N2"].contains(&e.id.as_str()));
    }
}

#[test]
fn ids_are_case_insensitive() {
    assert_eq!(catalog_entry("n7").unwrap().id, "N7");
    assert!(catalog_get("N0").is_err());
    assert!(catalog_get("").is_err());
}
