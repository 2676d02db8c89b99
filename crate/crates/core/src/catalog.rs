//! The twelve complexes `N₁, …, N₁₂`, each given by `z₀` and one arm
//! `u₁ … u₈`; the remaining facets are the `Φ`-orbits of the arm.

use serde::Serialize;

use crate::complex::{canonical_index, SimplicialComplex};
use crate::dual::DualGraph;
use crate::enumeration::{arm_structures, mask_string, phi_mask, tuple_from_arm, XYTuple, Z0};
use crate::error::{Error, Result};
use crate::graph::{classify, GraphFamilyId};
use crate::topology::{boundary, orientable};

pub const Z0_LABELS: &str = "a1 b1 c1 a2 b2 c2";

pub const TABLE: [[&str; 8]; 12] = [
    [
        "a1 b1 c1 a2 b2 a3", "a1 b1 a2 b2 a3 a4", "a1 a2 b2 a3 a4 a5", "a1 a2 a3 a4 b4 a5",
        "a1 a3 a4 b4 a5 b5", "a3 b3 a4 b4 a5 b5", "c2 a3 b3 b4 a5 b5", "b1 c2 b3 b4 a5 b5",
    ],
    [
        "a1 b1 c1 a2 b2 a3", "a1 b1 a2 b2 a3 a4", "a1 a2 b2 a3 a4 a5", "a1 a2 a3 a4 b4 a5",
        "a1 a2 a3 b4 a5 b5", "a2 a3 b3 b4 a5 b5", "a3 b3 b4 c4 a5 b5", "b1 b3 b4 c4 a5 b5",
    ],
    [
        "a1 b1 c1 a2 b2 a3", "a1 b1 a2 b2 a3 a4", "a1 b1 a2 a3 a4 a5", "a1 a2 a3 a4 b4 a5",
        "a1 a2 a3 b4 a5 b5", "a2 a3 b3 b4 a5 b5", "a3 b3 b4 c4 a5 b5", "b2 b3 b4 c4 a5 b5",
    ],
    [
        "a1 b1 c1 a2 b2 a3", "a1 b1 a2 b2 a3 a4", "a1 b1 a2 a3 a4 a5", "b1 a2 a3 a4 a5 c5",
        "a2 a3 b3 a4 a5 c5", "a2 a3 b3 a4 b4 a5", "a2 b3 a4 b4 a5 b5", "c1 b3 a4 b4 a5 b5",
    ],
    [
        "a1 b1 c1 a2 b2 a3", "a1 b1 c1 a2 a3 a4", "a1 b1 a2 a3 a4 a5", "a1 a2 a3 a4 a5 b5",
        "a2 a3 a4 b4 a5 b5", "a2 a3 b3 b4 a5 b5", "a2 a3 b3 b4 c4 b5", "a2 b3 b4 c4 b5 c5",
    ],
    [
        "a1 b1 c1 a2 b2 a3", "a1 b1 c1 a2 a3 a4", "a1 b1 a2 a3 a4 a5", "a1 a2 a3 a4 a5 b5",
        "a2 a3 a4 b4 a5 b5", "a2 a3 b3 a4 b4 b5", "a2 a3 b3 b4 b5 c5", "a2 b3 b4 c4 b5 c5",
    ],
    [
        "a1 b1 c1 a2 b2 a3", "a1 b1 c1 a2 a3 a4", "a1 b1 a2 a3 a4 a5", "b1 a2 a3 a4 a5 c5",
        "a2 a3 a4 b4 a5 c5", "a2 a3 b3 b4 a5 c5", "a2 a3 b3 b4 c4 a5", "a2 b3 b4 c4 a5 b5",
    ],
    [
        "a1 b1 c1 a2 b2 a3", "a1 b1 c1 a2 a3 a4", "a1 b1 a2 a3 a4 a5", "b1 a2 a3 a4 a5 c5",
        "a2 a3 a4 b4 a5 c5", "a2 a3 b3 a4 b4 a5", "a2 a3 b3 b4 a5 b5", "a2 b3 b4 c4 a5 b5",
    ],
    [
        "a1 b1 c1 a2 b2 a3", "a1 b1 c1 a2 a3 a4", "a1 b1 a2 a3 a4 a5", "a1 a2 a3 a4 a5 b5",
        "a2 a3 a4 c4 a5 b5", "a2 a3 b3 a4 c4 b5", "a2 a3 b3 a4 b5 c5", "a2 b3 a4 b4 b5 c5",
    ],
    [
        "a1 b1 c1 a2 b2 a3", "a1 b1 c1 a2 a3 a4", "a1 b1 a2 a3 a4 a5", "b1 a2 a3 a4 a5 c5",
        "a2 a3 a4 c4 a5 c5", "a2 a3 b3 a4 c4 a5", "a2 a3 b3 a4 a5 b5", "a2 b3 a4 b4 a5 b5",
    ],
    [
        "a1 b1 c1 a2 b2 a3", "a1 b1 c1 a2 a3 a4", "a1 b1 a2 a3 a4 a5", "a1 a2 a3 a4 a5 b5",
        "a2 a3 b3 a4 a5 b5", "a2 b3 a4 b4 a5 b5", "b2 b3 a4 b4 a5 b5", "b2 b3 c3 a4 b4 b5",
    ],
    [
        "a1 b1 c1 a2 b2 a3", "a1 b1 c1 a2 a3 a4", "a1 b1 a2 a3 a4 a5", "b1 a2 a3 a4 a5 c5",
        "a2 a3 b3 a4 a5 c5", "a2 b3 a4 b4 a5 c5", "b2 b3 a4 b4 a5 c5", "b2 b3 c3 a4 b4 a5",
    ],
];

pub const IDS: [&str; 12] = [
    "N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8", "N9", "N10", "N11", "N12",
];

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub z0: String,
    pub arm: Vec<String>,
    pub tuple: XYTuple,
    pub graph: String,
    pub boundary_orientable: bool,
    #[serde(skip)]
    pub complex: SimplicialComplex,
}

fn parse_row(row: &str) -> u64 {
    row.split_whitespace()
        .map(|l| 1u64 << canonical_index(l).expect("table label"))
        .fold(0, |m, b| m | b)
}

fn index_of(id: &str) -> Result<usize> {
    IDS.iter()
        .position(|&x| x.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::Id(format!("unknown catalog id `{id}` (expected N1..N12)")))
}

fn masks(i: usize) -> Vec<u64> {
    let mut out = vec![parse_row(Z0_LABELS)];
    for row in TABLE[i] {
        let u = parse_row(row);
        let v = phi_mask(u);
        out.extend([u, v, phi_mask(v)]);
    }
    out
}

/// The expanded 25-facet complex.
pub fn catalog_get(id: &str) -> Result<SimplicialComplex> {
    SimplicialComplex::from_canonical_masks(masks(index_of(id)?))
}

pub fn catalog_entry(id: &str) -> Result<CatalogEntry> {
    let i = index_of(id)?;
    let facets = masks(i);
    let complex = SimplicialComplex::from_canonical_masks(facets.clone())?;
    let arm: [u64; 8] = std::array::from_fn(|k| parse_row(TABLE[i][k]));
    let (z, r, arms) = arm_structures(&facets, phi_mask)?;
    if z != Z0 || !arms.contains(&arm) {
        return Err(Error::Graph(format!("{} row is not an arm of its dual graph", IDS[i])));
    }
    let graph: GraphFamilyId = classify(&DualGraph::of(&complex).to_simple_graph()?);
    Ok(CatalogEntry {
        id: IDS[i].to_string(),
        z0: mask_string(z),
        arm: arm.iter().map(|&m| mask_string(m)).collect(),
        tuple: tuple_from_arm(z, r, &arm, phi_mask(arm[r - 1])),
        graph: graph.to_string(),
        boundary_orientable: orientable(&boundary(&complex)?)?,
        complex,
    })
}

pub fn catalog() -> Result<Vec<CatalogEntry>> {
    IDS.iter().map(|id| catalog_entry(id)).collect()
}
