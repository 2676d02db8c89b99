//! Stacked balls and spheres, Walkup classes, boundaries, `Z₂` homology,
//! orientability and tight neighborliness.

mod homology;
mod symmetry;

pub use homology::{gf2_rank, z2_betti, BettiVector};
pub use symmetry::{automorphisms, contains_z3, isomorphic, phi_permutation, PermutationGroup};

use std::collections::{HashMap, VecDeque};

use crate::complex::{BitIter, SimplicialComplex, VertexId};
use crate::dual::DualGraph;
use crate::error::{Error, Result};

/// Λ is a tree and `f₀ = f_d + d`.
pub fn is_stacked_ball(k: &SimplicialComplex) -> bool {
    k.n() == k.facets().len() + k.dim() && DualGraph::of(k).is_tree()
}

/// Reduce by reverse 0-moves (lowest removable vertex first) down to `∂Δ^{d+1}`.
pub fn is_stacked_sphere(k: &SimplicialComplex) -> bool {
    if k.dim() == 0 {
        return k.n() == 2;
    }
    if !k.is_weak_pseudomanifold(false) {
        return false;
    }
    let d = k.dim();
    let mut facets: Vec<u64> = k.facets().iter().map(|f| f.0).collect();
    let mut verts = k.vertex_mask();
    loop {
        if verts.count_ones() as usize == d + 2 {
            return facets.len() == d + 2;
        }
        let removable = BitIter(verts).find_map(|v| {
            let bit = 1u64 << v;
            let (mut count, mut union) = (0usize, 0u64);
            for &f in &facets {
                if f & bit != 0 {
                    count += 1;
                    union |= f;
                }
            }
            let base = union & !bit;
            (count == d + 1
                && union.count_ones() as usize == d + 2
                && !facets.contains(&base))
                .then_some((bit, base))
        });
        match removable {
            Some((bit, base)) => {
                facets.retain(|f| f & bit == 0);
                facets.push(base);
                verts &= !bit;
            }
            None => return false,
        }
    }
}

fn all_links(k: &SimplicialComplex, test: impl Fn(&SimplicialComplex) -> bool) -> bool {
    k.dim() >= 1
        && k
            .vertices()
            .all(|v| k.link(v).is_ok_and(|l| test(&l)))
}

/// Every vertex link is a stacked `(d−1)`-ball (and the edge graph is complete if asked).
pub fn in_kbar(k: &SimplicialComplex, require_neighborly: bool) -> bool {
    (!require_neighborly || k.is_neighborly()) && all_links(k, is_stacked_ball)
}

/// Every vertex link is a stacked `(d−1)`-sphere (and the edge graph is complete if asked).
pub fn in_k(k: &SimplicialComplex, require_neighborly: bool) -> bool {
    (!require_neighborly || k.is_neighborly()) && all_links(k, is_stacked_sphere)
}

/// The complex generated by ridges lying in exactly one facet.
pub fn boundary(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    let mut ridges: Vec<u64> = k
        .ridge_counts()
        .into_iter()
        .filter_map(|(r, c)| (c == 1).then_some(r))
        .collect();
    if ridges.is_empty() || k.dim() == 0 {
        return Err(Error::Boundary("complex has no boundary ridges".into()));
    }
    ridges.sort_unstable();
    SimplicialComplex::from_masks(k.labels(), ridges)
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Equality `C(f₀−d−1, 2) = C(d+2, 2)·β₁` over `Z₂`.
pub fn is_tight_neighborly(k: &SimplicialComplex) -> Result<bool> {
    let d = k.dim();
    if d < 3 {
        return Err(Error::Dimension(format!(
            "tight neighborliness needs dimension at least 3, got {d}"
        )));
    }
    let beta1 = z2_betti(k).0[1];
    Ok(binom(k.n() - d - 1, 2) == binom(d + 2, 2) * beta1)
}

/// Sign-propagation orientability test for closed pseudomanifolds.
pub fn orientable(k: &SimplicialComplex) -> Result<bool> {
    let counts = k.ridge_counts();
    if counts.values().any(|&c| c == 1) {
        return Err(Error::Boundary("orientability needs a closed complex".into()));
    }
    if counts.values().any(|&c| c > 2) {
        return Ok(false);
    }
    let facets: Vec<u64> = k.facets().iter().map(|f| f.0).collect();
    // Ridge → (facet, position of the dropped vertex) pairs.
    let mut by_ridge: HashMap<u64, Vec<(usize, u32)>> = HashMap::new();
    for (i, &f) in facets.iter().enumerate() {
        for (pos, v) in BitIter(f).enumerate() {
            by_ridge.entry(f & !(1 << v)).or_default().push((i, pos as u32));
        }
    }
    let mut sign = vec![0i8; facets.len()];
    let induced = |s: i8, pos: u32| if pos % 2 == 0 { s } else { -s };
    for start in 0..facets.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut q = VecDeque::from([start]);
        while let Some(i) = q.pop_front() {
            for (pos, v) in BitIter(facets[i]).enumerate() {
                let ridge = facets[i] & !(1 << v);
                let mine = induced(sign[i], pos as u32);
                for &(j, pj) in &by_ridge[&ridge] {
                    if j == i {
                        continue;
                    }
                    if sign[j] == 0 {
                        sign[j] = if pj % 2 == 0 { -mine } else { mine };
                        q.push_back(j);
                    } else if induced(sign[j], pj) != -mine {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Vertices fixed by a permutation.
pub fn fixed_points(perm: &[usize]) -> Vec<VertexId> {
    perm.iter()
        .enumerate()
        .filter(|&(i, &p)| i == p)
        .map(|(i, _)| VertexId(i as u8))
        .collect()
}
