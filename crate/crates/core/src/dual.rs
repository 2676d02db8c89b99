//! The dual graph Λ of a pure complex, facet trees `T_x`, oriented edge
//! labels and the path-label checks used to validate search output.

use std::collections::VecDeque;

use serde::Serialize;

use crate::complex::{BitIter, Facet, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::graph::is_biconnected;

/// Facet-adjacency graph: facets are adjacent when they share a ridge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    facets: Vec<u64>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn of(k: &SimplicialComplex) -> Self {
        Self::from_masks(k.facets().iter().map(|f| f.0).collect(), k.dim())
    }

    /// Dual graph of facets given as masks of a `d`-dimensional pure complex.
    pub fn from_masks(facets: Vec<u64>, d: usize) -> Self {
        let m = facets.len();
        let mut adj = vec![Vec::new(); m];
        let mut edges = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if (facets[i] & facets[j]).count_ones() as usize == d {
                    adj[i].push(j);
                    adj[j].push(i);
                    edges.push((i, j));
                }
            }
        }
        DualGraph { facets, adj, edges }
    }

    pub fn node_count(&self) -> usize {
        self.facets.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn facet(&self, i: usize) -> Facet {
        Facet(self.facets[i])
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(&j)
    }

    /// Index of the facet with this mask.
    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.facets.iter().position(|&f| f == mask)
    }

    pub fn is_connected(&self) -> bool {
        self.components(&vec![false; self.node_count()]).len() <= 1
    }

    pub fn is_two_connected(&self) -> bool {
        self.node_count() >= 3 && is_biconnected(&self.adj)
    }

    pub fn is_tree(&self) -> bool {
        self.node_count() >= 1 && self.edge_count() + 1 == self.node_count() && self.is_connected()
    }

    /// Connected components of Λ with the `removed` nodes deleted.
    pub fn components(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let m = self.node_count();
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        for s in 0..m {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        q.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Facet permutation induced by a vertex permutation `perm[old] = new`,
    /// or `None` if some image is not a facet.
    pub fn facet_permutation(&self, perm: &[usize]) -> Option<Vec<usize>> {
        self.facets
            .iter()
            .map(|&f| self.index_of(BitIter(f).fold(0u64, |a, i| a | 1 << perm[i])))
            .collect()
    }

    /// Whether a node permutation maps edges to edges.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.node_count()
            && self
                .edges
                .iter()
                .all(|&(a, b)| self.are_adjacent(perm[a], perm[b]))
    }
}

/// The subgraph of Λ induced by the facets containing one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetTree {
    pub vertex: VertexId,
    /// Dual-graph node indices, increasing.
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl FacetTree {
    pub fn is_tree(&self) -> bool {
        if self.nodes.is_empty() || self.edges.len() + 1 != self.nodes.len() {
            return false;
        }
        let mut reached = vec![self.nodes[0]];
        let mut i = 0;
        while i < reached.len() {
            let u = reached[i];
            for &(a, b) in &self.edges {
                let w = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if !reached.contains(&w) {
                    reached.push(w);
                }
            }
            i += 1;
        }
        reached.len() == self.nodes.len()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.nodes.binary_search(&node).is_ok()
    }

    /// Nodes of degree at most one in the tree.
    pub fn leaves(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .copied()
            .filter(|&v| self.edges.iter().filter(|&&(a, b)| a == v || b == v).count() <= 1)
            .collect()
    }
}

pub fn facet_tree(lambda: &DualGraph, x: VertexId) -> FacetTree {
    let nodes: Vec<usize> = (0..lambda.node_count())
        .filter(|&i| lambda.facets[i] & x.bit() != 0)
        .collect();
    let edges = lambda
        .edges
        .iter()
        .copied()
        .filter(|&(a, b)| lambda.facets[a] & lambda.facets[b] & x.bit() != 0)
        .collect();
    FacetTree {
        vertex: x,
        nodes,
        edges,
    }
}

/// A tree edge directed toward the root and its label `from ∖ to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrientedEdge {
    pub from: usize,
    pub to: usize,
    pub label: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedLabels {
    pub root: usize,
    pub edges: Vec<OrientedEdge>,
    pub distinct: bool,
    pub disjoint_from_root: bool,
}

impl OrientedLabels {
    pub fn holds(&self) -> bool {
        self.distinct && self.disjoint_from_root
    }
}

/// Orient the (spanning tree of the) facet tree toward `root` and label edges.
pub fn oriented_labels(lambda: &DualGraph, tree: &FacetTree, root: usize) -> Result<OrientedLabels> {
    if !tree.contains(root) {
        return Err(Error::Adjacency(format!("root {root} is not a node of the tree")));
    }
    let mut edges = Vec::new();
    let mut seen = vec![root];
    let mut q = VecDeque::from([root]);
    while let Some(to) = q.pop_front() {
        for &(a, b) in &tree.edges {
            let from = if a == to {
                b
            } else if b == to {
                a
            } else {
                continue;
            };
            if seen.contains(&from) {
                continue;
            }
            seen.push(from);
            q.push_back(from);
            let label = lambda
                .facet(from)
                .single_difference(lambda.facet(to))
                .ok_or_else(|| {
                    Error::Adjacency(format!("facets {from} and {to} do not share a ridge"))
                })?;
            edges.push(OrientedEdge { from, to, label });
        }
    }
    let labels: u64 = edges.iter().fold(0, |m, e| m | e.label.bit());
    let distinct = labels.count_ones() as usize == edges.len();
    let disjoint_from_root = labels & lambda.facets[root] == 0;
    Ok(OrientedLabels {
        root,
        edges,
        distinct,
        disjoint_from_root,
    })
}

/// Number of vertices `y` whose facet tree meets `T_x` (including `x`).
pub fn tree_intersection_count(k: &SimplicialComplex, x: VertexId) -> usize {
    k.facets_containing(x)
        .fold(0u64, |m, f| m | f.0)
        .count_ones() as usize
}

fn removed_flags(lambda: &DualGraph, s: &[usize]) -> Result<Vec<bool>> {
    let mut removed = vec![false; lambda.node_count()];
    for &i in s {
        if i >= removed.len() {
            return Err(Error::Adjacency(format!("facet index {i} out of range")));
        }
        removed[i] = true;
    }
    Ok(removed)
}

/// Every component of `Λ − S` has fewer than `f₀ − d` nodes.
pub fn is_critical(k: &SimplicialComplex, lambda: &DualGraph, s: &[usize]) -> Result<bool> {
    let bound = k.n().saturating_sub(k.dim());
    let removed = removed_flags(lambda, s)?;
    Ok(lambda
        .components(&removed)
        .iter()
        .all(|c| c.len() < bound))
}

/// A critical facet set covers every vertex.
pub fn critical_cover_check(k: &SimplicialComplex, lambda: &DualGraph, s: &[usize]) -> Result<bool> {
    if !is_critical(k, lambda, s)? {
        return Ok(true);
    }
    let union = s.iter().fold(0u64, |m, &i| m | lambda.facets[i]);
    Ok(union == k.vertex_mask())
}

/// Departing/arriving labels along a facet path and the lemma checks on them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathLabelReport {
    pub length: usize,
    /// `x_i = u_{i-1} ∖ u_i`.
    pub departing: Vec<VertexId>,
    /// `y_i = u_i ∖ u_{i-1}`.
    pub arriving: Vec<VertexId>,
    pub interior_degree_two: bool,
    /// For degree-2 interiors: distinct departing labels, all in `u_0`, length ≤ d+1.
    pub degree_two_ok: Option<bool>,
    /// For length < d+1: `{x_i} ⊆ u_0 ∖ u_r` and `{y_i} ⊆ u_r ∖ u_0`.
    pub short_path_ok: Option<bool>,
    /// For length < d+1: `{x_i}` distinct and off `u_r`, `{y_i}` distinct and off `u_0`.
    pub oriented_ok: Option<bool>,
}

impl PathLabelReport {
    pub fn holds(&self) -> bool {
        self.degree_two_ok.unwrap_or(true)
            && self.short_path_ok.unwrap_or(true)
            && self.oriented_ok.unwrap_or(true)
    }
}

pub fn path_label_check(lambda: &DualGraph, d: usize, path: &[usize]) -> Result<PathLabelReport> {
    if path.is_empty() {
        return Err(Error::Path("empty path".into()));
    }
    if let Some(&i) = path.iter().find(|&&i| i >= lambda.node_count()) {
        return Err(Error::Path(format!("facet index {i} out of range")));
    }
    let mut departing = Vec::new();
    let mut arriving = Vec::new();
    for w in path.windows(2) {
        let (a, b) = (lambda.facet(w[0]), lambda.facet(w[1]));
        match (a.single_difference(b), b.single_difference(a)) {
            (Some(x), Some(y)) => {
                departing.push(x);
                arriving.push(y);
            }
            _ => {
                return Err(Error::Path(format!(
                    "facets {} and {} are not adjacent",
                    w[0], w[1]
                )))
            }
        }
    }
    let r = departing.len();
    let u0 = lambda.facets[path[0]];
    let ur = lambda.facets[path[r]];
    let xs = departing.iter().fold(0u64, |m, v| m | v.bit());
    let ys = arriving.iter().fold(0u64, |m, v| m | v.bit());
    let interior_degree_two = path[1..r.max(1)]
        .iter()
        .all(|&i| lambda.degree(i) == 2);
    let degree_two_ok = interior_degree_two.then(|| {
        xs.count_ones() as usize == r && xs & !u0 == 0 && r <= d + 1
    });
    let short_path_ok =
        (r < d + 1).then(|| xs & !(u0 & !ur) == 0 && ys & !(ur & !u0) == 0);
    let oriented_ok = (r < d + 1).then(|| {
        xs.count_ones() as usize == r && ys.count_ones() as usize == r && xs & ur == 0 && ys & u0 == 0
    });
    Ok(PathLabelReport {
        length: r,
        departing,
        arriving,
        interior_degree_two,
        degree_two_ok,
        short_path_ok,
        oriented_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex_boundary(d: usize) -> SimplicialComplex {
        let full = (1u64 << (d + 2)) - 1;
        let labels: Vec<String> = (0..d + 2).map(|i| format!("v{i}")).collect();
        SimplicialComplex::from_masks(&labels, (0..d + 2).map(|i| full & !(1 << i))).unwrap()
    }

    /// Chain of `k` `d`-simplices, each glued to the previous along a ridge.
    fn chain(d: usize, k: usize) -> SimplicialComplex {
        let labels: Vec<String> = (0..d + k).map(|i| format!("v{i}")).collect();
        let base = (1u64 << (d + 1)) - 1;
        SimplicialComplex::from_masks(&labels, (0..k).map(|i| base << i)).unwrap()
    }

    #[test]
    fn simplex_boundary_dual_is_complete() {
        let l = DualGraph::of(&simplex_boundary(4));
        assert_eq!((l.node_count(), l.edge_count()), (6, 15));
        assert!(l.is_two_connected());
    }

    #[test]
    fn chain_dual_is_path() {
        let l = DualGraph::of(&chain(5, 3));
        assert_eq!(l.edges(), &[(0, 1), (1, 2)]);
        assert!(l.is_tree());
        assert!(!l.is_two_connected());
    }

    #[test]
    fn two_simplex_tree_label() {
        let k = chain(5, 2);
        let l = DualGraph::of(&k);
        let t = facet_tree(&l, VertexId(1));
        assert!(t.is_tree());
        let ol = oriented_labels(&l, &t, 1).unwrap();
        assert_eq!(ol.edges.len(), 1);
        assert_eq!(ol.edges[0].label, VertexId(0));
        assert!(ol.holds());
        assert!(oriented_labels(&l, &facet_tree(&l, VertexId(0)), 1).is_err());
    }

    #[test]
    fn path_errors_and_trivial_edge() {
        let k = chain(5, 3);
        let l = DualGraph::of(&k);
        assert!(matches!(path_label_check(&l, 5, &[0, 2]), Err(Error::Path(_))));
        let rep = path_label_check(&l, 5, &[0, 1]).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.departing, vec![VertexId(0)]);
        assert_eq!(rep.arriving, vec![VertexId(6)]);
    }

    #[test]
    fn long_degree_two_path_rejected() {
        // 2-simplices glued in a chain of length 4 > d + 1 = 3.
        let k = chain(2, 5);
        let l = DualGraph::of(&k);
        let rep = path_label_check(&l, 2, &[0, 1, 2, 3, 4]).unwrap();
        assert!(rep.interior_degree_two);
        assert_eq!(rep.degree_two_ok, Some(false));
    }

    #[test]
    fn critical_sets() {
        let k = chain(2, 5);
        let l = DualGraph::of(&k);
        // f0 - d = 5: removing the middle leaves components of size 2.
        assert!(is_critical(&k, &l, &[2]).unwrap());
        assert!(!is_critical(&k, &l, &[]).unwrap());
        assert!(!critical_cover_check(&k, &l, &[2]).unwrap());
    }
}
