use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::complex::{canonical_index, BitIter, SimplicialComplex, CANONICAL_LABELS};
use crate::error::{Error, Result};

/// A group of vertex permutations (`perm[old] = new`), listed in full.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationGroup {
    pub generators: Vec<Vec<usize>>,
    pub order: usize,
    #[serde(skip)]
    pub elements: Vec<Vec<usize>>,
}

impl PermutationGroup {
    fn from_elements(mut elements: Vec<Vec<usize>>) -> Self {
        elements.sort();
        let mut generators: Vec<Vec<usize>> = Vec::new();
        let mut closure: HashSet<Vec<usize>> = HashSet::new();
        if let Some(id) = elements.first() {
            closure.insert((0..id.len()).collect());
        }
        for e in &elements {
            if closure.contains(e) {
                continue;
            }
            generators.push(e.clone());
            closure = generate(&generators, e.len());
        }
        PermutationGroup {
            generators,
            order: elements.len(),
            elements,
        }
    }

    pub fn contains(&self, perm: &[usize]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(perm)).is_ok()
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // apply q, then p
    q.iter().map(|&x| p[x]).collect()
}

fn generate(gens: &[Vec<usize>], n: usize) -> HashSet<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut q = VecDeque::from([id]);
    while let Some(p) = q.pop_front() {
        for g in gens {
            let r = compose(g, &p);
            if seen.insert(r.clone()) {
                q.push_back(r);
            }
        }
    }
    seen
}

type Invariant = (usize, Vec<usize>);

fn invariants(k: &SimplicialComplex) -> Vec<Invariant> {
    let deg = k.facet_degrees();
    k.vertices()
        .map(|v| {
            let fv = k.link(v).map(|l| l.f_vector().0).unwrap_or_default();
            (deg[v.index()], fv)
        })
        .collect()
}

struct Side<'a> {
    k: &'a SimplicialComplex,
    faces: HashSet<u64>,
    facets_of: Vec<Vec<u64>>,
    inv: Vec<Invariant>,
}

impl<'a> Side<'a> {
    fn new(k: &'a SimplicialComplex) -> Self {
        let faces = k.faces().iter().flatten().copied().collect();
        let facets_of = k
            .vertices()
            .map(|v| k.facets_containing(v).map(|f| f.0).collect())
            .collect();
        Side {
            k,
            faces,
            facets_of,
            inv: invariants(k),
        }
    }
}

struct Matcher<'a> {
    a: Side<'a>,
    b: Side<'a>,
    order: Vec<usize>,
}

fn image(mask: u64, map: &[usize]) -> u64 {
    BitIter(mask).fold(0, |m, i| m | 1 << map[i])
}

impl<'a> Matcher<'a> {
    fn new(k1: &'a SimplicialComplex, k2: &'a SimplicialComplex) -> Option<Self> {
        if k1.n() != k2.n() || k1.dim() != k2.dim() || k1.facets().len() != k2.facets().len() {
            return None;
        }
        let a = Side::new(k1);
        let b = Side::new(k2);
        let mut ia = a.inv.clone();
        let mut ib = b.inv.clone();
        ia.sort();
        ib.sort();
        if ia != ib || a.faces.len() != b.faces.len() {
            return None;
        }
        let n = k1.n();
        let class_size = |v: usize| a.inv.iter().filter(|x| **x == a.inv[v]).count();
        // Grow the order so each new vertex shares as much of a facet as possible with placed ones.
        let mut order = Vec::with_capacity(n);
        let mut placed = 0u64;
        while order.len() < n {
            let v = (0..n)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| {
                    let overlap = a.facets_of[v]
                        .iter()
                        .map(|f| (f & placed).count_ones())
                        .max()
                        .unwrap_or(0);
                    (overlap, std::cmp::Reverse(class_size(v)), std::cmp::Reverse(v))
                })
                .unwrap();
            order.push(v);
            placed |= 1 << v;
        }
        Some(Matcher { a, b, order })
    }

    fn consistent(&self, v: usize, w: usize, map: &[usize], inv_map: &[usize], done_a: u64, done_b: u64) -> bool {
        for &f in &self.a.facets_of[v] {
            let part = f & done_a;
            let img = image(part, map);
            if !self.b.faces.contains(&img) {
                return false;
            }
            if part == f && !self.b.k.has_facet(img) {
                return false;
            }
        }
        for &g in &self.b.facets_of[w] {
            let part = g & done_b;
            if !self.a.faces.contains(&image(part, inv_map)) {
                return false;
            }
        }
        true
    }

    fn run<F: FnMut(&[usize]) -> bool>(&self, visit: &mut F) {
        let n = self.order.len();
        let mut map = vec![usize::MAX; n];
        let mut inv_map = vec![usize::MAX; n];
        self.rec(0, &mut map, &mut inv_map, 0, 0, visit);
    }

    fn rec<F: FnMut(&[usize]) -> bool>(
        &self,
        depth: usize,
        map: &mut Vec<usize>,
        inv_map: &mut Vec<usize>,
        done_a: u64,
        done_b: u64,
        visit: &mut F,
    ) -> bool {
        if depth == self.order.len() {
            return visit(map);
        }
        let v = self.order[depth];
        for w in 0..self.order.len() {
            if done_b >> w & 1 == 1 || self.b.inv[w] != self.a.inv[v] {
                continue;
            }
            map[v] = w;
            inv_map[w] = v;
            let (da, db) = (done_a | 1 << v, done_b | 1 << w);
            if self.consistent(v, w, map, inv_map, da, db)
                && !self.rec(depth + 1, map, inv_map, da, db, visit)
            {
                return false;
            }
            map[v] = usize::MAX;
            inv_map[w] = usize::MAX;
        }
        true
    }
}

/// A facet-preserving vertex bijection `map[v in K1] = v in K2`, if one exists.
pub fn isomorphic(k1: &SimplicialComplex, k2: &SimplicialComplex) -> Option<Vec<usize>> {
    let m = Matcher::new(k1, k2)?;
    let mut found = None;
    m.run(&mut |map: &[usize]| {
        found = Some(map.to_vec());
        false
    });
    found
}

/// The full automorphism group.
pub fn automorphisms(k: &SimplicialComplex) -> PermutationGroup {
    let m = Matcher::new(k, k).expect("a complex matches itself");
    let mut all = Vec::new();
    m.run(&mut |map: &[usize]| {
        all.push(map.to_vec());
        true
    });
    PermutationGroup::from_elements(all)
}

/// `Φ = ∏ (aᵢ, bᵢ, cᵢ)` as a permutation of this complex's vertex indices.
pub fn phi_permutation(k: &SimplicialComplex) -> Result<Vec<usize>> {
    k.labels()
        .iter()
        .map(|l| {
            let i = canonical_index(l)
                .ok_or_else(|| Error::Vertex(format!("label `{l}` is not of the form a1..c5")))?;
            let target = CANONICAL_LABELS[3 * (i / 3) + (i % 3 + 1) % 3];
            k.labels()
                .iter()
                .position(|m| m == target)
                .ok_or_else(|| Error::Vertex(format!("Φ-image `{target}` of `{l}` missing")))
        })
        .collect()
}

/// Whether the permutation `phi` preserves the facet set and has order three.
pub fn contains_z3(k: &SimplicialComplex, phi: &[usize]) -> bool {
    if phi.len() != k.n() {
        return false;
    }
    let p2 = compose(phi, phi);
    let p3 = compose(phi, &p2);
    let is_identity = |p: &[usize]| p.iter().enumerate().all(|(i, &x)| i == x);
    !is_identity(phi)
        && is_identity(&p3)
        && k.facets().iter().all(|f| k.has_facet(image(f.0, phi)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex_boundary(d: usize) -> SimplicialComplex {
        let full = (1u64 << (d + 2)) - 1;
        let labels: Vec<String> = (0..d + 2).map(|i| format!("v{i}")).collect();
        SimplicialComplex::from_masks(&labels, (0..d + 2).map(|i| full & !(1 << i))).unwrap()
    }

    #[test]
    fn simplex_boundary_group() {
        let g = automorphisms(&simplex_boundary(4));
        assert_eq!(g.order, 720);
        assert!(g.generators.len() <= 9);
        assert_eq!(generate(&g.generators, 6).len(), 720);
    }

    #[test]
    fn cycle_group_and_isomorphism() {
        let c5 = SimplicialComplex::build(
            &[["p", "q"], ["q", "r"], ["r", "s"], ["s", "t"], ["t", "p"]].map(Vec::from),
        )
        .unwrap();
        assert_eq!(automorphisms(&c5).order, 10);
        let relabeled = c5.relabel(&[2, 4, 1, 0, 3]).unwrap();
        let map = isomorphic(&c5, &relabeled).unwrap();
        assert_eq!(c5.relabel(&map).unwrap(), relabeled);
        let path = SimplicialComplex::build(
            &[["p", "q"], ["q", "r"], ["r", "s"], ["s", "t"], ["p", "r"]].map(Vec::from),
        )
        .unwrap();
        assert!(isomorphic(&c5, &path).is_none());
    }

    #[test]
    fn phi_on_canonical_labels() {
        let k = SimplicialComplex::build(&[vec!["a1", "b1", "c1"]]).unwrap();
        assert_eq!(phi_permutation(&k).unwrap(), vec![1, 2, 0]);
        assert!(contains_z3(&k, &[1, 2, 0]));
        assert!(!contains_z3(&k, &[1, 0, 2]));
        let bad = SimplicialComplex::build(&[vec!["a1", "b1"]]).unwrap();
        assert!(phi_permutation(&bad).is_err());
    }
}
