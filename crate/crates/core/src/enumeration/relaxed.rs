//! Template-free search over `(X, Y)` for `Λ ≅ G(r, 9−r)`.
//!
//! Only constraints valid for every minimal member are imposed while the
//! chain grows: `z₀ = a₁b₁c₁a₂b₂c₂`, the leave-sequence normalization,
//! distinct facets, ridge adjacency exactly as in `G(r, 9−r)`, distinct
//! oriented labels on every dual path of length at most 5, and at most ten facets per
//! vertex. Complete chains are then tested for membership.

use serde::Serialize;

use super::search::minimal_representative;
use super::{decode, phi_mask, StringRep, XYTuple, N_VERTICES, Z0};
use crate::complex::BitIter;
use crate::dual::DualGraph;
use crate::error::{Error, Result};
use crate::graph::{classify, GraphFamilyId};
use crate::par::{self, Exec};
use crate::topology::{in_kbar, isomorphic};

const MAX_PATH: usize = 5;
const TREE_SIZE: u32 = 10;

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelaxedReport {
    pub graph: String,
    pub nodes: u64,
    pub pruned_leave_sequence: u64,
    pub pruned_distinct: u64,
    pub pruned_adjacency: u64,
    pub pruned_path: u64,
    pub pruned_incidence: u64,
    /// Chains closing up with `(u₈ ∖ x₉) ∪ y₉ = Φ(u_r)`.
    pub closed: u64,
    /// Closed chains in the class with the right dual graph.
    pub members: u64,
    /// Least string representation of each isomorphism class met.
    pub classes: Vec<StringRep>,
}

impl RelaxedReport {
    fn absorb(&mut self, o: &Tally) {
        self.nodes += o.nodes;
        self.pruned_leave_sequence += o.leave;
        self.pruned_distinct += o.distinct;
        self.pruned_adjacency += o.adjacency;
        self.pruned_path += o.path;
        self.pruned_incidence += o.incidence;
        self.closed += o.closed;
    }
}

#[derive(Default)]
struct Tally {
    nodes: u64,
    leave: u64,
    distinct: u64,
    adjacency: u64,
    path: u64,
    incidence: u64,
    closed: u64,
    found: Vec<XYTuple>,
}

/// Facet slot: `None` is `z₀`, `Some((k, j))` is `Φᵏ(u_j)`.
type Node = Option<(usize, usize)>;

#[derive(Clone)]
struct State {
    r: usize,
    depth: usize,
    u: [u64; 9],
    x: [u8; 9],
    y: [u8; 9],
    /// Orbits 3..5 entered so far, in order.
    entered: usize,
    left: [bool; 2],
    orbit_load: [u32; 5],
}

fn orbit(v: u8) -> usize {
    v as usize / 3
}

fn rot(m: u64, k: usize) -> u64 {
    (0..k).fold(m, |m, _| phi_mask(m))
}

impl State {
    fn new(r: usize) -> Self {
        State {
            r,
            depth: 0,
            u: [Z0, 0, 0, 0, 0, 0, 0, 0, 0],
            x: [0; 9],
            y: [0; 9],
            entered: 0,
            left: [false; 2],
            orbit_load: [0; 5],
        }
    }

    fn mask(&self, n: Node) -> u64 {
        match n {
            None => Z0,
            Some((k, j)) => rot(self.u[j], k),
        }
    }

    fn built(&self, n: Node) -> bool {
        n.is_none_or(|(_, j)| j <= self.depth)
    }

    /// Neighbours of a facet slot in `G(r, 9−r)`.
    fn graph_neighbors(&self, n: Node) -> Vec<Node> {
        match n {
            None => (0..3).map(|k| Some((k, 1))).collect(),
            Some((k, j)) => {
                let mut out = vec![if j == 1 { None } else { Some((k, j - 1)) }];
                if j < 8 {
                    out.push(Some((k, j + 1)));
                }
                if j == self.r {
                    out.push(Some(((k + 2) % 3, 8)));
                }
                if j == 8 {
                    out.push(Some(((k + 1) % 3, self.r)));
                }
                out
            }
        }
    }

    fn all_built(&self) -> Vec<Node> {
        let mut v = vec![None];
        for j in 1..=self.depth {
            for k in 0..3 {
                v.push(Some((k, j)));
            }
        }
        v
    }

    /// Leave-sequence normalization for `x`, `y` taken at step `i`.
    fn leave_ok(&mut self, x: u8, y: u8) -> bool {
        let ox = orbit(x);
        if ox < 2 && !self.left[ox] {
            let want = if ox == 1 { 5 } else { 2 };
            if x != want || (ox == 0 && !self.left[1]) {
                return false;
            }
            self.left[ox] = true;
        }
        let oy = orbit(y);
        if oy >= 2 && oy >= 2 + self.entered {
            if oy != 2 + self.entered || y as usize != 3 * oy {
                return false;
            }
            self.entered += 1;
        }
        true
    }

    /// Oriented-label condition on every path of length ≤ 5 through `u_i`.
    fn paths_ok(&self) -> bool {
        let g = Some((0, self.depth));
        let mut branches: Vec<Vec<Node>> = Vec::new();
        let mut stack = vec![vec![g]];
        while let Some(p) = stack.pop() {
            if p.len() <= MAX_PATH {
                for nb in self.graph_neighbors(*p.last().unwrap()) {
                    if self.built(nb) && !p.contains(&nb) {
                        let mut q = p.clone();
                        q.push(nb);
                        stack.push(q);
                    }
                }
            }
            branches.push(p);
        }
        for a in &branches {
            for b in &branches {
                if a.len() + b.len() - 2 > MAX_PATH || a.len() < 2 && b.len() < 2 {
                    continue;
                }
                if a.len() >= 2 && b.len() >= 2 && a[1] >= b[1] {
                    continue;
                }
                if a[1..].iter().any(|n| b[1..].contains(n)) {
                    continue;
                }
                let path: Vec<u64> = a.iter().rev().chain(&b[1..]).map(|&n| self.mask(n)).collect();
                if !path_lemma(&path) {
                    return false;
                }
            }
        }
        true
    }

    /// Push `u_{depth+1}`; returns the prune reason on failure.
    fn push(&mut self, x: u8, y: u8, t: &mut Tally) -> bool {
        let i = self.depth + 1;
        let mut next = self.clone();
        if !next.leave_ok(x, y) {
            t.leave += 1;
            return false;
        }
        let ui = self.u[i - 1] & !(1 << x) | 1 << y;
        next.u[i] = ui;
        next.x[i - 1] = x;
        next.y[i - 1] = y;
        next.depth = i;
        let copies = [ui, phi_mask(ui), phi_mask(phi_mask(ui))];
        if copies[0] == copies[1] || next.all_built().iter().any(|&n| {
            n != Some((0, i)) && n != Some((1, i)) && n != Some((2, i)) && copies.contains(&next.mask(n))
        }) {
            t.distinct += 1;
            return false;
        }
        let expected = next.graph_neighbors(Some((0, i)));
        for n in next.all_built() {
            if n == Some((0, i)) {
                continue;
            }
            let adjacent = (next.mask(n) & ui).count_ones() == 5;
            if adjacent != expected.contains(&n) {
                t.adjacency += 1;
                return false;
            }
        }
        for v in BitIter(ui) {
            next.orbit_load[v / 3] += 1;
        }
        if (0..5).any(|o| next.orbit_load[o] + (o < 2) as u32 > TREE_SIZE) {
            t.incidence += 1;
            return false;
        }
        if !next.paths_ok() {
            t.path += 1;
            return false;
        }
        *self = next;
        true
    }

    fn close(&mut self, t: &mut Tally) {
        let target = phi_mask(self.u[self.r]);
        let (u8m, x9, y9) = (self.u[8], self.u[8] & !target, target & !self.u[8]);
        if x9.count_ones() != 1 || y9.count_ones() != 1 {
            return;
        }
        let (x9, y9) = (x9.trailing_zeros() as u8, y9.trailing_zeros() as u8);
        let mut s = self.clone();
        if !s.leave_ok(x9, y9) {
            t.leave += 1;
            return;
        }
        if (0..5).any(|o| s.orbit_load[o] + (o < 2) as u32 != TREE_SIZE) {
            t.incidence += 1;
            return;
        }
        debug_assert_eq!(u8m & !(1 << x9) | 1 << y9, target);
        s.x[8] = x9;
        s.y[8] = y9;
        t.closed += 1;
        t.found.push(XYTuple {
            z0: Z0,
            x: s.x,
            y: s.y,
            r: s.r,
        });
    }
}

/// Orienting `T_z` towards either end: departing labels distinct and off
/// the last facet, arriving labels distinct and off the first.
fn path_lemma(p: &[u64]) -> bool {
    let (u0, ur) = (p[0], p[p.len() - 1]);
    let steps = p.len() as u32 - 1;
    let mut xs = 0u64;
    let mut ys = 0u64;
    for w in p.windows(2) {
        xs |= w[0] & !w[1];
        ys |= w[1] & !w[0];
    }
    xs.count_ones() == steps && ys.count_ones() == steps && xs & ur == 0 && ys & u0 == 0
}

fn dfs(s: &mut State, t: &mut Tally) {
    t.nodes += 1;
    if s.depth == 8 {
        s.close(t);
        return;
    }
    let prev = s.u[s.depth];
    for x in BitIter(prev) {
        for y in 0..N_VERTICES {
            if prev >> y & 1 == 1 {
                continue;
            }
            let mut next = s.clone();
            if next.push(x as u8, y as u8, t) {
                dfs(&mut next, t);
            }
        }
    }
}

/// Prefixes of the given depth, in deterministic order.
fn prefixes(r: usize, depth: usize, t: &mut Tally) -> Vec<State> {
    let mut level = vec![State::new(r)];
    for _ in 0..depth {
        let mut out = Vec::new();
        for s in &level {
            t.nodes += 1;
            let prev = s.u[s.depth];
            for x in BitIter(prev) {
                for y in (0..N_VERTICES).filter(|&y| prev >> y & 1 == 0) {
                    let mut next = s.clone();
                    if next.push(x as u8, y as u8, t) {
                        out.push(next);
                    }
                }
            }
        }
        level = out;
    }
    level
}

/// Search every tuple for `G(r, 9−r)`, `3 ≤ r ≤ 6`.
pub fn relaxed_search(r: usize, exec: Exec) -> Result<RelaxedReport> {
    if !(3..=6).contains(&r) {
        return Err(Error::Param(format!("relaxed search needs 3 ≤ r ≤ 6, got {r}")));
    }
    let graph = GraphFamilyId::G { r, s: 9 - r };
    let mut head = Tally::default();
    let starts = prefixes(r, 3, &mut head);
    let tallies = par::map(exec, &starts, |s| {
        let mut t = Tally::default();
        dfs(&mut s.clone(), &mut t);
        t
    });
    let mut rep = RelaxedReport {
        graph: graph.to_string(),
        ..Default::default()
    };
    rep.absorb(&head);
    let mut found = Vec::new();
    for t in &tallies {
        rep.absorb(t);
        found.extend_from_slice(&t.found);
    }
    let members: Vec<_> = par::map(exec, &found, |t| {
        let m = decode(t).ok()?;
        (in_kbar(&m, true) && DualGraph::of(&m).to_simple_graph().is_ok_and(|g| classify(&g) == graph)).then_some(m)
    })
    .into_iter()
    .flatten()
    .collect();
    rep.members = members.len() as u64;
    let mut reps = Vec::new();
    for m in members {
        if !reps.iter().any(|k| isomorphic(k, &m).is_some()) {
            reps.push(m);
        }
    }
    let mut classes = reps
        .iter()
        .map(|m| minimal_representative(m, exec).map(|f| f.string_rep))
        .collect::<Result<Vec<_>>>()?;
    classes.sort();
    rep.classes = classes;
    Ok(rep)
}
