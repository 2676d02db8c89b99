//! Small simple graphs, the `G(r,s)` / `T(r,s)` families and the
//! classification of 2-connected graphs with `n` nodes, `n + 2` edges and an
//! order-3 automorphism.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::complex::BitIter;
use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Simple undirected graph on at most 64 nodes, stored as adjacency bitmasks.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<u64>,
    names: Vec<String>,
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl SimpleGraph {
    pub fn new(n: usize) -> Result<Self> {
        if n > 64 {
            return Err(Error::Scale(format!("{n} nodes exceed the 64-node limit")));
        }
        Ok(SimpleGraph {
            adj: vec![0; n],
            names: (0..n).map(|i| i.to_string()).collect(),
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.n());
        self.names = names;
        self
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        let n = self.n();
        if a >= n || b >= n {
            return Err(Error::Graph(format!("edge ({a},{b}) out of range")));
        }
        if a == b {
            return Err(Error::Graph(format!("loop at node {a}")));
        }
        if self.adj[a] >> b & 1 == 1 {
            return Err(Error::Graph(format!("multi-edge ({a},{b})")));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        BitIter(self.adj[v])
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn node(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|a| BitIter(self.adj[a] >> a >> 1).map(move |j| (a, a + 1 + j)))
            .collect()
    }

    fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n()).map(|v| self.neighbors(v).collect()).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || bfs_distances(&self.adjacency_lists(), 0).iter().all(|d| d.is_some())
    }

    /// Connected with at least three nodes and no articulation node.
    pub fn is_two_connected(&self) -> bool {
        self.n() >= 3 && is_biconnected(&self.adjacency_lists())
    }

    /// Image under `perm[old] = new`.
    pub fn permuted(&self, perm: &[usize]) -> SimpleGraph {
        let mut adj = vec![0u64; self.n()];
        for (a, &m) in self.adj.iter().enumerate() {
            adj[perm[a]] = BitIter(m).fold(0, |acc, b| acc | 1 << perm[b]);
        }
        let mut names = vec![String::new(); self.n()];
        for (a, nm) in self.names.iter().enumerate() {
            names[perm[a]] = nm.clone();
        }
        SimpleGraph { adj, names }
    }
}

pub(crate) fn bfs_distances(adj: &[Vec<usize>], src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[src] = Some(0);
    let mut q = VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        let du = dist[u].unwrap();
        for &w in &adj[u] {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

/// Connected and free of articulation nodes (low-point search).
pub(crate) fn is_biconnected(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    if n == 0 {
        return false;
    }
    if n <= 2 {
        return bfs_distances(adj, 0).iter().all(Option::is_some);
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    // Iterative DFS: (node, parent, next neighbour index).
    let mut stack = vec![(0usize, usize::MAX, 0usize)];
    disc[0] = 0;
    low[0] = 0;
    timer += 1;
    let mut root_children = 0;
    while let Some(&mut (u, parent, ref mut next)) = stack.last_mut() {
        if *next < adj[u].len() {
            let w = adj[u][*next];
            *next += 1;
            if disc[w] == usize::MAX {
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                if u == 0 {
                    root_children += 1;
                }
                stack.push((w, u, 0));
            } else if w != parent {
                low[u] = low[u].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[u]);
                if p != 0 && low[u] >= disc[p] {
                    return false;
                }
            }
        }
    }
    disc.iter().all(|&d| d != usize::MAX) && root_children <= 1
}

/// Which of the two graph families a graph belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GraphFamilyId {
    G { r: usize, s: usize },
    T { r: usize, s: usize },
    Neither,
}

impl fmt::Display for GraphFamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamilyId::G { r, s } => write!(f, "G({r},{s})"),
            GraphFamilyId::T { r, s } => write!(f, "T({r},{s})"),
            GraphFamilyId::Neither => write!(f, "none"),
        }
    }
}

impl GraphFamilyId {
    pub fn build(self) -> Result<SimpleGraph> {
        match self {
            GraphFamilyId::G { r, s } => build_g(r, s),
            GraphFamilyId::T { r, s } => build_t(r, s),
            GraphFamilyId::Neither => Err(Error::Param("no graph for `none`".into())),
        }
    }
}

fn arm_names(prefix_count: usize, len: usize) -> Vec<String> {
    let _ = prefix_count;
    (1..=len)
        .flat_map(|i| ["u", "v", "w"].map(|p| format!("{p}{i}")))
        .collect()
}

/// `G(r,s)`: hub `z0`, three arms of length `r`, and an outer cycle through
/// the arm ends made of three paths of length `s`.
///
/// Node `z0` is 0; `u_i, v_i, w_i` are `3i-2, 3i-1, 3i`.
pub fn build_g(r: usize, s: usize) -> Result<SimpleGraph> {
    if r == 0 || s == 0 {
        return Err(Error::Param(format!("G({r},{s}) needs r, s >= 1")));
    }
    let len = r + s - 1;
    let n = 1 + 3 * len;
    let node = |arm: usize, i: usize| 1 + 3 * (i - 1) + arm;
    let mut g = SimpleGraph::new(n)?;
    for arm in 0..3 {
        g.add_edge(0, node(arm, 1))?;
        for i in 1..len {
            g.add_edge(node(arm, i), node(arm, i + 1))?;
        }
        g.add_edge(node(arm, len), node((arm + 1) % 3, r))?;
    }
    let mut names = vec!["z0".to_string()];
    names.extend(arm_names(0, len));
    Ok(g.with_names(names))
}

/// `T(r,s)`: a path `x1 … xs` plus three paths of `r` inner nodes from `x1` to `xs`.
///
/// Nodes `x1..xs` are `0..s`; `u_i, v_i, w_i` follow in rotation order.
pub fn build_t(r: usize, s: usize) -> Result<SimpleGraph> {
    if r == 0 || s == 0 {
        return Err(Error::Param(format!("T({r},{s}) needs r, s >= 1")));
    }
    if r == 1 && s == 1 {
        return Err(Error::Param("T(1,1) is a multigraph".into()));
    }
    let n = 3 * r + s;
    let node = |arm: usize, i: usize| s + 3 * (i - 1) + arm;
    let mut g = SimpleGraph::new(n)?;
    for i in 1..s {
        g.add_edge(i - 1, i)?;
    }
    for arm in 0..3 {
        g.add_edge(0, node(arm, 1))?;
        for i in 1..r {
            g.add_edge(node(arm, i), node(arm, i + 1))?;
        }
        g.add_edge(node(arm, r), s - 1)?;
    }
    let mut names: Vec<String> = (1..=s).map(|i| format!("x{i}")).collect();
    names.extend(arm_names(0, r));
    Ok(g.with_names(names))
}

// ---------------------------------------------------------------------------
// Invariants, isomorphism and automorphisms
// ---------------------------------------------------------------------------

fn mix(mut h: u64, x: u64) -> u64 {
    h ^= x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
    h ^ (h >> 33)
}

/// Isomorphism-invariant node colours: degree and distance profile, refined
/// by neighbour colour multisets until stable.
pub fn refined_colors(g: &SimpleGraph) -> Vec<u64> {
    let lists = g.adjacency_lists();
    let n = g.n();
    let mut colors: Vec<u64> = (0..n)
        .map(|v| {
            let mut hist = vec![0u64; n + 1];
            for d in bfs_distances(&lists, v) {
                hist[d.unwrap_or(n)] += 1;
            }
            hist.iter().fold(g.degree(v) as u64, |h, &c| mix(h, c))
        })
        .collect();
    let mut classes = colors.iter().collect::<BTreeSet<_>>().len();
    loop {
        let next: Vec<u64> = (0..n)
            .map(|v| {
                let mut nb: Vec<u64> = lists[v].iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                nb.into_iter().fold(mix(colors[v], 0xabc), mix)
            })
            .collect();
        let c = next.iter().collect::<BTreeSet<_>>().len();
        colors = next;
        if c == classes {
            break;
        }
        classes = c;
    }
    colors
}

/// Enumerate isomorphisms `a → b` as maps `map[node of a] = node of b`.
/// `visit` returns `false` to stop the search.
pub fn for_each_isomorphism<F>(a: &SimpleGraph, b: &SimpleGraph, mut visit: F)
where
    F: FnMut(&[usize]) -> bool,
{
    let n = a.n();
    if n != b.n() || a.edge_count() != b.edge_count() {
        return;
    }
    if n == 0 {
        visit(&[]);
        return;
    }
    let ca = refined_colors(a);
    let cb = refined_colors(b);
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return;
    }
    // Order: rarest colour first, then BFS so each node has a mapped neighbour.
    let mut freq: HashMap<u64, usize> = HashMap::new();
    for &c in &ca {
        *freq.entry(c).or_default() += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = 0u64;
    while order.len() < n {
        let start = (0..n)
            .filter(|&v| seen >> v & 1 == 0)
            .min_by_key(|&v| (freq[&ca[v]], v))
            .unwrap();
        seen |= 1 << start;
        let mut q = VecDeque::from([start]);
        while let Some(u) = q.pop_front() {
            order.push(u);
            for w in a.neighbors(u) {
                if seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    q.push_back(w);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    let mut stop = false;
    iso_rec(a, b, &ca, &cb, &order, 0, &mut map, &mut used, &mut visit, &mut stop);
}

#[allow(clippy::too_many_arguments)]
fn iso_rec<F: FnMut(&[usize]) -> bool>(
    a: &SimpleGraph,
    b: &SimpleGraph,
    ca: &[u64],
    cb: &[u64],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut u64,
    visit: &mut F,
    stop: &mut bool,
) {
    if depth == order.len() {
        if !visit(map) {
            *stop = true;
        }
        return;
    }
    let v = order[depth];
    for w in 0..b.n() {
        if *used >> w & 1 == 1 || cb[w] != ca[v] {
            continue;
        }
        let ok = order[..depth]
            .iter()
            .all(|&u| a.has_edge(u, v) == b.has_edge(map[u], w));
        if !ok {
            continue;
        }
        map[v] = w;
        *used |= 1 << w;
        iso_rec(a, b, ca, cb, order, depth + 1, map, used, visit, stop);
        *used &= !(1 << w);
        map[v] = usize::MAX;
        if *stop {
            return;
        }
    }
}

pub fn find_isomorphism(a: &SimpleGraph, b: &SimpleGraph) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_isomorphism(a, b, |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

pub fn are_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    find_isomorphism(a, b).is_some()
}

fn perm_order(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut ord = 1usize;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        ord = lcm(ord, len);
    }
    ord
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn perm_pow(p: &[usize], k: usize) -> Vec<usize> {
    (0..p.len())
        .map(|mut x| {
            for _ in 0..k {
                x = p[x];
            }
            x
        })
        .collect()
}

/// Some automorphism of order exactly three, or `None` if none exists.
pub fn has_order3_automorphism(g: &SimpleGraph) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_isomorphism(g, g, |m| {
        let ord = perm_order(m);
        if ord % 3 == 0 {
            found = Some(perm_pow(m, ord / 3));
            false
        } else {
            true
        }
    });
    found
}

/// Number of automorphisms.
pub fn automorphism_count(g: &SimpleGraph) -> usize {
    let mut count = 0;
    for_each_isomorphism(g, g, |_| {
        count += 1;
        true
    });
    count
}

/// Canonical adjacency code: lexicographically least sequence of
/// "adjacent to earlier positions" rows over colour-respecting orderings.
pub fn canonical_form(g: &SimpleGraph) -> Vec<u64> {
    let n = g.n();
    let colors = refined_colors(g);
    let mut palette: Vec<u64> = colors.clone();
    palette.sort_unstable();
    palette.dedup();
    // Cell index of each node, cells ordered by colour value.
    let cell: Vec<usize> = colors
        .iter()
        .map(|c| palette.binary_search(c).unwrap())
        .collect();
    let mut slots: Vec<usize> = cell.clone();
    slots.sort_unstable();
    let mut best: Option<Vec<u64>> = None;
    let mut code = Vec::with_capacity(n);
    let mut placed = Vec::with_capacity(n);
    canon_rec(g, &cell, &slots, &mut placed, &mut code, &mut best);
    let mut out = vec![n as u64];
    out.extend(best.unwrap_or_default());
    out
}

fn canon_rec(
    g: &SimpleGraph,
    cell: &[usize],
    slots: &[usize],
    placed: &mut Vec<usize>,
    code: &mut Vec<u64>,
    best: &mut Option<Vec<u64>>,
) {
    let depth = placed.len();
    if depth == g.n() {
        if best.as_ref().is_none_or(|b| code.as_slice() < b.as_slice()) {
            *best = Some(code.clone());
        }
        return;
    }
    for v in 0..g.n() {
        if cell[v] != slots[depth] || placed.contains(&v) {
            continue;
        }
        let row = placed
            .iter()
            .enumerate()
            .fold(0u64, |m, (j, &u)| if g.has_edge(u, v) { m | 1 << j } else { m });
        code.push(row);
        let prune = best
            .as_ref()
            .is_some_and(|b| code.as_slice() > &b[..=depth]);
        if !prune {
            placed.push(v);
            canon_rec(g, cell, slots, placed, code, best);
            placed.pop();
        }
        code.pop();
    }
}

/// Family of a 2-connected graph with `|E| = |V| + 2` and an order-3 automorphism.
pub fn classify(g: &SimpleGraph) -> GraphFamilyId {
    let n = g.n();
    if g.edge_count() != n + 2 || !g.is_two_connected() || has_order3_automorphism(g).is_none() {
        return GraphFamilyId::Neither;
    }
    predicted_families(n)
        .into_iter()
        .find(|id| id.build().is_ok_and(|h| are_isomorphic(g, &h)))
        .unwrap_or(GraphFamilyId::Neither)
}

/// Family members with `n` nodes that the classification theorem allows.
pub fn predicted_families(n: usize) -> Vec<GraphFamilyId> {
    let mut out = Vec::new();
    if (n + 2) % 3 == 0 {
        let total = (n + 2) / 3;
        for r in 1..total {
            out.push(GraphFamilyId::G { r, s: total - r });
        }
    }
    for r in 1..=n / 3 {
        let s = n - 3 * r;
        if s >= 2 {
            out.push(GraphFamilyId::T { r, s });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    Exhaustive,
    Subdivision,
}

/// One isomorphism class found by the oracle.
#[derive(Clone, Debug, Serialize)]
pub struct OracleClass {
    pub family: GraphFamilyId,
    pub edges: Vec<(usize, usize)>,
    pub degree_sequence: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub mode: OracleMode,
    /// Labelled graphs (exhaustive) or weighted base subdivisions inspected.
    pub scanned: u64,
    /// Inspected objects that are 2-connected with an order-3 automorphism.
    pub qualifying: u64,
    pub classes: Vec<OracleClass>,
    pub predicted: Vec<GraphFamilyId>,
    pub matches_prediction: bool,
    pub notes: Vec<String>,
}

pub const EXHAUSTIVE_LIMIT: usize = 8;

/// Enumerate, up to isomorphism, all 2-connected graphs with `n` nodes,
/// `n + 2` edges and an order-3 automorphism, and compare with the families.
pub fn oracle_classification(n: usize, mode: OracleMode, exec: Exec) -> Result<OracleReport> {
    let (scanned, qualifying, graphs) = match mode {
        OracleMode::Exhaustive => exhaustive_scan(n, exec)?,
        OracleMode::Subdivision => subdivision_scan(n, exec)?,
    };
    let mut classes: Vec<OracleClass> = graphs
        .iter()
        .map(|g| OracleClass {
            family: classify(g),
            edges: g.edges(),
            degree_sequence: {
                let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
                d.sort_unstable_by(|a, b| b.cmp(a));
                d
            },
        })
        .collect();
    classes.sort_by(|a, b| a.family.cmp(&b.family).then(a.edges.cmp(&b.edges)));
    let predicted = predicted_families(n);
    let found: Vec<GraphFamilyId> = classes.iter().map(|c| c.family).collect();
    let mut notes = Vec::new();
    for r in 1..=n / 3 {
        if 3 * r + 1 == n && r >= 2 {
            notes.push(format!(
                "T({r},1) excluded: its node x1 is an articulation point"
            ));
        }
    }
    let matches_prediction = found == predicted;
    Ok(OracleReport {
        n,
        mode,
        scanned,
        qualifying,
        classes,
        predicted,
        matches_prediction,
        notes,
    })
}

fn qualifies(g: &SimpleGraph) -> bool {
    g.is_two_connected() && has_order3_automorphism(g).is_some()
}

type ScanResult = (u64, u64, Vec<SimpleGraph>);

fn exhaustive_scan(n: usize, exec: Exec) -> Result<ScanResult> {
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::Scale(format!(
            "exhaustive mode supports n <= {EXHAUSTIVE_LIMIT}; use subdivision mode for n = {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let k = n + 2;
    if n < 3 || k > pairs.len() {
        return Ok((0, 0, Vec::new()));
    }
    // Partition by the first chosen edge.
    let parts = par::map_range(exec, pairs.len() - k + 1, |first| {
        let mut scanned = 0u64;
        let mut qualifying = 0u64;
        let mut found: BTreeMap<Vec<u64>, SimpleGraph> = BTreeMap::new();
        let mut chosen = vec![first];
        let mut deg = vec![0usize; n];
        deg[pairs[first].0] += 1;
        deg[pairs[first].1] += 1;
        scan_rec(
            &pairs,
            k,
            first + 1,
            &mut chosen,
            &mut deg,
            &mut |edges: &[usize]| {
                scanned += 1;
                let g = SimpleGraph::from_edges(
                    n,
                    &edges.iter().map(|&e| pairs[e]).collect::<Vec<_>>(),
                )
                .unwrap();
                if (0..n).any(|v| g.degree(v) < 2) || !qualifies(&g) {
                    return;
                }
                qualifying += 1;
                found.entry(canonical_form(&g)).or_insert(g);
            },
        );
        (scanned, qualifying, found)
    });
    let mut merged: BTreeMap<Vec<u64>, SimpleGraph> = BTreeMap::new();
    let (mut scanned, mut qualifying) = (0, 0);
    for (s, q, f) in parts {
        scanned += s;
        qualifying += q;
        for (key, g) in f {
            merged.entry(key).or_insert(g);
        }
    }
    Ok((scanned, qualifying, merged.into_values().collect()))
}

fn scan_rec<F: FnMut(&[usize])>(
    pairs: &[(usize, usize)],
    k: usize,
    next: usize,
    chosen: &mut Vec<usize>,
    deg: &mut Vec<usize>,
    leaf: &mut F,
) {
    if chosen.len() == k {
        leaf(chosen);
        return;
    }
    let need = k - chosen.len();
    for e in next..=pairs.len() - need {
        let (a, b) = pairs[e];
        // Nodes below `a` can gain no further edges.
        if (0..a).any(|v| deg[v] < 2) {
            break;
        }
        chosen.push(e);
        deg[a] += 1;
        deg[b] += 1;
        scan_rec(pairs, k, e + 1, chosen, deg, leaf);
        deg[a] -= 1;
        deg[b] -= 1;
        chosen.pop();
    }
}

/// Loopless multigraph given by an edge list (pairs may repeat).
#[derive(Clone, Debug, PartialEq, Eq)]
struct BaseGraph {
    k: usize,
    edges: Vec<(usize, usize)>,
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !cur.contains(&i) {
                cur.push(i);
                rec(k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut out);
    out
}

/// 2-connected loopless multigraphs with minimum degree 3 and `|E| = |V| + 2`.
fn base_multigraphs() -> Vec<BaseGraph> {
    let mut out: Vec<BaseGraph> = Vec::new();
    // Degree sum 2|V| + 4 with all degrees >= 3 forces |V| <= 4.
    for k in 2..=4usize {
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .collect();
        let m = k + 2;
        let perms = permutations(k);
        let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
        let mut mult = vec![0usize; pairs.len()];
        compositions(m, pairs.len(), &mut mult, 0, &mut |mult| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .zip(mult)
                .flat_map(|(&p, &c)| std::iter::repeat_n(p, c))
                .collect();
            let mut deg = vec![0; k];
            for &(a, b) in &edges {
                deg[a] += 1;
                deg[b] += 1;
            }
            if deg.iter().any(|&d| d < 3) {
                return;
            }
            let mut lists = vec![Vec::new(); k];
            for &(a, b) in &edges {
                if !lists[a].contains(&b) {
                    lists[a].push(b);
                    lists[b].push(a);
                }
            }
            if !is_biconnected(&lists) {
                return;
            }
            let key = perms
                .iter()
                .map(|p| {
                    let mut e: Vec<(usize, usize)> = edges
                        .iter()
                        .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                        .collect();
                    e.sort_unstable();
                    e
                })
                .min()
                .unwrap();
            if seen.insert(key.clone()) {
                out.push(BaseGraph { k, edges: key });
            }
        });
    }
    out
}

fn compositions<F: FnMut(&[usize])>(
    total: usize,
    parts: usize,
    cur: &mut Vec<usize>,
    idx: usize,
    f: &mut F,
) {
    if idx + 1 == parts {
        cur[idx] = total;
        f(cur);
        return;
    }
    for c in 0..=total {
        cur[idx] = c;
        compositions(total - c, parts, cur, idx + 1, f);
    }
}

/// Canonical key and automorphism-group order of a length-weighted base multigraph.
fn weighted_key_and_order(
    base: &BaseGraph,
    lengths: &[usize],
    perms: &[Vec<usize>],
) -> (Vec<(usize, usize, usize)>, usize) {
    let mut own: Vec<(usize, usize, usize)> = base
        .edges
        .iter()
        .zip(lengths)
        .map(|(&(a, b), &l)| (a, b, l))
        .collect();
    own.sort_unstable();
    let mut key: Option<Vec<(usize, usize, usize)>> = None;
    let mut stabilisers = 0usize;
    for p in perms {
        let mut e: Vec<(usize, usize, usize)> = own
            .iter()
            .map(|&(a, b, l)| (p[a].min(p[b]), p[a].max(p[b]), l))
            .collect();
        e.sort_unstable();
        if e == own {
            stabilisers += 1;
        }
        if key.as_ref().is_none_or(|k| e < *k) {
            key = Some(e);
        }
    }
    let mut kernel = 1usize;
    let mut i = 0;
    while i < own.len() {
        let mut j = i;
        while j < own.len() && own[j] == own[i] {
            j += 1;
        }
        kernel *= (1..=j - i).product::<usize>();
        i = j;
    }
    (key.unwrap(), stabilisers * kernel)
}

fn subdivide(k: usize, weighted: &[(usize, usize, usize)]) -> SimpleGraph {
    let n = k + weighted.iter().map(|e| e.2).sum::<usize>();
    let mut g = SimpleGraph::new(n).unwrap();
    let mut next = k;
    for &(a, b, l) in weighted {
        let mut prev = a;
        for _ in 0..l {
            g.add_edge(prev, next).unwrap();
            prev = next;
            next += 1;
        }
        g.add_edge(prev, b).unwrap();
    }
    g
}

fn subdivision_scan(n: usize, exec: Exec) -> Result<ScanResult> {
    if n > 64 {
        return Err(Error::Scale(format!("{n} nodes exceed the 64-node limit")));
    }
    let bases: Vec<BaseGraph> = base_multigraphs()
        .into_iter()
        .filter(|b| b.k <= n)
        .collect();
    let parts = par::map(exec, &bases, |base| {
        let perms = permutations(base.k);
        let m = base.edges.len();
        let mut lengths = vec![0usize; m];
        let mut scanned = 0u64;
        let mut qualifying = 0u64;
        let mut found: BTreeMap<Vec<(usize, usize, usize)>, SimpleGraph> = BTreeMap::new();
        compositions(n - base.k, m, &mut lengths, 0, &mut |lengths| {
            scanned += 1;
            // Parallel unsubdivided edges would be multi-edges.
            for i in 0..m {
                for j in i + 1..m {
                    if base.edges[i] == base.edges[j] && lengths[i] == 0 && lengths[j] == 0 {
                        return;
                    }
                }
            }
            let (key, order) = weighted_key_and_order(base, lengths, &perms);
            if order % 3 != 0 {
                return;
            }
            qualifying += 1;
            if !found.contains_key(&key) {
                let g = subdivide(base.k, &key);
                found.insert(key, g);
            }
        });
        (scanned, qualifying, found)
    });
    let mut merged = BTreeMap::new();
    let (mut scanned, mut qualifying) = (0, 0);
    for (s, q, f) in parts {
        scanned += s;
        qualifying += q;
        merged.extend(f);
    }
    Ok((scanned, qualifying, merged.into_values().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SimpleGraph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_edges(n, &e).unwrap()
    }

    fn path(n: usize) -> SimpleGraph {
        let e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        SimpleGraph::from_edges(n, &e).unwrap()
    }

    fn k4() -> SimpleGraph {
        let e: Vec<_> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
            .collect();
        SimpleGraph::from_edges(4, &e).unwrap()
    }

    #[test]
    fn g_and_t_sizes() {
        let g = build_g(3, 6).unwrap();
        assert_eq!((g.n(), g.edge_count()), (25, 27));
        let t = build_t(6, 7).unwrap();
        assert_eq!((t.n(), t.edge_count()), (25, 27));
        assert!(are_isomorphic(&build_g(1, 1).unwrap(), &k4()));
    }

    #[test]
    fn node_names_follow_roles() {
        let g = build_g(3, 6).unwrap();
        let z0 = g.node("z0").unwrap();
        let u1 = g.node("u1").unwrap();
        assert!(g.has_edge(z0, u1));
        assert!(g.has_edge(g.node("u8").unwrap(), g.node("v3").unwrap()));
        let t = build_t(6, 7).unwrap();
        assert!(t.has_edge(t.node("x1").unwrap(), t.node("w1").unwrap()));
        assert!(t.has_edge(t.node("u6").unwrap(), t.node("x7").unwrap()));
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(build_g(0, 3), Err(Error::Param(_))));
        assert!(matches!(build_t(2, 0), Err(Error::Param(_))));
    }

    #[test]
    fn two_connectivity() {
        assert!(cycle(5).is_two_connected());
        assert!(!path(5).is_two_connected());
        assert!(build_g(3, 6).unwrap().is_two_connected());
        for r in 2..6 {
            let t = build_t(r, 1).unwrap();
            assert!(!t.is_two_connected(), "T({r},1) has a cut node");
        }
    }

    #[test]
    fn order_three_automorphisms() {
        let g = build_g(3, 6).unwrap();
        let p = has_order3_automorphism(&g).expect("arm rotation");
        assert_eq!(perm_order(&p), 3);
        assert!(has_order3_automorphism(&cycle(4)).is_none());
        assert!(has_order3_automorphism(&cycle(9)).is_some());
        assert_eq!(automorphism_count(&cycle(4)), 8);
    }

    #[test]
    fn classify_round_trips() {
        assert_eq!(
            classify(&build_g(4, 5).unwrap()),
            GraphFamilyId::G { r: 4, s: 5 }
        );
        let mut sub = SimpleGraph::new(5).unwrap();
        for (a, b) in [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (4, 3)] {
            sub.add_edge(a, b).unwrap();
        }
        assert_eq!(classify(&sub), GraphFamilyId::Neither);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let g = build_g(2, 3).unwrap();
        let n = g.n();
        let perm: Vec<usize> = (0..n).map(|i| (i * 5 + 3) % n).collect();
        assert_eq!(canonical_form(&g), canonical_form(&g.permuted(&perm)));
        assert_ne!(canonical_form(&g), canonical_form(&build_g(3, 2).unwrap()));
    }

    #[test]
    fn base_multigraph_census() {
        let bases = base_multigraphs();
        assert!(bases.iter().any(|b| b.k == 2 && b.edges.len() == 4));
        assert!(bases
            .iter()
            .any(|b| b.k == 4 && b.edges == vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]));
    }

    #[test]
    fn exhaustive_rejects_large_n() {
        assert!(matches!(
            oracle_classification(9, OracleMode::Exhaustive, Exec::Sequential),
            Err(Error::Scale(_))
        ));
    }
}
