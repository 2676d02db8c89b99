//! Immutable pure simplicial complexes on at most 64 vertices.
//!
//! Vertices are small integers with a label table; every face is a `u64`
//! bitmask. Facets are kept in lexicographic order of their sorted vertex
//! sequences, so two complexes built from the same facets compare equal and
//! serialize byte-identically.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};

/// Canonical vertex labels, in the order `a1 < b1 < c1 < a2 < … < c5`.
pub const CANONICAL_LABELS: [&str; 15] = [
    "a1", "b1", "c1", "a2", "b2", "c2", "a3", "b3", "c3", "a4", "b4", "c4", "a5", "b5", "c5",
];

/// Position of `token` in [`CANONICAL_LABELS`], if it is one.
pub fn canonical_index(token: &str) -> Option<usize> {
    let b = token.as_bytes();
    if b.len() != 2 || !(b'a'..=b'c').contains(&b[0]) || !(b'1'..=b'5').contains(&b[1]) {
        return None;
    }
    Some(3 * (b[1] - b'1') as usize + (b[0] - b'a') as usize)
}

pub(crate) const MAX_VERTICES: usize = 64;

/// Index of a vertex inside one complex's label table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexId(pub u8);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn bit(self) -> u64 {
        1u64 << self.0
    }
}

/// A face stored as a vertex bitmask; iteration yields vertices in increasing order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Facet(pub u64);

impl Facet {
    pub fn from_vertices<I: IntoIterator<Item = VertexId>>(vs: I) -> Self {
        Facet(vs.into_iter().fold(0, |m, v| m | v.bit()))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 & v.bit() != 0
    }

    pub fn vertices(self) -> impl Iterator<Item = VertexId> {
        BitIter(self.0).map(|i| VertexId(i as u8))
    }

    pub fn intersection(self, other: Facet) -> Facet {
        Facet(self.0 & other.0)
    }

    /// The unique vertex of `self ∖ other`, if there is exactly one.
    pub fn single_difference(self, other: Facet) -> Option<VertexId> {
        let d = self.0 & !other.0;
        (d.count_ones() == 1).then(|| VertexId(d.trailing_zeros() as u8))
    }
}

impl PartialOrd for Facet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Facet {
    /// Lexicographic order of the sorted vertex sequences.
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp_masks(self.0, other.0)
    }
}

impl fmt::Debug for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(BitIter(self.0)).finish()
    }
}

/// Lexicographic comparison of two vertex sets viewed as sorted sequences.
pub fn lex_cmp_masks(a: u64, b: u64) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let low = diff & diff.wrapping_neg();
    let at_or_below = low | (low - 1);
    // Below `low` both sequences agree; the set holding `low` continues with
    // the smaller element unless the other one has already ended.
    if a & low != 0 {
        if b & !at_or_below == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else if a & !at_or_below == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Iterator over set bit positions of a `u64`, lowest first.
#[derive(Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Face counts `f_0 … f_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(j, &f)| if j % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

/// A pure simplicial complex given by its facets.
#[derive(Clone)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<Facet>,
    dim: usize,
    faces: OnceLock<Vec<Vec<u64>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("n", &self.n())
            .field("dim", &self.dim)
            .field("facets", &self.facets.len())
            .finish()
    }
}

fn order_tokens<'a>(tokens: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let mut canon: Vec<usize> = Vec::new();
    let mut other: Vec<&str> = Vec::new();
    for t in tokens {
        match canonical_index(t) {
            Some(i) => {
                if !canon.contains(&i) {
                    canon.push(i);
                }
            }
            None => {
                if !other.contains(&t) {
                    other.push(t);
                }
            }
        }
    }
    canon.sort_unstable();
    canon
        .into_iter()
        .map(|i| CANONICAL_LABELS[i].to_string())
        .chain(other.into_iter().map(str::to_string))
        .collect()
}

impl SimplicialComplex {
    /// Build a complex from facets written as vertex tokens.
    ///
    /// Tokens of the form `[a-c][1-5]` are ordered canonically, any other
    /// token follows in order of first appearance.
    pub fn build<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self> {
        let labels = order_tokens(facets.iter().flatten().map(AsRef::as_ref));
        Self::build_with_labels(labels, facets)
    }

    fn build_with_labels<S: AsRef<str>>(labels: Vec<String>, facets: &[Vec<S>]) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::Empty);
        }
        if labels.len() > MAX_VERTICES {
            return Err(Error::Vertex(format!(
                "{} vertices exceed the supported maximum of {MAX_VERTICES}",
                labels.len()
            )));
        }
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut masks = Vec::with_capacity(facets.len());
        for f in facets {
            let mut m = 0u64;
            for t in f {
                let t = t.as_ref();
                let i = *index
                    .get(t)
                    .ok_or_else(|| Error::Vertex(format!("unknown vertex token `{t}`")))?;
                if m & (1 << i) != 0 {
                    return Err(Error::Vertex(format!("vertex `{t}` repeated in a facet")));
                }
                m |= 1 << i;
            }
            masks.push(m);
        }
        Self::from_masks(&labels, masks)
    }

    /// Build from bitmask facets over `labels`, dropping labels of unused vertices.
    pub fn from_masks<I: IntoIterator<Item = u64>>(labels: &[String], masks: I) -> Result<Self> {
        let masks: Vec<u64> = masks.into_iter().collect();
        if masks.is_empty() || masks.iter().all(|&m| m == 0) {
            return Err(Error::Empty);
        }
        let size = masks[0].count_ones() as usize;
        if let Some(m) = masks.iter().find(|m| m.count_ones() as usize != size) {
            return Err(Error::Purity {
                expected: size,
                found: m.count_ones() as usize,
            });
        }
        let used = masks.iter().fold(0u64, |a, &m| a | m);
        if (64 - used.leading_zeros()) as usize > labels.len() {
            return Err(Error::Vertex("facet refers to a vertex without a label".into()));
        }
        let kept: Vec<usize> = BitIter(used).collect();
        let mut remap = [0u8; 64];
        for (new, &old) in kept.iter().enumerate() {
            remap[old] = new as u8;
        }
        let compact = |m: u64| -> u64 { BitIter(m).fold(0, |a, i| a | 1 << remap[i]) };
        let mut facets: Vec<Facet> = if kept.len() == labels.len() {
            masks.into_iter().map(Facet).collect()
        } else {
            masks.into_iter().map(|m| Facet(compact(m))).collect()
        };
        facets.sort();
        facets.dedup();
        Ok(SimplicialComplex {
            labels: kept.iter().map(|&i| labels[i].clone()).collect(),
            facets,
            dim: size - 1,
            faces: OnceLock::new(),
        })
    }

    /// Complex on the 15 canonical labels from bitmask facets.
    pub fn from_canonical_masks<I: IntoIterator<Item = u64>>(masks: I) -> Result<Self> {
        let labels: Vec<String> = CANONICAL_LABELS.iter().map(|s| s.to_string()).collect();
        Self::from_masks(&labels, masks)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| VertexId(i as u8))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n() as u8).map(VertexId)
    }

    pub fn vertex_mask(&self) -> u64 {
        if self.n() == 64 {
            u64::MAX
        } else {
            (1u64 << self.n()) - 1
        }
    }

    pub fn has_facet(&self, mask: u64) -> bool {
        self.facets.binary_search(&Facet(mask)).is_ok()
    }

    /// `true` if the vertex set `mask` is a face (contained in some facet).
    pub fn is_face(&self, mask: u64) -> bool {
        self.facets.iter().any(|f| f.0 & mask == mask)
    }

    /// Labels of a face, in vertex order.
    pub fn face_labels(&self, face: Facet) -> Vec<&str> {
        face.vertices().map(|v| self.label(v)).collect()
    }

    /// String form of a face, e.g. `a1b1c1a2b2c2`.
    pub fn face_string(&self, face: Facet) -> String {
        self.face_labels(face).concat()
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() < self.n() {
            Ok(())
        } else {
            Err(Error::Vertex(format!("vertex index {} not in complex", v.0)))
        }
    }

    /// All faces, grouped by dimension; computed once and shared.
    pub fn faces(&self) -> &[Vec<u64>] {
        self.faces.get_or_init(|| {
            let mut sets: Vec<std::collections::HashSet<u64>> =
                vec![Default::default(); self.dim + 1];
            for f in &self.facets {
                let bits: Vec<usize> = BitIter(f.0).collect();
                let k = bits.len();
                for sub in 1u64..(1u64 << k) {
                    let mut m = 0u64;
                    for (j, &b) in bits.iter().enumerate() {
                        if sub >> j & 1 == 1 {
                            m |= 1 << b;
                        }
                    }
                    sets[sub.count_ones() as usize - 1].insert(m);
                }
            }
            sets.into_iter()
                .map(|s| {
                    let mut v: Vec<u64> = s.into_iter().collect();
                    v.sort_by(|a, b| lex_cmp_masks(*a, *b));
                    v
                })
                .collect()
        })
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces().iter().map(Vec::len).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// Facets containing `v`.
    pub fn facets_containing(&self, v: VertexId) -> impl Iterator<Item = Facet> + '_ {
        self.facets.iter().copied().filter(move |f| f.contains(v))
    }

    /// Number of facets containing each vertex.
    pub fn facet_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n()];
        for f in &self.facets {
            for i in BitIter(f.0) {
                deg[i] += 1;
            }
        }
        deg
    }

    /// The link of `v`: facets `F ∖ {v}` for `v ∈ F`.
    pub fn link(&self, v: VertexId) -> Result<Self> {
        self.check_vertex(v)?;
        if self.dim == 0 {
            return Err(Error::Empty);
        }
        Self::from_masks(
            &self.labels,
            self.facets_containing(v).map(|f| f.0 & !v.bit()),
        )
    }

    /// The star of `v`: the facets containing `v`.
    pub fn star(&self, v: VertexId) -> Result<Self> {
        self.check_vertex(v)?;
        Self::from_masks(&self.labels, self.facets_containing(v).map(|f| f.0))
    }

    /// Cone with a fresh apex.
    pub fn cone(&self, apex: &str) -> Result<Self> {
        if self.vertex(apex).is_some() {
            return Err(Error::Vertex(format!("cone apex `{apex}` already present")));
        }
        if self.n() >= MAX_VERTICES {
            return Err(Error::Vertex("no room for a cone apex".into()));
        }
        let mut tokens: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        tokens.push(apex);
        let labels = order_tokens(tokens);
        let apex_idx = labels.iter().position(|l| l == apex).unwrap();
        let pos: Vec<usize> = self
            .labels
            .iter()
            .map(|l| labels.iter().position(|m| m == l).unwrap())
            .collect();
        let masks = self.facets.iter().map(|f| {
            BitIter(f.0).fold(1u64 << apex_idx, |a, i| a | 1 << pos[i])
        });
        Self::from_masks(&labels, masks)
    }

    /// The pure `k`-skeleton, generated by all `k`-faces.
    pub fn skeleton(&self, k: usize) -> Result<Self> {
        if k > self.dim {
            return Err(Error::Dimension(format!(
                "skeleton dimension {k} exceeds complex dimension {}",
                self.dim
            )));
        }
        Self::from_masks(&self.labels, self.faces()[k].iter().copied())
    }

    pub fn is_neighborly(&self) -> bool {
        let n = self.n();
        self.dim >= 1 && self.faces()[1].len() == n * (n - 1) / 2
    }

    /// Number of facets containing each codimension-one face.
    pub fn ridge_counts(&self) -> HashMap<u64, u32> {
        let mut counts = HashMap::new();
        for f in &self.facets {
            for i in BitIter(f.0) {
                *counts.entry(f.0 & !(1 << i)).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Every ridge lies in exactly two facets (at most two with `with_boundary`).
    pub fn is_weak_pseudomanifold(&self, with_boundary: bool) -> bool {
        if self.dim == 0 {
            return false;
        }
        self.ridge_counts()
            .values()
            .all(|&c| c == 2 || (with_boundary && c == 1))
    }

    /// Weak pseudomanifold (boundary allowed) with connected dual graph.
    pub fn is_pseudomanifold(&self) -> bool {
        self.is_weak_pseudomanifold(true) && crate::dual::DualGraph::of(self).is_connected()
    }

    /// Image under a vertex permutation given as `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n() {
            return Err(Error::Vertex("permutation length mismatch".into()));
        }
        let masks = self
            .facets
            .iter()
            .map(|f| BitIter(f.0).fold(0u64, |a, i| a | 1 << perm[i]));
        Self::from_masks(&self.labels, masks)
    }

    /// Facet-file text: one facet per line, tokens separated by spaces.
    pub fn to_facet_file(&self) -> String {
        let mut out = String::new();
        if self.labels.iter().any(|l| canonical_index(l).is_none()) {
            out.push_str("# vertices: ");
            out.push_str(&self.labels.join(" "));
            out.push('\n');
        }
        for f in &self.facets {
            out.push_str(&self.face_labels(*f).join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse facet-file text. A `# vertices:` comment fixes the vertex order.
    pub fn parse_facet_file(text: &str) -> Result<Self> {
        let mut declared: Option<Vec<String>> = None;
        let mut facets: Vec<Vec<&str>> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let (body, comment) = match raw.find('#') {
                Some(i) => (&raw[..i], Some(&raw[i + 1..])),
                None => (raw, None),
            };
            if let Some(c) = comment {
                if let Some(rest) = c.trim_start().strip_prefix("vertices:") {
                    declared = Some(rest.split_whitespace().map(str::to_string).collect());
                }
            }
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            if let Some(bad) = tokens
                .iter()
                .find(|t| t.chars().any(|c| c.is_control() || c == ','))
            {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("malformed token `{bad}`"),
                });
            }
            facets.push(tokens);
        }
        match declared {
            Some(labels) => Self::build_with_labels(labels, &facets),
            None => Self::build(&facets),
        }
    }
}
