//! Class 𝒞: complexes on `{a₁,…,c₅}` with `Φ = ∏(aᵢ,bᵢ,cᵢ)` as an
//! automorphism, their `(z₀, X, Y)` encoding, string representation,
//! normalizer, constraint templates and the search driver.

mod relaxed;
mod search;
mod templates;

pub use relaxed::{relaxed_search, RelaxedReport};
pub use search::{
    enumerate_all, is_minimal, minimal_representative, search, EnumerationReport, GraphTally,
    MinimalForm, SearchReport, Survivor, DUAL_GRAPHS,
};
pub use templates::{
    templates, ConstraintTemplate, FreeVar, Pos, SetExpr, SlotRule, TemplateSet,
};

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::complex::{lex_cmp_masks, BitIter, SimplicialComplex, CANONICAL_LABELS};
use crate::dual::DualGraph;
use crate::error::{Error, Result};
use crate::graph::{classify, GraphFamilyId, SimpleGraph};

pub const N_VERTICES: usize = 15;
pub const ALL: u64 = (1 << N_VERTICES) - 1;
const A_BITS: u64 = 0b001_001_001_001_001;
const B_BITS: u64 = A_BITS << 1;
const C_BITS: u64 = A_BITS << 2;

/// `Φ` applied to a vertex index.
pub fn phi(v: usize) -> usize {
    3 * (v / 3) + (v % 3 + 1) % 3
}

/// `Φ` applied to a vertex mask.
pub fn phi_mask(m: u64) -> u64 {
    ((m & (A_BITS | B_BITS)) << 1) | ((m & C_BITS) >> 2)
}

/// Orbit `Φᵢ` (1-based) as a mask.
pub fn orbit_mask(i: usize) -> u64 {
    0b111 << (3 * (i - 1))
}

/// Vertex index of a canonical label such as `b4`.
pub fn v(label: &str) -> usize {
    crate::complex::canonical_index(label).unwrap_or_else(|| panic!("bad vertex label {label}"))
}

pub fn mask_of(labels: &[&str]) -> u64 {
    labels.iter().fold(0, |m, l| m | 1 << v(l))
}

pub fn mask_string(m: u64) -> String {
    BitIter(m).map(|i| CANONICAL_LABELS[i]).collect()
}

/// Canonical facet masks of a complex on exactly the 15 canonical labels.
pub fn canonical_masks(k: &SimplicialComplex) -> Result<Vec<u64>> {
    if k.n() != N_VERTICES || k.labels().iter().zip(CANONICAL_LABELS).any(|(a, b)| a != b) {
        return Err(Error::Class(
            "vertex set must be exactly a1,b1,c1,…,a5,b5,c5".into(),
        ));
    }
    Ok(k.facets().iter().map(|f| f.0).collect())
}

/// Apply a vertex permutation (`perm[old] = new`) to a mask.
pub fn permute_mask(m: u64, perm: &[u8; N_VERTICES]) -> u64 {
    BitIter(m).fold(0, |acc, i| acc | 1 << perm[i])
}

// ---------------------------------------------------------------------------
// Normalizer of ⟨Φ⟩
// ---------------------------------------------------------------------------

pub type Perm15 = [u8; N_VERTICES];

pub fn identity15() -> Perm15 {
    std::array::from_fn(|i| i as u8)
}

fn compose15(p: &Perm15, q: &Perm15) -> Perm15 {
    std::array::from_fn(|i| p[q[i] as usize])
}

/// `Φ` as a permutation.
pub fn phi_perm() -> Perm15 {
    std::array::from_fn(|i| phi(i) as u8)
}

/// `ΦΓ = ΓΦ^e` for `e ∈ {1, 2}`; returns `e`.
pub fn normalizer_exponent(g: &Perm15) -> Option<u8> {
    let p = phi_perm();
    let p2 = compose15(&p, &p);
    let lhs = compose15(&p, g);
    if lhs == compose15(g, &p) {
        Some(1)
    } else if lhs == compose15(g, &p2) {
        Some(2)
    } else {
        None
    }
}

/// The generators `πᵢ`, `π_{i,j}` and one `γ_{α,β}`.
pub fn normalizer_generators() -> Vec<Perm15> {
    let mut gens = Vec::new();
    for i in 0..5 {
        let mut p = identity15();
        p[3 * i] = (3 * i + 1) as u8;
        p[3 * i + 1] = (3 * i + 2) as u8;
        p[3 * i + 2] = (3 * i) as u8;
        gens.push(p);
    }
    for i in 0..5 {
        for j in i + 1..5 {
            let mut p = identity15();
            for t in 0..3 {
                p[3 * i + t] = (3 * j + t) as u8;
                p[3 * j + t] = (3 * i + t) as u8;
            }
            gens.push(p);
        }
    }
    let mut g = identity15();
    for i in 0..5 {
        g.swap(3 * i, 3 * i + 1);
    }
    gens.push(g);
    gens
}

/// All elements of the normalizer, generated by closure from the generators.
pub fn normalizer_elements() -> Vec<Perm15> {
    let gens = normalizer_generators();
    let id = identity15();
    let mut seen: HashSet<Perm15> = HashSet::from([id]);
    let mut q = VecDeque::from([id]);
    while let Some(p) = q.pop_front() {
        for g in &gens {
            let r = compose15(g, &p);
            if seen.insert(r) {
                q.push_back(r);
            }
        }
    }
    let mut out: Vec<Perm15> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// The 29160 permutations commuting with `Φ`: an orbit permutation and a rotation per orbit.
pub fn centralizer_elements() -> Vec<Perm15> {
    let mut out = Vec::with_capacity(29160);
    for sigma in permutations5() {
        for rot in 0..243usize {
            let mut p = [0u8; N_VERTICES];
            let mut r = rot;
            for (i, &si) in sigma.iter().enumerate() {
                let k = r % 3;
                r /= 3;
                for t in 0..3 {
                    p[3 * i + t] = (3 * si + (t + k) % 3) as u8;
                }
            }
            out.push(p);
        }
    }
    out
}

pub(crate) fn permutations5() -> Vec<[usize; 5]> {
    let mut out = Vec::with_capacity(120);
    let mut cur = [0usize; 5];
    fn rec(d: usize, used: u8, cur: &mut [usize; 5], out: &mut Vec<[usize; 5]>) {
        if d == 5 {
            out.push(*cur);
            return;
        }
        for i in 0..5 {
            if used >> i & 1 == 0 {
                cur[d] = i;
                rec(d + 1, used | 1 << i, cur, out);
            }
        }
    }
    rec(0, 0, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// String representation
// ---------------------------------------------------------------------------

/// `[z₀] + [u₁] + … + [u₈]`, compared facet by facet in vertex order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct StringRep(pub [u64; 9]);

impl Ord for StringRep {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| lex_cmp_masks(*a, *b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for StringRep {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for StringRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|&m| mask_string(m)).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for StringRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StringRep({self})")
    }
}

impl Serialize for StringRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

// ---------------------------------------------------------------------------
// (z₀, X, Y) tuples
// ---------------------------------------------------------------------------

/// `z₀ = a₁b₁c₁a₂b₂c₂`.
pub const Z0: u64 = 0b111_111;

/// The succinct encoding of a class-𝒞 complex with `Λ ≅ G(r, 9−r)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XYTuple {
    pub z0: u64,
    pub x: [u8; 9],
    pub y: [u8; 9],
    pub r: usize,
}

impl fmt::Debug for XYTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for XYTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seq = |s: &[u8; 9]| -> String {
            s.iter()
                .map(|&i| CANONICAL_LABELS[i as usize])
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "G({},{}) z0={} X=({}) Y=({})",
            self.r,
            9 - self.r,
            mask_string(self.z0),
            seq(&self.x),
            seq(&self.y)
        )
    }
}

impl Serialize for XYTuple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let names = |t: &[u8; 9]| -> Vec<&str> { t.iter().map(|&i| CANONICAL_LABELS[i as usize]).collect() };
        let mut st = s.serialize_struct("XYTuple", 4)?;
        st.serialize_field("graph", &GraphFamilyId::G { r: self.r, s: 9 - self.r }.to_string())?;
        st.serialize_field("z0", &mask_string(self.z0))?;
        st.serialize_field("x", &names(&self.x))?;
        st.serialize_field("y", &names(&self.y))?;
        st.end()
    }
}

impl XYTuple {
    /// From label tokens, with `z₀ = a₁b₁c₁a₂b₂c₂`.
    pub fn from_labels(r: usize, x: [&str; 9], y: [&str; 9]) -> Self {
        XYTuple {
            z0: Z0,
            x: x.map(|l| v(l) as u8),
            y: y.map(|l| v(l) as u8),
            r,
        }
    }

    pub fn graph(&self) -> GraphFamilyId {
        GraphFamilyId::G { r: self.r, s: 9 - self.r }
    }

    /// `u₁, …, u₈` of the chain (validated).
    pub fn arm(&self) -> Result<[u64; 8]> {
        if !(1..=8).contains(&self.r) {
            return Err(Error::Param(format!("arm length r = {} outside 1..=8", self.r)));
        }
        if self.z0.count_ones() != 6 || phi_mask(self.z0) != self.z0 {
            return Err(Error::Chain {
                step: 0,
                msg: "z0 must be a Φ-invariant 6-set".into(),
            });
        }
        let mut u = [0u64; 8];
        let mut prev = self.z0;
        for i in 0..8 {
            prev = step(prev, self.x[i], self.y[i], i + 1)?;
            u[i] = prev;
        }
        let close = step(prev, self.x[8], self.y[8], 9)?;
        if close != phi_mask(u[self.r - 1]) {
            return Err(Error::Chain {
                step: 9,
                msg: format!(
                    "(u8 ∖ x9) ∪ y9 = {} differs from Φ(u{}) = {}",
                    mask_string(close),
                    self.r,
                    mask_string(phi_mask(u[self.r - 1]))
                ),
            });
        }
        Ok(u)
    }

    /// The 25 facet masks `{z₀} ∪ {uᵢ, Φuᵢ, Φ²uᵢ}`.
    pub fn facet_masks(&self) -> Result<Vec<u64>> {
        let u = self.arm()?;
        let mut facets = vec![self.z0];
        for &m in &u {
            let p = phi_mask(m);
            facets.extend([m, p, phi_mask(p)]);
        }
        let mut sorted = facets.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != facets.len() {
            return Err(Error::Degenerate(format!(
                "only {} distinct facets among {}",
                sorted.len(),
                facets.len()
            )));
        }
        Ok(facets)
    }

    pub fn string_rep_of_arm(&self) -> Result<StringRep> {
        let u = self.arm()?;
        let mut s = [0u64; 9];
        s[0] = self.z0;
        s[1..].copy_from_slice(&u);
        Ok(StringRep(s))
    }
}

fn step(prev: u64, x: u8, y: u8, i: usize) -> Result<u64> {
    let (xb, yb) = (1u64 << x, 1u64 << y);
    if x as usize >= N_VERTICES || y as usize >= N_VERTICES {
        return Err(Error::Chain {
            step: i,
            msg: "vertex index out of range".into(),
        });
    }
    if prev & xb == 0 {
        return Err(Error::Chain {
            step: i,
            msg: format!("x{i} = {} not in u{}", CANONICAL_LABELS[x as usize], i - 1),
        });
    }
    if prev & yb != 0 {
        return Err(Error::Chain {
            step: i,
            msg: format!("y{i} = {} already in u{}", CANONICAL_LABELS[y as usize], i - 1),
        });
    }
    Ok(prev & !xb | yb)
}

/// Build the complex of a tuple.
pub fn decode(t: &XYTuple) -> Result<SimplicialComplex> {
    SimplicialComplex::from_canonical_masks(t.facet_masks()?)
}

/// The three arm structures of `M` relative to an order-3 automorphism `α`
/// given on masks: the `α`-fixed facet and, for each choice of `u₁` among
/// its neighbours, the arm `u₁ … u₈` running to `α(u_r)`.
pub(crate) fn arm_structures(
    facets: &[u64],
    alpha: impl Fn(u64) -> u64,
) -> Result<(u64, usize, Vec<[u64; 8]>)> {
    let lambda = DualGraph::from_masks(facets.to_vec(), 5);
    let fixed: Vec<usize> = (0..facets.len())
        .filter(|&i| alpha(facets[i]) == facets[i])
        .collect();
    let [z] = fixed[..] else {
        return Err(Error::Graph(format!(
            "expected exactly one invariant facet, found {}",
            fixed.len()
        )));
    };
    if facets.len() != 25 || lambda.edge_count() != 27 || lambda.degree(z) != 3 {
        return Err(Error::Graph("dual graph is not of type G(r,9−r)".into()));
    }
    let mut arms = Vec::with_capacity(3);
    let mut r_found = None;
    for &start in lambda.neighbors(z) {
        let mut path = vec![start];
        let mut prev = z;
        while lambda.degree(*path.last().unwrap()) == 2 {
            let cur = *path.last().unwrap();
            let next = *lambda.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
            prev = cur;
            path.push(next);
            if path.len() > 8 {
                return Err(Error::Graph("arm longer than 8".into()));
            }
        }
        let ur = *path.last().unwrap();
        if lambda.degree(ur) != 3 {
            return Err(Error::Graph("arm does not end at a branch facet".into()));
        }
        let r = path.len();
        let target = lambda
            .index_of(alpha(facets[ur]))
            .ok_or_else(|| Error::Class("α does not preserve the facets".into()))?;
        let outer: Vec<usize> = lambda
            .neighbors(ur)
            .iter()
            .copied()
            .filter(|&w| w != prev)
            .collect();
        let mut chosen = None;
        for &first in &outer {
            let mut p = path.clone();
            let mut pv = ur;
            let mut cur = first;
            while cur != target && lambda.degree(cur) == 2 && p.len() < 8 {
                p.push(cur);
                let next = *lambda.neighbors(cur).iter().find(|&&w| w != pv).unwrap();
                pv = cur;
                cur = next;
            }
            if cur == target && p.len() == 8 {
                chosen = Some(p);
            }
        }
        let p = chosen.ok_or_else(|| {
            Error::Graph("outer path does not reach α(u_r) after 8 facets".into())
        })?;
        if r_found.is_some_and(|x| x != r) {
            return Err(Error::Graph("arms of different lengths".into()));
        }
        r_found = Some(r);
        arms.push(std::array::from_fn(|i| facets[p[i]]));
    }
    Ok((facets[z], r_found.unwrap(), arms))
}

pub(crate) fn tuple_from_arm(z0: u64, r: usize, arm: &[u64; 8], closing: u64) -> XYTuple {
    let mut x = [0u8; 9];
    let mut y = [0u8; 9];
    let mut prev = z0;
    for i in 0..9 {
        let next = if i < 8 { arm[i] } else { closing };
        x[i] = (prev & !next).trailing_zeros() as u8;
        y[i] = (next & !prev).trailing_zeros() as u8;
        prev = next;
    }
    XYTuple { z0, x, y, r }
}

/// Require `Φ ∈ Aut(M)` and `Λ(M) ≅ G(r, 9−r)`.
fn class_structure(m: &SimplicialComplex) -> Result<(Vec<u64>, u64, usize, Vec<[u64; 8]>)> {
    let facets = canonical_masks(m)?;
    if m.dim() != 5 {
        return Err(Error::Class(format!("dimension {} is not 5", m.dim())));
    }
    let set: HashSet<u64> = facets.iter().copied().collect();
    if facets.iter().any(|f| !set.contains(&phi_mask(*f))) {
        return Err(Error::Class("Φ is not an automorphism".into()));
    }
    let lambda = DualGraph::of(m);
    match classify(&lambda.to_simple_graph()?) {
        GraphFamilyId::G { r, s } if r + s == 9 => {}
        other => {
            return Err(Error::Graph(format!(
                "dual graph is {other}, not G(r,9−r)"
            )))
        }
    }
    let (z0, r, arms) = arm_structures(&facets, phi_mask)?;
    Ok((facets, z0, r, arms))
}

/// The tuple of the arm giving the least string representation.
pub fn encode(m: &SimplicialComplex) -> Result<XYTuple> {
    let (_, z0, r, arms) = class_structure(m)?;
    let best = arms
        .iter()
        .min_by(|a, b| arm_rep(z0, a).cmp(&arm_rep(z0, b)))
        .unwrap();
    Ok(tuple_from_arm(z0, r, best, phi_mask(best[r - 1])))
}

fn arm_rep(z0: u64, arm: &[u64; 8]) -> StringRep {
    let mut s = [0u64; 9];
    s[0] = z0;
    s[1..].copy_from_slice(arm);
    StringRep(s)
}

/// `str(M)` minimized over the three arm choices.
pub fn string_rep(m: &SimplicialComplex) -> Result<StringRep> {
    let (_, z0, _, arms) = class_structure(m)?;
    Ok(arms.iter().map(|a| arm_rep(z0, a)).min().unwrap())
}

impl DualGraph {
    pub fn to_simple_graph(&self) -> Result<SimpleGraph> {
        SimpleGraph::from_edges(self.node_count(), self.edges())
    }
}

// ---------------------------------------------------------------------------
// Leave sequence
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeaveSequenceReport {
    /// `m₃, m₄, m₅`: first step whose arriving vertex lies in `Φᵢ`.
    pub m: [Option<usize>; 3],
    /// `n₁, n₂`: first step whose departing vertex lies in `Φᵢ`.
    pub n: [Option<usize>; 2],
    pub arrival_order_ok: bool,
    pub departure_order_ok: bool,
    pub first_arrivals_are_a: bool,
    pub first_departures_are_c: bool,
}

impl LeaveSequenceReport {
    pub fn holds(&self) -> bool {
        self.arrival_order_ok
            && self.departure_order_ok
            && self.first_arrivals_are_a
            && self.first_departures_are_c
    }
}

pub fn leave_sequence_check(t: &XYTuple) -> LeaveSequenceReport {
    let first = |seq: &[u8; 9], orbit: usize| -> Option<usize> {
        seq.iter().position(|&w| w as usize / 3 == orbit - 1).map(|j| j + 1)
    };
    let m = [3, 4, 5].map(|i| first(&t.y, i));
    let n = [1, 2].map(|i| first(&t.x, i));
    let inf = |o: Option<usize>| o.unwrap_or(usize::MAX);
    let arrival_order_ok = inf(m[0]) < inf(m[1]) && inf(m[1]) < inf(m[2]);
    let departure_order_ok = inf(n[1]) < inf(n[0]);
    let first_arrivals_are_a = m
        .iter()
        .zip([3, 4, 5])
        .all(|(mi, i)| mi.is_none_or(|j| t.y[j - 1] as usize == 3 * (i - 1)));
    let first_departures_are_c = n
        .iter()
        .zip([1, 2])
        .all(|(ni, i)| ni.is_none_or(|j| t.x[j - 1] as usize == 3 * (i - 1) + 2));
    LeaveSequenceReport {
        m,
        n,
        arrival_order_ok,
        departure_order_ok,
        first_arrivals_are_a,
        first_departures_are_c,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn n1_tuple() -> XYTuple {
        XYTuple::from_labels(
            3,
            ["c2", "c1", "b1", "b2", "a2", "a1", "a4", "a3", "a5"],
            ["a3", "a4", "a5", "b4", "b5", "b3", "c2", "b1", "b2"],
        )
    }

    #[test]
    fn phi_basics() {
        assert_eq!(phi(v("a1")), v("b1"));
        assert_eq!(phi(v("c5")), v("a5"));
        let u1 = mask_of(&["a1", "b1", "c1", "a2", "b2", "a3"]);
        assert_eq!(phi_mask(u1), mask_of(&["b1", "c1", "a1", "b2", "c2", "b3"]));
        assert_eq!(phi_mask(phi_mask(phi_mask(u1))), u1);
        assert_eq!(phi_mask(Z0), Z0);
    }

    #[test]
    fn decode_n1_first_facet() {
        let t = n1_tuple();
        let u = t.arm().unwrap();
        assert_eq!(mask_string(u[0]), "a1b1c1a2b2a3");
        assert_eq!(t.facet_masks().unwrap().len(), 25);
    }

    #[test]
    fn decode_errors() {
        let mut t = n1_tuple();
        t.x[0] = v("a3") as u8;
        assert!(matches!(decode(&t), Err(Error::Chain { step: 1, .. })));
        let mut t = n1_tuple();
        t.y[0] = v("a1") as u8;
        assert!(matches!(decode(&t), Err(Error::Chain { step: 1, .. })));
    }

    #[test]
    fn encode_round_trip() {
        let t = n1_tuple();
        let m = decode(&t).unwrap();
        assert_eq!(encode(&m).unwrap(), t);
        assert!(leave_sequence_check(&t).holds());
    }

    #[test]
    fn centralizer_commutes() {
        let c = centralizer_elements();
        assert_eq!(c.len(), 29160);
        assert!(c.iter().all(|g| normalizer_exponent(g) == Some(1)));
        let set: HashSet<Perm15> = c.into_iter().collect();
        assert_eq!(set.len(), 29160);
    }
}
