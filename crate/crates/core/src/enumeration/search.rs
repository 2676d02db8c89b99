use std::cmp::Ordering;

use serde::Serialize;

use super::templates::Candidate;
use super::{
    arm_structures, centralizer_elements, decode, permute_mask, phi_perm, templates,
    tuple_from_arm, ConstraintTemplate, Perm15, StringRep, XYTuple, N_VERTICES,
};
use crate::complex::{lex_cmp_masks, SimplicialComplex};
use crate::dual::{facet_tree, oriented_labels, path_label_check, DualGraph};
use crate::error::{Error, Result};
use crate::graph::{classify, GraphFamilyId};
use crate::par::{self, Exec};
use crate::topology::{automorphisms, fixed_points, in_kbar, isomorphic};

/// The least member of 𝒞 in an isomorphism class.
#[derive(Clone, Debug)]
pub struct MinimalForm {
    pub tuple: XYTuple,
    pub string_rep: StringRep,
    pub complex: SimplicialComplex,
    /// Relabelings inspected.
    pub relabelings: usize,
}

fn perm_order(p: &[usize]) -> usize {
    let mut q: Vec<usize> = (0..p.len()).collect();
    for k in 1..=p.len() * 6 {
        q = q.iter().map(|&x| p[x]).collect();
        if q.iter().enumerate().all(|(i, &x)| i == x) {
            return k;
        }
    }
    0
}

/// Conjugator sending the orbits of `alpha` onto `Φ₁, …, Φ₅` with `ψ₀αψ₀⁻¹ = Φ`.
fn conjugator(alpha: &[usize]) -> Perm15 {
    let mut psi = [u8::MAX; N_VERTICES];
    let mut orbit = 0u8;
    for o in 0..N_VERTICES {
        if psi[o] != u8::MAX {
            continue;
        }
        let mut x = o;
        for t in 0..3 {
            psi[x] = 3 * orbit + t;
            x = alpha[x];
        }
        orbit += 1;
    }
    psi
}

/// Compare `[ψz] + ψ(arm)` against `best`, bailing out at the first larger facet.
fn relabeled_if_smaller(psi: &Perm15, z: u64, arm: &[u64; 8], best: &Option<StringRep>) -> Option<StringRep> {
    let mut s = [0u64; 9];
    let mut tight = best.is_some();
    for (i, &m) in std::iter::once(&z).chain(arm.iter()).enumerate() {
        s[i] = permute_mask(m, psi);
        if tight {
            match lex_cmp_masks(s[i], best.as_ref().unwrap().0[i]) {
                Ordering::Greater => return None,
                Ordering::Less => tight = false,
                Ordering::Equal => {}
            }
        }
    }
    if tight {
        None
    } else {
        Some(StringRep(s))
    }
}

/// Least string representation over every order-3 fixed-point-free
/// automorphism `α` and every relabeling conjugating `α` to `Φ`.
pub fn minimal_representative(m: &SimplicialComplex, exec: Exec) -> Result<MinimalForm> {
    if m.n() != N_VERTICES || m.dim() != 5 {
        return Err(Error::Class("expected a 5-dimensional complex on 15 vertices".into()));
    }
    let facets: Vec<u64> = m.facets().iter().map(|f| f.0).collect();
    let aut = automorphisms(m);
    let alphas: Vec<&Vec<usize>> = aut
        .elements
        .iter()
        .filter(|a| perm_order(a) == 3 && fixed_points(a).is_empty())
        .collect();
    if alphas.is_empty() {
        return Err(Error::Class(
            "no fixed-point-free automorphism of order 3".into(),
        ));
    }
    let centralizer = centralizer_elements();
    let mut best: Option<(StringRep, usize)> = None;
    let mut relabelings = 0;
    for alpha in alphas {
        let (z, r, arms) = arm_structures(&facets, |mask| {
            crate::complex::BitIter(mask).fold(0u64, |acc, i| acc | 1 << alpha[i])
        })?;
        let psi0 = conjugator(alpha);
        let chunks: Vec<&[Perm15]> = centralizer.chunks(243).collect();
        let local = par::map(exec, &chunks, |chunk| {
            let mut cur: Option<StringRep> = None;
            for c in chunk.iter() {
                let psi: Perm15 = std::array::from_fn(|x| c[psi0[x] as usize]);
                for arm in &arms {
                    if let Some(s) = relabeled_if_smaller(&psi, z, arm, &cur) {
                        cur = Some(s);
                    }
                }
            }
            cur
        });
        relabelings += centralizer.len();
        for s in local.into_iter().flatten() {
            if best.as_ref().is_none_or(|(b, _)| s < *b) {
                best = Some((s, r));
            }
        }
    }
    let (rep, r) = best.expect("at least one relabeling");
    let arm: [u64; 8] = std::array::from_fn(|i| rep.0[i + 1]);
    let tuple = tuple_from_arm(rep.0[0], r, &arm, super::phi_mask(arm[r - 1]));
    Ok(MinimalForm {
        complex: decode(&tuple)?,
        tuple,
        string_rep: rep,
        relabelings,
    })
}

/// Whether the tuple's own arm string is the least in its isomorphism class.
pub fn is_minimal(t: &XYTuple, exec: Exec) -> Result<bool> {
    let m = decode(t)?;
    let own = t.string_rep_of_arm()?;
    Ok(minimal_representative(&m, exec)?.string_rep == own)
}

/// A member of 𝒞 that passed every check of a template search.
#[derive(Clone, Debug, Serialize)]
pub struct Survivor {
    pub tuple: XYTuple,
    pub string_rep: StringRep,
    #[serde(skip)]
    pub complex: SimplicialComplex,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchReport {
    pub template: String,
    pub graph: String,
    pub candidates: usize,
    pub infeasible: usize,
    pub chain_errors: usize,
    pub degenerate: usize,
    pub not_member: usize,
    pub graph_mismatch: usize,
    pub validator_failures: usize,
    pub members: usize,
    pub non_minimal: usize,
    pub survivors: Vec<Survivor>,
}

enum Outcome {
    Infeasible,
    Chain,
    Degenerate,
    NotMember,
    GraphMismatch,
    ValidatorFailure,
    NonMinimal,
    Survivor(Box<Survivor>),
}

/// The structural lemmas that every member of 𝒞 satisfies.
pub(crate) fn structural_validators(m: &SimplicialComplex, t: &XYTuple) -> bool {
    let lambda = DualGraph::of(m);
    let d = m.dim();
    let tree_size = m.n() - d;
    let mut seen_trees = Vec::new();
    for x in m.vertices() {
        let tree = facet_tree(&lambda, x);
        if !tree.is_tree() || tree.nodes.len() != tree_size {
            return false;
        }
        if tree.leaves().iter().any(|&l| lambda.degree(l) > 2) {
            return false;
        }
        for &root in &tree.nodes {
            match oriented_labels(&lambda, &tree, root) {
                Ok(ol) if ol.holds() => {}
                _ => return false,
            }
        }
        seen_trees.push(tree.nodes);
    }
    seen_trees.sort();
    seen_trees.dedup();
    if seen_trees.len() != m.n() {
        return false;
    }
    let Ok(arm) = t.arm() else { return false };
    let path: Option<Vec<usize>> = std::iter::once(t.z0)
        .chain(arm[..t.r].iter().copied())
        .map(|f| lambda.index_of(f))
        .collect();
    match path.map(|p| path_label_check(&lambda, d, &p)) {
        Some(Ok(rep)) => rep.holds(),
        _ => false,
    }
}

fn evaluate(c: &Candidate, graph: GraphFamilyId, exec: Exec) -> Outcome {
    let t = match c {
        Candidate::Infeasible { .. } => return Outcome::Infeasible,
        Candidate::Tuple(t) => t,
    };
    let m = match decode(t) {
        Ok(m) => m,
        Err(Error::Degenerate(_)) => return Outcome::Degenerate,
        Err(_) => return Outcome::Chain,
    };
    if !in_kbar(&m, true) {
        return Outcome::NotMember;
    }
    if !DualGraph::of(&m).to_simple_graph().is_ok_and(|g| classify(&g) == graph) {
        return Outcome::GraphMismatch;
    }
    let phi: Vec<usize> = phi_perm().iter().map(|&p| p as usize).collect();
    if !fixed_points(&phi).is_empty() || !structural_validators(&m, t) {
        return Outcome::ValidatorFailure;
    }
    let own = t.string_rep_of_arm().expect("decoded tuple");
    match minimal_representative(&m, exec) {
        Ok(min) if min.string_rep == own => Outcome::Survivor(Box::new(Survivor {
            tuple: *t,
            string_rep: own,
            complex: m,
        })),
        Ok(_) => Outcome::NonMinimal,
        Err(_) => Outcome::ValidatorFailure,
    }
}

/// Evaluate every candidate of a template.
pub fn search(template: &ConstraintTemplate, exec: Exec) -> SearchReport {
    let candidates = template.candidates();
    let outcomes = par::map(exec, &candidates, |c| evaluate(c, template.graph, Exec::Sequential));
    let mut rep = SearchReport {
        template: template.id.to_string(),
        graph: template.graph.to_string(),
        candidates: candidates.len(),
        ..Default::default()
    };
    for o in outcomes {
        match o {
            Outcome::Infeasible => rep.infeasible += 1,
            Outcome::Chain => rep.chain_errors += 1,
            Outcome::Degenerate => rep.degenerate += 1,
            Outcome::NotMember => rep.not_member += 1,
            Outcome::GraphMismatch => rep.graph_mismatch += 1,
            Outcome::ValidatorFailure => rep.validator_failures += 1,
            Outcome::NonMinimal => {
                rep.members += 1;
                rep.non_minimal += 1;
            }
            Outcome::Survivor(s) => {
                rep.members += 1;
                rep.survivors.push(*s);
            }
        }
    }
    rep.survivors.sort_by(|a, b| a.string_rep.cmp(&b.string_rep));
    rep.survivors.dedup_by(|a, b| a.string_rep == b.string_rep);
    rep
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphTally {
    pub graph: String,
    pub witness: Option<String>,
    pub templates: Vec<SearchReport>,
    pub classes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub graphs: Vec<GraphTally>,
    pub total_classes: usize,
    /// Minimal members, sorted by string representation.
    pub classes: Vec<Survivor>,
}

pub const DUAL_GRAPHS: [GraphFamilyId; 4] = [
    GraphFamilyId::G { r: 3, s: 6 },
    GraphFamilyId::G { r: 4, s: 5 },
    GraphFamilyId::G { r: 5, s: 4 },
    GraphFamilyId::G { r: 6, s: 3 },
];

/// Run the template searches for the given graphs and merge the survivors.
pub fn enumerate_all(graphs: &[GraphFamilyId], exec: Exec) -> Result<EnumerationReport> {
    let mut tallies = Vec::new();
    let mut all: Vec<Survivor> = Vec::new();
    for &g in graphs {
        let set = templates(g)?;
        let reports: Vec<SearchReport> = set.templates.iter().map(|t| search(t, exec)).collect();
        let mut found: Vec<Survivor> = reports.iter().flat_map(|r| r.survivors.clone()).collect();
        found.sort_by(|a, b| a.string_rep.cmp(&b.string_rep));
        found.dedup_by(|a, b| a.string_rep == b.string_rep);
        tallies.push(GraphTally {
            graph: g.to_string(),
            witness: set.witness,
            templates: reports,
            classes: found.len(),
        });
        all.extend(found);
    }
    all.sort_by(|a, b| a.string_rep.cmp(&b.string_rep));
    // Minimal members are unique per class; confirm with full isomorphism tests.
    let mut classes: Vec<Survivor> = Vec::new();
    for s in all {
        if !classes.iter().any(|c| isomorphic(&c.complex, &s.complex).is_some()) {
            classes.push(s);
        }
    }
    Ok(EnumerationReport {
        total_classes: classes.len(),
        graphs: tallies,
        classes,
    })
}
