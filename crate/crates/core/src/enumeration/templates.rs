//! The case-analysis search spaces as data: fixed entries, free variables and
//! set-difference slot rules over the `(X, Y)` positions.

use serde::Serialize;

use super::{mask_of, mask_string, phi_mask, v, XYTuple, Z0};
use crate::complex::BitIter;
use crate::error::{Error, Result};
use crate::graph::GraphFamilyId;

/// A 1-based position in `X` or `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Pos {
    X(usize),
    Y(usize),
}

/// A facet expression evaluated on the partially filled tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SetExpr {
    /// `u_k`
    U(usize),
    /// `v_k = Φ(u_k)`
    V(usize),
    /// `u_k ∖ v_k`
    UMinusV(usize),
    /// `v_k ∖ u_k`
    VMinusU(usize),
}

impl SetExpr {
    fn depth(self) -> usize {
        match self {
            SetExpr::U(k) | SetExpr::V(k) | SetExpr::UMinusV(k) | SetExpr::VMinusU(k) => k,
        }
    }

    fn eval(self, x: &[u8; 9], y: &[u8; 9]) -> u64 {
        let mut u = Z0;
        for i in 0..self.depth() {
            u = u & !(1 << x[i]) | 1 << y[i];
        }
        let vk = phi_mask(u);
        match self {
            SetExpr::U(_) => u,
            SetExpr::V(_) => vk,
            SetExpr::UMinusV(_) => u & !vk,
            SetExpr::VMinusU(_) => vk & !u,
        }
    }
}

/// The positions take the values of `source ∖ minus` in some order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlotRule {
    pub positions: Vec<Pos>,
    pub source: SetExpr,
    pub minus: Vec<&'static str>,
}

/// Positions that jointly take one of the listed value tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeVar {
    pub positions: Vec<Pos>,
    pub choices: Vec<Vec<&'static str>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintTemplate {
    pub id: &'static str,
    pub graph: GraphFamilyId,
    pub fixed: Vec<(Pos, &'static str)>,
    pub free: Vec<FreeVar>,
    pub slots: Vec<SlotRule>,
}

/// A concrete candidate or the reason it has no tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Candidate {
    Tuple(XYTuple),
    /// A slot set had the wrong size for its positions.
    Infeasible { slot: usize, size: usize },
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn permutations_of(items: &[u8]) -> Vec<Vec<u8>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

impl ConstraintTemplate {
    pub fn r(&self) -> usize {
        match self.graph {
            GraphFamilyId::G { r, .. } => r,
            _ => unreachable!("templates are for G(r,9−r)"),
        }
    }

    /// Free choices times slot orderings.
    pub fn nominal_count(&self) -> usize {
        self.free.iter().map(|f| f.choices.len()).product::<usize>()
            * self
                .slots
                .iter()
                .map(|s| factorial(s.positions.len()))
                .product::<usize>()
    }

    /// Every position is covered exactly once.
    pub fn is_well_formed(&self) -> bool {
        let mut seen = [[0u8; 9]; 2];
        let mut mark = |p: Pos| match p {
            Pos::X(i) if (1..=9).contains(&i) => seen[0][i - 1] += 1,
            Pos::Y(i) if (1..=9).contains(&i) => seen[1][i - 1] += 1,
            _ => seen[0][0] += 2,
        };
        self.fixed.iter().for_each(|&(p, _)| mark(p));
        self.free.iter().flat_map(|f| &f.positions).for_each(|&p| mark(p));
        self.slots.iter().flat_map(|s| &s.positions).for_each(|&p| mark(p));
        let choices_ok = self
            .free
            .iter()
            .all(|f| f.choices.iter().all(|c| c.len() == f.positions.len()));
        choices_ok && seen.iter().flatten().all(|&c| c == 1)
    }

    /// All concrete candidates, in a fixed order.
    pub fn candidates(&self) -> Vec<Candidate> {
        let mut x = [u8::MAX; 9];
        let mut y = [u8::MAX; 9];
        let put = |x: &mut [u8; 9], y: &mut [u8; 9], p: Pos, val: u8| match p {
            Pos::X(i) => x[i - 1] = val,
            Pos::Y(i) => y[i - 1] = val,
        };
        for &(p, l) in &self.fixed {
            put(&mut x, &mut y, p, v(l) as u8);
        }
        let mut out = Vec::with_capacity(self.nominal_count());
        let combos = self.free.iter().fold(vec![Vec::new()], |acc, f| {
            acc.into_iter()
                .flat_map(|prefix: Vec<usize>| {
                    (0..f.choices.len()).map(move |c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect()
        });
        let slot_orders: usize = self
            .slots
            .iter()
            .map(|s| factorial(s.positions.len()))
            .product();
        for combo in combos {
            let (mut x, mut y) = (x, y);
            for (f, &c) in self.free.iter().zip(&combo) {
                for (&p, l) in f.positions.iter().zip(&f.choices[c]) {
                    put(&mut x, &mut y, p, v(l) as u8);
                }
            }
            let mut value_sets = Vec::new();
            let mut bad = None;
            for (si, s) in self.slots.iter().enumerate() {
                let set = s.source.eval(&x, &y) & !mask_of(&s.minus);
                let vals: Vec<u8> = BitIter(set).map(|i| i as u8).collect();
                if vals.len() != s.positions.len() {
                    bad.get_or_insert((si, vals.len()));
                }
                value_sets.push(vals);
            }
            if let Some((slot, size)) = bad {
                out.extend(std::iter::repeat_n(Candidate::Infeasible { slot, size }, slot_orders));
                continue;
            }
            let orders: Vec<Vec<Vec<u8>>> = value_sets.iter().map(|s| permutations_of(s)).collect();
            for flat in 0..slot_orders {
                let (mut xx, mut yy) = (x, y);
                // mixed radix, last slot fastest
                let mut rest = flat;
                for (s, o) in self.slots.iter().zip(&orders).rev() {
                    let i = rest % o.len();
                    rest /= o.len();
                    for (&p, &val) in s.positions.iter().zip(&o[i]) {
                        put(&mut xx, &mut yy, p, val);
                    }
                }
                out.push(Candidate::Tuple(XYTuple {
                    z0: Z0,
                    x: xx,
                    y: yy,
                    r: self.r(),
                }));
            }
        }
        out
    }
}

/// The templates for one dual graph, or a witness that none are needed.
#[derive(Clone, Debug, Serialize)]
pub struct TemplateSet {
    pub graph: GraphFamilyId,
    pub templates: Vec<ConstraintTemplate>,
    pub witness: Option<String>,
}

fn xs(fixed: &[(usize, &'static str)]) -> Vec<(Pos, &'static str)> {
    fixed.iter().map(|&(i, l)| (Pos::X(i), l)).collect()
}

fn ys(fixed: &[(usize, &'static str)]) -> Vec<(Pos, &'static str)> {
    fixed.iter().map(|&(i, l)| (Pos::Y(i), l)).collect()
}

fn slot(pos: &[Pos], source: SetExpr, minus: &[&'static str]) -> SlotRule {
    SlotRule {
        positions: pos.to_vec(),
        source,
        minus: minus.to_vec(),
    }
}

fn one_of(p: Pos, values: &[&'static str]) -> FreeVar {
    FreeVar {
        positions: vec![p],
        choices: values.iter().map(|&l| vec![l]).collect(),
    }
}

fn joint(ps: &[Pos], values: &[&[&'static str]]) -> FreeVar {
    FreeVar {
        positions: ps.to_vec(),
        choices: values.iter().map(|c| c.to_vec()).collect(),
    }
}

fn template(
    id: &'static str,
    r: usize,
    fixed_x: &[(usize, &'static str)],
    fixed_y: &[(usize, &'static str)],
    free: Vec<FreeVar>,
    slots: Vec<SlotRule>,
) -> ConstraintTemplate {
    let mut fixed = xs(fixed_x);
    fixed.extend(ys(fixed_y));
    ConstraintTemplate {
        id,
        graph: GraphFamilyId::G { r, s: 9 - r },
        fixed,
        free,
        slots,
    }
}

use Pos::{X, Y};

fn dg36() -> Vec<ConstraintTemplate> {
    let free = || vec![one_of(X(3), &["b1", "b2"])];
    let slots = || {
        vec![
            slot(&[X(4), X(5), X(6)], SetExpr::U(3), &["a3", "a4", "a5"]),
            slot(&[Y(7), Y(8), Y(9)], SetExpr::V(3), &["b3", "b4", "b5"]),
        ]
    };
    vec![
        template(
            "dg36-case1",
            3,
            &[(1, "c2"), (2, "c1"), (7, "a4"), (8, "a3"), (9, "a5")],
            &[(1, "a3"), (2, "a4"), (3, "a5"), (4, "b4"), (5, "b5"), (6, "b3")],
            free(),
            slots(),
        ),
        template(
            "dg36-case2",
            3,
            &[(1, "c2"), (2, "c1"), (7, "a3"), (8, "a5"), (9, "a4")],
            &[(1, "a3"), (2, "a4"), (3, "a5"), (4, "b5"), (5, "b3"), (6, "b4")],
            free(),
            slots(),
        ),
    ]
}

const X3X4: [&[&str]; 4] = [&["b1", "a2"], &["b1", "b2"], &["b2", "a1"], &["b2", "b1"]];

fn dg45() -> Vec<ConstraintTemplate> {
    let pair = || joint(&[X(3), X(4)], &X3X4);
    vec![
        template(
            "dg45-t451",
            4,
            &[(1, "c2"), (2, "c1"), (8, "a3"), (9, "a5")],
            &[(1, "a3"), (2, "a4"), (3, "a5"), (5, "b5"), (6, "b3")],
            vec![pair(), one_of(Y(4), &["b4", "c4"])],
            vec![
                slot(&[X(5), X(6), X(7)], SetExpr::UMinusV(4), &["a3", "a5"]),
                slot(&[Y(7), Y(8), Y(9)], SetExpr::VMinusU(4), &["b3", "b5"]),
            ],
        ),
        template(
            "dg45-t4521",
            4,
            &[(1, "c2"), (2, "c1"), (7, "a3"), (9, "a4")],
            &[(1, "a3"), (2, "a4"), (3, "a5"), (5, "b3"), (6, "b4")],
            vec![pair(), one_of(Y(4), &["b5", "c5"])],
            vec![
                slot(&[X(5), X(6), X(8)], SetExpr::UMinusV(4), &["a3", "a4"]),
                slot(&[Y(7), Y(8), Y(9)], SetExpr::VMinusU(4), &["b3", "b4"]),
            ],
        ),
        template(
            "dg45-t4522",
            4,
            &[(1, "c2"), (2, "c1"), (8, "a4"), (9, "a3")],
            &[(1, "a3"), (2, "a4"), (3, "a5"), (5, "b4"), (7, "b3")],
            vec![pair(), one_of(Y(4), &["b5", "c5"])],
            vec![
                slot(&[X(5), X(6), X(7)], SetExpr::UMinusV(4), &["a3", "a4"]),
                slot(&[Y(6), Y(8), Y(9)], SetExpr::VMinusU(4), &["b3", "b4"]),
            ],
        ),
    ]
}

fn dg54() -> Vec<ConstraintTemplate> {
    const X_B1_A1: [(usize, &str); 5] = [(1, "c2"), (2, "b2"), (3, "c1"), (4, "b1"), (5, "a1")];
    const X_A1_B1: [(usize, &str); 5] = [(1, "c2"), (2, "b2"), (3, "c1"), (4, "a1"), (5, "b1")];
    let with = |base: &[(usize, &'static str)], extra: (usize, &'static str)| {
        let mut v = base.to_vec();
        v.push(extra);
        v
    };
    let ys = |y4: &'static str, extra: (usize, &'static str)| {
        vec![(1, "a3"), (2, "a4"), (3, "a5"), (4, y4), extra]
    };
    let a4_slots = || {
        vec![
            slot(&[X(6), X(7), X(8)], SetExpr::UMinusV(5), &["a4"]),
            slot(&[Y(7), Y(8), Y(9)], SetExpr::VMinusU(5), &["b4"]),
        ]
    };
    let a3_far = || {
        vec![
            slot(&[X(6), X(7), X(8)], SetExpr::UMinusV(5), &["a3"]),
            slot(&[Y(6), Y(8), Y(9)], SetExpr::VMinusU(5), &["b3"]),
        ]
    };
    let a3_near = || {
        vec![
            slot(&[X(6), X(7), X(9)], SetExpr::UMinusV(5), &["a3"]),
            slot(&[Y(7), Y(8), Y(9)], SetExpr::VMinusU(5), &["b3"]),
        ]
    };
    let y5_3 = || vec![one_of(Y(5), &["b3", "c3"])];
    let y5_4 = || vec![one_of(Y(5), &["b4", "c4"])];
    vec![
        template("dg54-t541", 5, &with(&X_B1_A1, (9, "a4")), &ys("b5", (6, "b4")), y5_3(), a4_slots()),
        template("dg54-t542", 5, &with(&X_A1_B1, (9, "a4")), &ys("c5", (6, "b4")), y5_3(), a4_slots()),
        template("dg54-t5431", 5, &with(&X_B1_A1, (9, "a3")), &ys("b5", (7, "b3")), y5_4(), a3_far()),
        template("dg54-t5432", 5, &with(&X_B1_A1, (8, "a3")), &ys("b5", (6, "b3")), y5_4(), a3_near()),
        template("dg54-t5441", 5, &with(&X_A1_B1, (9, "a3")), &ys("c5", (7, "b3")), y5_4(), a3_far()),
        template("dg54-t5442", 5, &with(&X_A1_B1, (8, "a3")), &ys("c5", (6, "b3")), y5_4(), a3_near()),
    ]
}

/// For `G(6,3)`: the first six departing labels are `z₀`, so the two orbit
/// trees need position sums `p+q+r` and `i+j+k` of 12 each.
fn dg63_witness() -> String {
    let tree = 10;
    let required = 2 * (tree + 2);
    let available: usize = (1..=6).sum();
    format!("p+q+r+i+j+k: required {required}, available {available}")
}

pub fn templates(graph: GraphFamilyId) -> Result<TemplateSet> {
    let (templates, witness) = match graph {
        GraphFamilyId::G { r: 3, s: 6 } => (dg36(), None),
        GraphFamilyId::G { r: 4, s: 5 } => (dg45(), None),
        GraphFamilyId::G { r: 5, s: 4 } => (dg54(), None),
        GraphFamilyId::G { r: 6, s: 3 } => (Vec::new(), Some(dg63_witness())),
        other => {
            return Err(Error::Graph(format!("no templates for {other}")));
        }
    };
    Ok(TemplateSet {
        graph,
        templates,
        witness,
    })
}

impl SlotRule {
    pub fn describe(&self) -> String {
        let src = match self.source {
            SetExpr::U(k) => format!("u{k}"),
            SetExpr::V(k) => format!("v{k}"),
            SetExpr::UMinusV(k) => format!("(u{k}∖v{k})"),
            SetExpr::VMinusU(k) => format!("(v{k}∖u{k})"),
        };
        format!("{src}∖{{{}}}", mask_string(mask_of(&self.minus)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_templates_well_formed() {
        for g in [(3, 6), (4, 5), (5, 4)] {
            let set = templates(GraphFamilyId::G { r: g.0, s: g.1 }).unwrap();
            for t in &set.templates {
                assert!(t.is_well_formed(), "{}", t.id);
                assert_eq!(t.candidates().len(), t.nominal_count(), "{}", t.id);
            }
        }
    }

    #[test]
    fn template_counts() {
        let c = |r, s| templates(GraphFamilyId::G { r, s }).unwrap();
        let g36 = c(3, 6);
        assert_eq!(g36.templates.len(), 2);
        assert!(g36.templates.iter().all(|t| t.nominal_count() == 72));
        assert_eq!(c(4, 5).templates.len(), 3);
        assert!(c(4, 5).templates.iter().all(|t| t.nominal_count() == 288));
        assert_eq!(c(5, 4).templates.len(), 6);
        let g63 = c(6, 3);
        assert!(g63.templates.is_empty());
        assert_eq!(g63.witness.unwrap(), "p+q+r+i+j+k: required 24, available 21");
        assert!(matches!(
            templates(GraphFamilyId::G { r: 2, s: 7 }),
            Err(Error::Graph(_))
        ));
    }

    #[test]
    fn n1_tuple_among_case1_candidates() {
        let t = XYTuple::from_labels(
            3,
            ["c2", "c1", "b1", "b2", "a2", "a1", "a4", "a3", "a5"],
            ["a3", "a4", "a5", "b4", "b5", "b3", "c2", "b1", "b2"],
        );
        let set = templates(GraphFamilyId::G { r: 3, s: 6 }).unwrap();
        assert!(set.templates[0].candidates().contains(&Candidate::Tuple(t)));
    }
}
