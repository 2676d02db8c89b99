#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tightnb::SimplicialComplex;

pub const Z0: &str = "a1 b1 c1 a2 b2 c2";

/// `u`-arm rows of the twelve complexes, transcribed independently of the library.
pub const ROWS: [[&str; 8]; 12] = [
    ["a1b1c1a2b2a3", "a1b1a2b2a3a4", "a1a2b2a3a4a5", "a1a2a3a4b4a5", "a1a3a4b4a5b5", "a3b3a4b4a5b5", "c2a3b3b4a5b5", "b1c2b3b4a5b5"],
    ["a1b1c1a2b2a3", "a1b1a2b2a3a4", "a1a2b2a3a4a5", "a1a2a3a4b4a5", "a1a2a3b4a5b5", "a2a3b3b4a5b5", "a3b3b4c4a5b5", "b1b3b4c4a5b5"],
    ["a1b1c1a2b2a3", "a1b1a2b2a3a4", "a1b1a2a3a4a5", "a1a2a3a4b4a5", "a1a2a3b4a5b5", "a2a3b3b4a5b5", "a3b3b4c4a5b5", "b2b3b4c4a5b5"],
    ["a1b1c1a2b2a3", "a1b1a2b2a3a4", "a1b1a2a3a4a5", "b1a2a3a4a5c5", "a2a3b3a4a5c5", "a2a3b3a4b4a5", "a2b3a4b4a5b5", "c1b3a4b4a5b5"],
    ["a1b1c1a2b2a3", "a1b1c1a2a3a4", "a1b1a2a3a4a5", "a1a2a3a4a5b5", "a2a3a4b4a5b5", "a2a3b3b4a5b5", "a2a3b3b4c4b5", "a2b3b4c4b5c5"],
    ["a1b1c1a2b2a3", "a1b1c1a2a3a4", "a1b1a2a3a4a5", "a1a2a3a4a5b5", "a2a3a4b4a5b5", "a2a3b3a4b4b5", "a2a3b3b4b5c5", "a2b3b4c4b5c5"],
    ["a1b1c1a2b2a3", "a1b1c1a2a3a4", "a1b1a2a3a4a5", "b1a2a3a4a5c5", "a2a3a4b4a5c5", "a2a3b3b4a5c5", "a2a3b3b4c4a5", "a2b3b4c4a5b5"],
    ["a1b1c1a2b2a3", "a1b1c1a2a3a4", "a1b1a2a3a4a5", "b1a2a3a4a5c5", "a2a3a4b4a5c5", "a2a3b3a4b4a5", "a2a3b3b4a5b5", "a2b3b4c4a5b5"],
    ["a1b1c1a2b2a3", "a1b1c1a2a3a4", "a1b1a2a3a4a5", "a1a2a3a4a5b5", "a2a3a4c4a5b5", "a2a3b3a4c4b5", "a2a3b3a4b5c5", "a2b3a4b4b5c5"],
    ["a1b1c1a2b2a3", "a1b1c1a2a3a4", "a1b1a2a3a4a5", "b1a2a3a4a5c5", "a2a3a4c4a5c5", "a2a3b3a4c4a5", "a2a3b3a4a5b5", "a2b3a4b4a5b5"],
    ["a1b1c1a2b2a3", "a1b1c1a2a3a4", "a1b1a2a3a4a5", "a1a2a3a4a5b5", "a2a3b3a4a5b5", "a2b3a4b4a5b5", "b2b3a4b4a5b5", "b2b3c3a4b4b5"],
    ["a1b1c1a2b2a3", "a1b1c1a2a3a4", "a1b1a2a3a4a5", "b1a2a3a4a5c5", "a2a3b3a4a5c5", "a2b3a4b4a5c5", "b2b3a4b4a5c5", "b2b3c3a4b4a5"],
];

pub const IDS: [&str; 12] = ["N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8", "N9", "N10", "N11", "N12"];

fn tokens(s: &str) -> Vec<String> {
    let s: String = s.split_whitespace().collect();
    s.as_bytes().chunks(2).map(|c| String::from_utf8(c.to_vec()).unwrap()).collect()
}

fn rotate(label: &str) -> String {
    let (c, i) = label.split_at(1);
    let next = match c {
        "a" => "b",
        "b" => "c",
        _ => "a",
    };
    format!("{next}{i}")
}

/// Facets of row `i` as sorted label sets: `z₀` plus each row and its two rotations.
pub fn table_facets(i: usize) -> BTreeSet<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    out.insert(tokens(Z0).into_iter().collect());
    for row in ROWS[i] {
        let mut f: Vec<String> = tokens(row);
        for _ in 0..3 {
            out.insert(f.iter().cloned().collect::<BTreeSet<_>>());
            f = f.iter().map(|l| rotate(l)).collect();
        }
    }
    out
}

pub fn facet_sets(k: &SimplicialComplex) -> BTreeSet<BTreeSet<String>> {
    k.facets()
        .iter()
        .map(|&f| k.face_labels(f).into_iter().map(str::to_string).collect())
        .collect()
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Paste `m` simplices of dimension `d`, each onto a free ridge with a new vertex.
pub fn random_stacked_ball(rng: &mut ChaCha8Rng, d: usize, m: usize) -> SimplicialComplex {
    let mut facets: Vec<u64> = vec![(1 << (d + 1)) - 1];
    let mut next = d + 1;
    while facets.len() < m {
        let f = facets[rng.gen_range(0..facets.len())];
        let drop = nth_bit(f, rng.gen_range(0..d + 1));
        let ridge = f & !(1 << drop);
        if facets.iter().filter(|&&g| g & ridge == ridge).count() != 1 {
            continue;
        }
        facets.push(ridge | 1 << next);
        next += 1;
    }
    SimplicialComplex::from_masks(&labels(next), facets).unwrap()
}

/// Like `random_stacked_ball`, but the new vertex may be an old one.
/// The flag records whether every pasting used a fresh vertex.
pub fn random_pasting(rng: &mut ChaCha8Rng, d: usize, m: usize) -> (SimplicialComplex, bool) {
    let mut facets: Vec<u64> = vec![(1 << (d + 1)) - 1];
    let mut n = d + 1;
    let mut all_new = true;
    while facets.len() < m {
        let f = facets[rng.gen_range(0..facets.len())];
        let ridge = f & !(1 << nth_bit(f, rng.gen_range(0..d + 1)));
        let v = if rng.gen_bool(0.15) { rng.gen_range(0..n) } else { n };
        if v < n && (ridge >> v & 1 == 1 || facets.contains(&(ridge | 1 << v))) {
            continue;
        }
        if v == n {
            n += 1;
        } else {
            all_new = false;
        }
        facets.push(ridge | 1 << v);
    }
    (SimplicialComplex::from_masks(&labels(n), facets).unwrap(), all_new)
}

fn nth_bit(mut m: u64, k: usize) -> usize {
    for _ in 0..k {
        m &= m - 1;
    }
    m.trailing_zeros() as usize
}

pub fn alternating_sum(f: &[usize]) -> i64 {
    f.iter()
        .enumerate()
        .map(|(j, &x)| if j % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

pub fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
