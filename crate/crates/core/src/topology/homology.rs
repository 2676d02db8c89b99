use std::collections::HashMap;

use serde::Serialize;

use crate::complex::{BitIter, SimplicialComplex};

/// Betti numbers `β₀..β_d` over `GF(2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(j, &b)| if j % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Rank over `GF(2)` of the matrix whose columns are the given packed bit rows.
pub fn gf2_rank(mut cols: Vec<Vec<u64>>) -> usize {
    // pivot bit -> reduced column holding that pivot
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    for col in cols.iter_mut() {
        loop {
            let Some(lead) = lead_bit(col) else { break };
            match pivots.get(&lead) {
                Some(p) => {
                    for (a, b) in col.iter_mut().zip(p) {
                        *a ^= b;
                    }
                }
                None => {
                    pivots.insert(lead, std::mem::take(col));
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn lead_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| 64 * i + w.trailing_zeros() as usize)
}

/// Rank of `∂_j : C_j → C_{j−1}` for `j ≥ 1`.
fn boundary_rank(lower: &[u64], upper: &[u64]) -> usize {
    let index: HashMap<u64, usize> = lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let words = lower.len().div_ceil(64);
    let cols = upper
        .iter()
        .map(|&f| {
            let mut col = vec![0u64; words];
            for v in BitIter(f) {
                let r = index[&(f & !(1 << v))];
                col[r / 64] |= 1 << (r % 64);
            }
            col
        })
        .collect();
    gf2_rank(cols)
}

/// Unreduced `Z₂` Betti numbers from boundary-matrix ranks.
pub fn z2_betti(k: &SimplicialComplex) -> BettiVector {
    let faces = k.faces();
    let d = k.dim();
    let mut ranks = vec![0usize; d + 2];
    for j in 1..=d {
        ranks[j] = boundary_rank(&faces[j - 1], &faces[j]);
    }
    BettiVector(
        (0..=d)
            .map(|j| faces[j].len() - ranks[j] - ranks[j + 1])
            .collect(),
    )
}
