use std::collections::HashSet;

use log::debug;
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::{commutator, FreeWord};
use crate::error::{Error, Result};
use crate::word::Letter;

/// Default cap on the number of raw commutators formed while building one
/// weight level.
pub const DEFAULT_WEIGHT_CAP: usize = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightLevel {
    pub weight: usize,
    /// Distinct nontrivial reduced words of this weight, in generation order.
    pub words: Vec<FreeWord>,
    /// Raw commutators that reduced to the empty word.
    pub dropped_trivial: usize,
    /// Raw commutators equal to an earlier member.
    pub duplicates: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSets {
    pub rank: usize,
    pub levels: Vec<WeightLevel>,
}

impl WeightSets {
    /// `W_i`, 1-based.
    pub fn level(&self, i: usize) -> &WeightLevel {
        &self.levels[i - 1]
    }
}

/// `f(n) = 3·2^{n-1} − 2`, the depth bound for `W_n`.
pub fn f_bound(n: u32) -> BigUint {
    assert!(n >= 1, "f is defined for n >= 1");
    BigUint::from(3u32) * (BigUint::one() << (n - 1) as usize) - BigUint::from(2u32)
}

/// Maximum reduced length over a nonempty set.
pub fn depth_of_set(words: &[FreeWord]) -> Result<usize> {
    words.iter().map(FreeWord::reduced_len).max().ok_or(Error::EmptySet)
}

pub fn weight_sets(rank: usize, n: usize) -> Result<WeightSets> {
    weight_sets_with_cap(rank, n, DEFAULT_WEIGHT_CAP)
}

/// `W_1 = X ∪ X⁻¹` and `W_i = {[u^{±1}, v^{±1}] : u ∈ W_{i₁}, v ∈ W_{i₂}, i₁+i₂ = i}`
/// in the free group of rank `rank`, deduplicated by reduced word with
/// freely trivial commutators dropped.
pub fn weight_sets_with_cap(rank: usize, n: usize, cap: usize) -> Result<WeightSets> {
    if rank == 0 || n == 0 {
        return Err(Error::Precondition("weight sets need k >= 1 and n >= 1".into()));
    }
    let w1: Vec<FreeWord> = (0..rank as u16)
        .flat_map(|s| [FreeWord::new(vec![Letter::pos(s)]), FreeWord::new(vec![Letter::neg(s)])])
        .collect();
    let mut levels = vec![WeightLevel { weight: 1, words: w1, dropped_trivial: 0, duplicates: 0 }];
    for i in 2..=n {
        let raw: usize = (1..i)
            .map(|i1| levels[i1 - 1].words.len().saturating_mul(levels[i - i1 - 1].words.len()))
            .fold(0usize, |a, b| a.saturating_add(b))
            .saturating_mul(4);
        if raw > cap {
            return Err(Error::CombinatorialCap { cap, what: format!("W_{i} needs {raw} commutators") });
        }
        let mut seen = HashSet::new();
        let mut words = Vec::new();
        let (mut dropped_trivial, mut duplicates) = (0, 0);
        for i1 in 1..i {
            let (us, vs) = (&levels[i1 - 1].words, &levels[i - i1 - 1].words);
            for u in us {
                let ui = u.inverse();
                for v in vs {
                    let vi = v.inverse();
                    for (a, b) in [(u, v), (u, &vi), (&ui, v), (&ui, &vi)] {
                        let c = commutator(a, b);
                        if c.is_empty() {
                            dropped_trivial += 1;
                        } else if seen.insert(c.clone()) {
                            words.push(c);
                        } else {
                            duplicates += 1;
                        }
                    }
                }
            }
        }
        debug!("W_{i}: {} words, {dropped_trivial} trivial dropped, {duplicates} duplicates", words.len());
        levels.push(WeightLevel { weight: i, words, dropped_trivial, duplicates });
    }
    Ok(WeightSets { rank, levels })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthRow {
    pub i: usize,
    pub set_size: usize,
    /// `None` when `W_i` is empty (abelian collapse).
    pub depth: Option<usize>,
    pub f_i: String,
    pub bound_holds: bool,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub rank: usize,
    pub rows: Vec<DepthRow>,
    /// Whether `2(f(i)+f(j)) ≤ f(i+j)` for all `i+j ≤ 2n`.
    pub superadditive_holds: bool,
    /// Pairs `(i, j)`, `i ≤ j`, where the superadditivity inequality is tight.
    pub tight_pairs: Vec<(usize, usize)>,
    pub all_bounds_hold: bool,
}

/// Checks `depth(W_i) ≤ f(i)` for every `i ≤ n` and the superadditivity of
/// `f` for all `i + j ≤ 2n`.
pub fn verify_depth_bound(rank: usize, n: usize) -> Result<DepthReport> {
    let sets = weight_sets(rank, n)?;
    let rows: Vec<DepthRow> = sets
        .levels
        .iter()
        .map(|lvl| {
            let f = f_bound(lvl.weight as u32);
            let depth = depth_of_set(&lvl.words).ok();
            let d = BigUint::from(depth.unwrap_or(0));
            DepthRow {
                i: lvl.weight,
                set_size: lvl.words.len(),
                depth,
                f_i: f.to_string(),
                bound_holds: d <= f,
                equal: depth.is_some() && d == f,
            }
        })
        .collect();
    let mut superadditive_holds = true;
    let mut tight_pairs = Vec::new();
    for i in 1..2 * n {
        for j in i..=2 * n - i {
            let lhs = (f_bound(i as u32) + f_bound(j as u32)) * 2u32;
            let rhs = f_bound((i + j) as u32);
            if lhs > rhs {
                superadditive_holds = false;
            } else if lhs == rhs {
                tight_pairs.push((i, j));
            }
        }
    }
    let all_bounds_hold = superadditive_holds && rows.iter().all(|r| r.bound_holds);
    Ok(DepthReport { rank, rows, superadditive_holds, tight_pairs, all_bounds_hold })
}
