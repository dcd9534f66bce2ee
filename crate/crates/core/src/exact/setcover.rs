use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instances::{CoverSolution, SetCoverInstance};

const INF: i64 = i64::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetCoverOracleConfig {
    /// Largest family enumerated subfamily by subfamily.
    pub max_sets_enumerated: usize,
    /// Largest universe handled by the element-mask DP.
    pub max_universe_dp: usize,
    /// Cap on (sets + 1) * 2^n DP cells.
    pub dp_cell_cap: u128,
}

impl Default for SetCoverOracleConfig {
    fn default() -> Self {
        SetCoverOracleConfig {
            max_sets_enumerated: 24,
            max_universe_dp: 20,
            dp_cell_cap: 1 << 26,
        }
    }
}

/// Exactly optimal cover; among optimal covers, the lexicographically
/// smallest sorted index list.
pub fn bruteforce_setcover(sc: &SetCoverInstance) -> Result<CoverSolution> {
    bruteforce_setcover_with(sc, &SetCoverOracleConfig::default())
}

pub fn bruteforce_setcover_with(
    sc: &SetCoverInstance,
    cfg: &SetCoverOracleConfig,
) -> Result<CoverSolution> {
    sc.check_feasible()?;
    let n = sc.universe_size();
    let m = sc.set_count();
    if n == 0 {
        return Ok(CoverSolution::empty());
    }
    let can_enumerate = m <= cfg.max_sets_enumerated.min(40);
    let dp_cells = (m as u128 + 1).saturating_mul(1u128.checked_shl(n as u32).unwrap_or(u128::MAX));
    let can_dp = n <= cfg.max_universe_dp && dp_cells <= cfg.dp_cell_cap;
    let chosen = match (can_enumerate, can_dp) {
        (true, true) if m <= n => enumerate(sc),
        (_, true) => element_dp(sc),
        (true, false) => enumerate(sc),
        (false, false) => {
            return Err(Error::Refused {
                what: "set cover oracle",
                estimate: 1u128.checked_shl(m.min(127) as u32).unwrap_or(u128::MAX),
                cap: 1u128 << cfg.max_sets_enumerated.min(40),
            })
        }
    };
    Ok(sc.cover(chosen).expect("oracle produces a cover"))
}

/// True when the sorted index list of `a` precedes that of `b`.
///
/// Below the lowest differing bit both lists agree. The list holding that
/// bit continues with it; the other list either continues with a larger
/// index (so the holder is smaller) or ends there (so it is a prefix).
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let low = diff.trailing_zeros();
    let other = if a >> low & 1 == 1 { b } else { a };
    let other_continues = (other >> low) >> 1 != 0;
    (a >> low & 1 == 1) == other_continues
}

fn enumerate(sc: &SetCoverInstance) -> Vec<usize> {
    let n = sc.universe_size();
    let m = sc.set_count();
    let words = n.div_ceil(64);
    let bits: Vec<Vec<u64>> = sc
        .sets()
        .iter()
        .map(|s| {
            let mut w = vec![0u64; words];
            for &e in &s.elements {
                w[e / 64] |= 1 << (e % 64);
            }
            w
        })
        .collect();
    let full: Vec<u64> = (0..words)
        .map(|i| {
            let hi = (n - i * 64).min(64);
            if hi == 64 {
                u64::MAX
            } else {
                (1u64 << hi) - 1
            }
        })
        .collect();
    let mut best: Option<(Cost, u64)> = None;
    let mut acc = vec![0u64; words];
    for family in 0u64..(1u64 << m) {
        let cost: Cost = (0..m)
            .filter(|i| family >> i & 1 == 1)
            .map(|i| sc.sets()[i].cost)
            .sum();
        if let Some((bc, bf)) = best {
            if cost > bc || (cost == bc && !lex_less(family, bf)) {
                continue;
            }
        }
        acc.iter_mut().for_each(|w| *w = 0);
        for i in 0..m {
            if family >> i & 1 == 1 {
                for (a, b) in acc.iter_mut().zip(&bits[i]) {
                    *a |= b;
                }
            }
        }
        if acc == full {
            best = Some((cost, family));
        }
    }
    let (_, family) = best.expect("feasible instance has a cover");
    (0..m).filter(|i| family >> i & 1 == 1).collect()
}

fn element_dp(sc: &SetCoverInstance) -> Vec<usize> {
    let n = sc.universe_size();
    let m = sc.set_count();
    let states = 1usize << n;
    let masks: Vec<usize> = sc
        .sets()
        .iter()
        .map(|s| s.elements.iter().fold(0usize, |acc, &e| acc | 1 << e))
        .collect();
    // dp[i][mask]: cheapest way to cover `mask` using sets i..m.
    let mut dp = vec![INF; (m + 1) * states];
    dp[m * states] = 0;
    for i in (0..m).rev() {
        let c = sc.sets()[i].cost.micros();
        for mask in 0..states {
            let skip = dp[(i + 1) * states + mask];
            let rest = dp[(i + 1) * states + (mask & !masks[i])];
            let take = if rest == INF { INF } else { rest + c };
            dp[i * states + mask] = skip.min(take);
        }
    }
    let mut chosen = Vec::new();
    let mut mask = states - 1;
    for i in 0..m {
        if mask == 0 {
            break;
        }
        let rest = dp[(i + 1) * states + (mask & !masks[i])];
        if rest != INF && rest + sc.sets()[i].cost.micros() == dp[i * states + mask] {
            chosen.push(i);
            mask &= !masks[i];
        }
    }
    chosen
}
