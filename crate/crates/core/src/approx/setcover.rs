use std::cmp::Ordering;

use super::{cmp_density, density, ApproxConfig, FinalPhase, Round, RoundTrace};
use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instances::{CoverSolution, SetCoverInstance};
use crate::subsets::{binomial, next_combination};

const INF: i64 = i64::MAX;

/// Cap on `(useful sets + 1) * 2^targets` cells for one covering DP.
const DP_CELL_CAP: usize = 1 << 26;

/// Cheapest subfamily covering `targets`, lexicographically smallest among
/// the optimal ones that skip sets contributing nothing.
fn cover_targets(
    sc: &SetCoverInstance,
    targets: &[usize],
    work: &mut u64,
) -> Result<(Cost, Vec<usize>)> {
    let t = targets.len();
    let states = 1usize << t;
    // (set index, trace on targets) for sets touching the targets.
    let traces: Vec<(usize, usize)> = sc
        .sets()
        .iter()
        .enumerate()
        .filter_map(|(i, set)| {
            let mask = targets
                .iter()
                .enumerate()
                .filter(|(_, e)| set.elements.binary_search(e).is_ok())
                .fold(0usize, |m, (j, _)| m | 1 << j);
            (mask != 0).then_some((i, mask))
        })
        .collect();
    let m = traces.len();
    if (m + 1).saturating_mul(states) > DP_CELL_CAP {
        return Err(Error::Refused {
            what: "set cover subset DP cells",
            estimate: ((m + 1) as u128) << t,
            cap: DP_CELL_CAP as u128,
        });
    }
    // dp[j][mask]: cheapest cover of `mask` using traces j..m.
    let mut dp = vec![INF; (m + 1) * states];
    dp[m * states] = 0;
    for j in (0..m).rev() {
        let (i, tr) = traces[j];
        let c = sc.sets()[i].cost.micros();
        for mask in 0..states {
            let skip = dp[(j + 1) * states + mask];
            let rest = dp[(j + 1) * states + (mask & !tr)];
            let take = if rest == INF { INF } else { rest + c };
            dp[j * states + mask] = skip.min(take);
        }
    }
    *work += ((m + 1) * states) as u64;
    let full = states - 1;
    let best = dp[full];
    assert!(best != INF, "callers only pass coverable targets");
    let mut chosen = Vec::new();
    let mut mask = full;
    for (j, &(i, tr)) in traces.iter().enumerate() {
        if mask == 0 {
            break;
        }
        if mask & tr == 0 {
            continue;
        }
        let rest = dp[(j + 1) * states + (mask & !tr)];
        if rest != INF && rest + sc.sets()[i].cost.micros() == dp[j * states + mask] {
            chosen.push(i);
            mask &= !tr;
        }
    }
    Ok((Cost::from_micros(best), chosen))
}

/// Greedy-by-density Set Cover over guessed element subsets.
///
/// Candidates are ordered by `(density, round cost)`, then by the guessed
/// subset in lexicographic order.
pub fn setcover_approx(
    sc: &SetCoverInstance,
    cfg: &ApproxConfig,
) -> Result<(CoverSolution, RoundTrace)> {
    cfg.validate()?;
    sc.check_feasible()?;
    let n = sc.universe_size();
    let m = sc.set_count();
    let s = cfg.subset_size(n);
    let (threshold, capped) = cfg.final_threshold(s);
    let mut trace = RoundTrace {
        subset_size: s,
        capped,
        ..Default::default()
    };
    if n == 0 {
        return Ok((CoverSolution::empty(), trace));
    }
    if n > threshold {
        let estimate = binomial(n, s)
            .saturating_mul(1u128.checked_shl(s as u32).unwrap_or(u128::MAX))
            .saturating_mul(m as u128);
        if estimate > cfg.work_budget {
            return Err(Error::Refused {
                what: "guessed subsets times covering DP",
                estimate,
                cap: cfg.work_budget,
            });
        }
    }

    let mut uncovered: Vec<usize> = (0..n).collect();
    let mut chosen = vec![false; m];
    while uncovered.len() > threshold {
        let u = uncovered.len();
        let size = s.min(u);
        let mut best: Option<(Cost, Vec<usize>, Vec<usize>, Vec<usize>)> = None;
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let guess: Vec<usize> = idx.iter().map(|&i| uncovered[i]).collect();
            let (cost, sets) = cover_targets(sc, &guess, &mut trace.work)?;
            let worth = best
                .as_ref()
                .is_none_or(|b| cmp_density(cost, u, b.0, b.3.len()) != Ordering::Greater);
            if worth {
                let newly: Vec<usize> = uncovered
                    .iter()
                    .copied()
                    .filter(|e| {
                        sets.iter()
                            .any(|&i| sc.sets()[i].elements.binary_search(e).is_ok())
                    })
                    .collect();
                let better = best.as_ref().is_none_or(|b| {
                    cmp_density(cost, newly.len(), b.0, b.3.len()).then(cost.cmp(&b.0))
                        == Ordering::Less
                });
                if better {
                    best = Some((cost, guess, sets, newly));
                }
            }
            if !next_combination(&mut idx, u) {
                break;
            }
        }
        let (cost, guess, sets, newly) = best.expect("at least one guess");
        for &i in &sets {
            chosen[i] = true;
        }
        uncovered.retain(|e| newly.binary_search(e).is_err());
        trace.rounds.push(Round {
            index: trace.rounds.len(),
            root: None,
            guess,
            sets,
            tree_cost: cost,
            connect_cost: Cost::ZERO,
            connect_from: None,
            arcs: Vec::new(),
            density: density(cost, newly.len()),
            newly_covered: newly,
        });
    }

    if !uncovered.is_empty() {
        let (cost, sets) = cover_targets(sc, &uncovered, &mut trace.work)?;
        for &i in &sets {
            chosen[i] = true;
        }
        trace.final_phase = Some(FinalPhase {
            targets: uncovered,
            cost,
        });
    }

    let sol = sc
        .cover((0..m).filter(|&i| chosen[i]))
        .expect("every element was covered");
    Ok((sol, trace))
}

/// Classic greedy: repeatedly take the set of least cost per newly covered
/// element, lowest index on ties.
pub fn greedy_setcover(sc: &SetCoverInstance) -> Result<(CoverSolution, RoundTrace)> {
    sc.check_feasible()?;
    let n = sc.universe_size();
    let mut covered = vec![false; n];
    let mut left = n;
    let mut chosen = Vec::new();
    let mut trace = RoundTrace {
        subset_size: 1,
        ..Default::default()
    };
    while left > 0 {
        let mut best: Option<(usize, usize)> = None;
        for (i, set) in sc.sets().iter().enumerate() {
            let new = set.elements.iter().filter(|&&e| !covered[e]).count();
            trace.work += set.elements.len() as u64;
            if new == 0 {
                continue;
            }
            let better = best.is_none_or(|(b, bn)| {
                cmp_density(set.cost, new, sc.sets()[b].cost, bn) == Ordering::Less
            });
            if better {
                best = Some((i, new));
            }
        }
        let (i, _) = best.expect("feasible instance always has a useful set");
        let set = &sc.sets()[i];
        let newly: Vec<usize> = set
            .elements
            .iter()
            .copied()
            .filter(|&e| !covered[e])
            .collect();
        for &e in &newly {
            covered[e] = true;
        }
        left -= newly.len();
        chosen.push(i);
        trace.rounds.push(Round {
            index: trace.rounds.len(),
            root: None,
            guess: Vec::new(),
            sets: vec![i],
            tree_cost: set.cost,
            connect_cost: Cost::ZERO,
            connect_from: None,
            arcs: Vec::new(),
            density: density(set.cost, newly.len()),
            newly_covered: newly,
        });
    }
    let sol = sc.cover(chosen).expect("greedy covers every element");
    Ok((sol, trace))
}
