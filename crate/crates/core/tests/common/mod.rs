#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subexp_core::instances::{DstInstance, Edge, GstInstance, SetCoverInstance, WeightedDigraph};
use subexp_core::Cost;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Costs are multiples of one half in `[0, max_halves / 2]`.
pub fn random_cost(rng: &mut ChaCha8Rng, max_halves: i64) -> Cost {
    Cost::from_micros(rng.gen_range(0..=max_halves) * 500_000)
}

/// Random digraph on `n` vertices in which vertex 0 reaches everything
/// (through a random backbone tree) plus `extra` random arcs.
pub fn random_rooted_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    extra: usize,
    max_halves: i64,
) -> WeightedDigraph {
    let mut order: Vec<usize> = (1..n).collect();
    order.shuffle(rng);
    order.insert(0, 0);
    let mut arcs = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        arcs.push(Edge::new(parent, order[i], random_cost(rng, max_halves)));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            arcs.push(Edge::new(u, v, random_cost(rng, max_halves)));
        }
    }
    WeightedDigraph::new(n, arcs).unwrap()
}

/// Random digraph with no reachability guarantee.
pub fn random_sparse_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    arcs: usize,
    max_halves: i64,
) -> WeightedDigraph {
    let mut out = Vec::new();
    for _ in 0..arcs {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            out.push(Edge::new(u, v, random_cost(rng, max_halves)));
        }
    }
    WeightedDigraph::new(n, out).unwrap()
}

pub fn random_terminals(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..n).collect();
    pool.shuffle(rng);
    pool.truncate(k);
    pool
}

pub fn random_dst(rng: &mut ChaCha8Rng, n: usize, k: usize, extra: usize) -> DstInstance {
    let g = random_rooted_graph(rng, n, extra, 8);
    let terms = random_terminals(rng, n, k);
    DstInstance::new(g, 0, terms).unwrap()
}

pub fn random_gst(rng: &mut ChaCha8Rng, n: usize, groups: usize, extra: usize) -> GstInstance {
    let g = random_sparse_graph(rng, n, n + extra, 8);
    let gs = (0..groups)
        .map(|_| {
            let size = rng.gen_range(1..=3);
            (0..size).map(|_| rng.gen_range(0..n)).collect()
        })
        .collect();
    GstInstance::new(g, 0, gs).unwrap()
}

/// Feasible random Set Cover instance: every element lands in some set.
pub fn random_setcover(rng: &mut ChaCha8Rng, n: usize, m: usize) -> SetCoverInstance {
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); m];
    for e in 0..n {
        sets[rng.gen_range(0..m)].push(e);
        for set in sets.iter_mut() {
            if rng.gen_bool(0.25) {
                set.push(e);
            }
        }
    }
    let costed: Vec<(Vec<usize>, Cost)> = sets
        .into_iter()
        .map(|s| {
            let c = Cost::from_micros(rng.gen_range(1..=8) * 500_000);
            (s, c)
        })
        .collect();
    SetCoverInstance::new(n, costed).unwrap()
}

/// Vertices reachable from `root` using only `arcs`.
pub fn reach(n: usize, root: usize, arcs: &[(usize, usize)]) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &(t, h) in arcs {
            if t == v && !seen[h] {
                seen[h] = true;
                stack.push(h);
            }
        }
    }
    seen
}

/// Cheapest arc subset of `g` in which `ok` holds of the vertices reachable
/// from `root`. With nonnegative costs this is the optimum connected solution.
pub fn exhaustive_min(
    g: &WeightedDigraph,
    root: usize,
    ok: impl Fn(&[bool]) -> bool,
) -> Option<Cost> {
    let arcs = g.arcs();
    assert!(
        arcs.len() <= 16,
        "exhaustive search over at most 2^16 arc subsets"
    );
    let mut best: Option<Cost> = None;
    for mask in 0u32..(1 << arcs.len()) {
        let chosen: Vec<(usize, usize)> = (0..arcs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| arcs[i].endpoints())
            .collect();
        let cost: Cost = (0..arcs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| arcs[i].cost)
            .sum();
        if best.is_some_and(|b| cost >= b) {
            continue;
        }
        if ok(&reach(g.vertex_count(), root, &chosen)) {
            best = Some(cost);
        }
    }
    best
}
