//! Dreyfus–Wagner subset dynamic programming over the metric closure.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instances::{
    ArborescenceSolution, DstInstance, MetricClosure, VertexId, WeightedDigraph,
};

const INF: i64 = i64::MAX;
const NONE: u32 = u32::MAX;

/// Default cap on the number of terminals an exact solve accepts.
pub const DEFAULT_TERMINAL_CAP: usize = 22;

/// Subset DP table: minimum cost of an arborescence rooted at `v` spanning a
/// terminal subset `S`, for every `S` up to a size limit.
///
/// Entries are ordered by `(cost, number of original arcs)`, so among
/// equal-cost trees the table keeps one with the fewest arcs. Remaining ties
/// go to the first candidate in the fixed enumeration order (ascending
/// submask, ascending vertex id).
pub struct DwTable<'c> {
    closure: &'c MetricClosure,
    terminals: Vec<VertexId>,
    max_size: usize,
    n: usize,
    // Indexed by mask * n + v.
    cost: Vec<i64>,
    arcs: Vec<u32>,
    via: Vec<u32>,
    // Best tree at v where v itself joins the subtrees (or is the terminal).
    join_cost: Vec<i64>,
    join_arcs: Vec<u32>,
    split: Vec<u32>,
    work: u64,
}

/// Number of basic DP steps for `k` terminals, `n` vertices and subsets of at most `max_size`.
pub fn estimate_dw_work(k: usize, n: usize, max_size: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for j in 0..=k.min(max_size) {
        if j > 0 {
            binom = binom * (k - j + 1) as u128 / j as u128;
            let splits = if j >= 2 { (1u128 << (j - 1)) - 1 } else { 0 };
            total =
                total.saturating_add(binom.saturating_mul(splits * n as u128 + (n * n) as u128));
        }
    }
    total
}

impl<'c> DwTable<'c> {
    /// Fills the table for all terminal subsets of size at most `max_size`.
    pub fn build(closure: &'c MetricClosure, terminals: &[VertexId], max_size: usize) -> Self {
        let n = closure.vertex_count();
        let k = terminals.len();
        assert!(k < 32, "terminal subsets are indexed by u32 masks");
        let size = (1usize << k) * n;
        let mut t = DwTable {
            closure,
            terminals: terminals.to_vec(),
            max_size: max_size.min(k),
            n,
            cost: vec![INF; size],
            arcs: vec![0; size],
            via: vec![NONE; size],
            join_cost: vec![INF; size],
            join_arcs: vec![0; size],
            split: vec![NONE; size],
            work: 0,
        };
        for v in 0..n {
            t.cost[v] = 0;
            t.join_cost[v] = 0;
            t.via[v] = v as u32;
        }
        for mask in 1u32..(1u32 << k) {
            let size = mask.count_ones() as usize;
            if size > t.max_size {
                continue;
            }
            let base = mask as usize * n;
            if size == 1 {
                let term = terminals[mask.trailing_zeros() as usize];
                t.join_cost[base + term] = 0;
                t.join_arcs[base + term] = 0;
            } else {
                let low = mask & mask.wrapping_neg();
                let rest_bits = mask ^ low;
                // Every unordered split once: the part containing the lowest bit.
                let mut sub_rest = rest_bits;
                loop {
                    sub_rest = (sub_rest.wrapping_sub(1)) & rest_bits;
                    let sub = low | sub_rest;
                    if sub != mask {
                        let other = mask ^ sub;
                        let (sb, ob) = (sub as usize * n, other as usize * n);
                        for v in 0..n {
                            let (c1, c2) = (t.cost[sb + v], t.cost[ob + v]);
                            if c1 == INF || c2 == INF {
                                continue;
                            }
                            let cand = (c1 + c2, t.arcs[sb + v] + t.arcs[ob + v]);
                            if cand < (t.join_cost[base + v], t.join_arcs[base + v]) {
                                t.join_cost[base + v] = cand.0;
                                t.join_arcs[base + v] = cand.1;
                                t.split[base + v] = sub;
                            }
                        }
                        t.work += n as u64;
                    }
                    if sub_rest == 0 {
                        break;
                    }
                }
            }
            for v in 0..n {
                let mut best = (INF, 0u32);
                let mut best_u = NONE;
                for u in 0..n {
                    let jc = t.join_cost[base + u];
                    if jc == INF {
                        continue;
                    }
                    let d = closure.dist_micros(v, u);
                    if d == INF {
                        continue;
                    }
                    let cand = (d + jc, closure.hops_raw(v, u) + t.join_arcs[base + u]);
                    if cand < best {
                        best = cand;
                        best_u = u as u32;
                    }
                }
                t.cost[base + v] = best.0;
                t.arcs[base + v] = best.1;
                t.via[base + v] = best_u;
            }
            t.work += (n * n) as u64;
        }
        t
    }

    pub fn terminals(&self) -> &[VertexId] {
        &self.terminals
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// Number of basic DP steps performed while filling the table.
    pub fn work(&self) -> u64 {
        self.work
    }

    /// Minimum cost of a tree rooted at `v` spanning the terminals in `mask`;
    /// `None` when infeasible or outside the computed size range.
    pub fn cost(&self, v: VertexId, mask: u32) -> Option<Cost> {
        if mask.count_ones() as usize > self.max_size {
            return None;
        }
        let c = self.cost[mask as usize * self.n + v];
        (c != INF).then_some(Cost::from_micros(c))
    }

    /// Number of original arcs in the tree behind `cost(v, mask)`.
    pub fn arc_count(&self, v: VertexId, mask: u32) -> Option<u32> {
        self.cost(v, mask)
            .map(|_| self.arcs[mask as usize * self.n + v])
    }

    /// Closure arcs of the optimal tree rooted at `v` spanning `mask`.
    pub fn closure_tree(&self, v: VertexId, mask: u32) -> Option<Vec<(VertexId, VertexId)>> {
        self.cost(v, mask)?;
        let mut out = Vec::new();
        self.collect(v, mask, &mut out);
        Some(out)
    }

    fn collect(&self, v: VertexId, mask: u32, out: &mut Vec<(VertexId, VertexId)>) {
        if mask == 0 {
            return;
        }
        let u = self.via[mask as usize * self.n + v] as usize;
        if u != v {
            out.push((v, u));
        }
        if mask.count_ones() == 1 {
            return;
        }
        let sub = self.split[mask as usize * self.n + u];
        self.collect(u, sub, out);
        self.collect(u, mask ^ sub, out);
    }

    /// The optimal tree rooted at `v` spanning `mask`, expanded to arcs of `g`
    /// and pruned to an arborescence.
    pub fn tree(
        &self,
        g: &WeightedDigraph,
        v: VertexId,
        mask: u32,
    ) -> Option<ArborescenceSolution> {
        let closure_arcs = self.closure_tree(v, mask)?;
        let required: Vec<VertexId> = (0..self.terminals.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.terminals[i])
            .collect();
        Some(expand_to_arborescence(
            g,
            self.closure,
            v,
            &closure_arcs,
            &required,
        ))
    }
}

/// Expands closure arcs into original arcs and extracts an arborescence
/// rooted at `root` that reaches every vertex in `required`.
///
/// The result uses a subset of the union of the expanded paths, so its cost
/// never exceeds the summed closure cost.
pub fn expand_to_arborescence(
    g: &WeightedDigraph,
    closure: &MetricClosure,
    root: VertexId,
    closure_arcs: &[(VertexId, VertexId)],
    required: &[VertexId],
) -> ArborescenceSolution {
    let mut union = Vec::new();
    for &(u, v) in closure_arcs {
        union.extend(closure.expand(g, u, v).expect("closure arc has a path"));
    }
    ArborescenceSolution::spanning(root, union, required)
}

/// Exact minimum-cost DST solution.
pub fn dw_solve(d: &DstInstance) -> Result<ArborescenceSolution> {
    dw_solve_capped(d, DEFAULT_TERMINAL_CAP)
}

pub fn dw_solve_capped(d: &DstInstance, terminal_cap: usize) -> Result<ArborescenceSolution> {
    let k = d.terminals().len();
    if k > terminal_cap.min(31) {
        return Err(Error::Refused {
            what: "Dreyfus-Wagner terminal count",
            estimate: k as u128,
            cap: terminal_cap.min(31) as u128,
        });
    }
    d.check_feasible()?;
    if k == 0 {
        return Ok(ArborescenceSolution::empty(d.root()));
    }
    let closure = MetricClosure::new(d.graph());
    let table = DwTable::build(&closure, d.terminals(), k);
    let full = (1u32 << k) - 1;
    Ok(table
        .tree(d.graph(), d.root(), full)
        .expect("feasibility was checked"))
}
