//! Metric (transitive) closure with path recovery.

use super::graph::{Edge, VertexId, WeightedDigraph};
use crate::cost::Cost;

const UNREACHABLE: i64 = i64::MAX;

/// All-pairs shortest paths of a digraph.
///
/// Ties between equal-cost paths are broken by fewer arcs, so every recovered
/// path is simple even when zero-cost cycles exist.
#[derive(Clone, Debug)]
pub struct MetricClosure {
    n: usize,
    dist: Vec<i64>,
    hops: Vec<u32>,
    // next[u * n + v]: the vertex after u on the recovered u->v path.
    next: Vec<u32>,
}

impl MetricClosure {
    pub fn new(g: &WeightedDigraph) -> Self {
        let n = g.vertex_count();
        let mut dist = vec![UNREACHABLE; n * n];
        let mut hops = vec![u32::MAX; n * n];
        let mut next = vec![u32::MAX; n * n];
        for v in 0..n {
            dist[v * n + v] = 0;
            hops[v * n + v] = 0;
            next[v * n + v] = v as u32;
        }
        for arc in g.arcs() {
            let idx = arc.tail * n + arc.head;
            dist[idx] = arc.cost.micros();
            hops[idx] = 1;
            next[idx] = arc.head as u32;
        }
        for k in 0..n {
            for i in 0..n {
                let dik = dist[i * n + k];
                if dik == UNREACHABLE || i == k {
                    continue;
                }
                let hik = hops[i * n + k];
                let nik = next[i * n + k];
                for j in 0..n {
                    let dkj = dist[k * n + j];
                    if dkj == UNREACHABLE || j == k || i == j {
                        continue;
                    }
                    let cand = (dik + dkj, hik + hops[k * n + j]);
                    let idx = i * n + j;
                    if cand < (dist[idx], hops[idx]) {
                        dist[idx] = cand.0;
                        hops[idx] = cand.1;
                        next[idx] = nik;
                    }
                }
            }
        }
        MetricClosure {
            n,
            dist,
            hops,
            next,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Shortest-path cost from `u` to `v`; `Some(0)` when `u == v`.
    pub fn dist(&self, u: VertexId, v: VertexId) -> Option<Cost> {
        let d = self.dist[u * self.n + v];
        (d != UNREACHABLE).then_some(Cost::from_micros(d))
    }

    /// Raw distance in cost micro-units, `i64::MAX` when unreachable.
    #[inline]
    pub(crate) fn dist_micros(&self, u: VertexId, v: VertexId) -> i64 {
        self.dist[u * self.n + v]
    }

    /// Number of original arcs on the recovered shortest path.
    pub fn hops(&self, u: VertexId, v: VertexId) -> Option<u32> {
        self.dist(u, v).map(|_| self.hops[u * self.n + v])
    }

    #[inline]
    pub(crate) fn hops_raw(&self, u: VertexId, v: VertexId) -> u32 {
        self.hops[u * self.n + v]
    }

    /// Vertex sequence of the recovered shortest path, endpoints included.
    pub fn path(&self, u: VertexId, v: VertexId) -> Option<Vec<VertexId>> {
        self.dist(u, v)?;
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            cur = self.next[cur * self.n + v] as usize;
            path.push(cur);
        }
        Some(path)
    }

    /// Expands a closure arc into the original arcs it stands for.
    pub fn expand(&self, g: &WeightedDigraph, u: VertexId, v: VertexId) -> Option<Vec<Edge>> {
        let path = self.path(u, v)?;
        path.windows(2)
            .map(|w| g.arc_cost(w[0], w[1]).map(|c| Edge::new(w[0], w[1], c)))
            .collect()
    }

    /// The closure as a graph: one arc per reachable ordered pair `u != v`.
    pub fn graph(&self) -> WeightedDigraph {
        let n = self.n;
        let arcs = (0..n).flat_map(|u| {
            (0..n).filter_map(move |v| {
                (u != v && self.dist[u * n + v] != UNREACHABLE)
                    .then(|| Edge::new(u, v, Cost::from_micros(self.dist[u * n + v])))
            })
        });
        WeightedDigraph::new(n, arcs).expect("closure arcs are valid by construction")
    }
}

/// Metric closure of `g` together with its path-recovery table.
pub fn metric_closure(g: &WeightedDigraph) -> MetricClosure {
    MetricClosure::new(g)
}
