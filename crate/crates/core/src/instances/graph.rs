use std::collections::BTreeMap;

use crate::cost::Cost;
use crate::error::{Error, Result};

pub type VertexId = usize;

/// A directed arc with its cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub cost: Cost,
}

impl Edge {
    pub fn new(tail: VertexId, head: VertexId, cost: Cost) -> Self {
        Edge { tail, head, cost }
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.tail, self.head)
    }
}

/// Directed graph with nonnegative arc costs.
///
/// Arcs are kept sorted by `(tail, head)`; parallel arcs collapse to the
/// cheapest one at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    vertex_count: usize,
    arcs: Vec<Edge>,
    // out_start[v]..out_start[v + 1] indexes the arcs leaving v.
    out_start: Vec<usize>,
}

impl WeightedDigraph {
    pub fn new(vertex_count: usize, arcs: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut cheapest: BTreeMap<(VertexId, VertexId), Cost> = BTreeMap::new();
        for arc in arcs {
            if arc.tail >= vertex_count || arc.head >= vertex_count {
                return Err(Error::InvalidInstance(format!(
                    "arc {}->{} references a vertex outside 0..{vertex_count}",
                    arc.tail, arc.head
                )));
            }
            if arc.tail == arc.head {
                return Err(Error::InvalidInstance(format!(
                    "self-loop at vertex {}",
                    arc.tail
                )));
            }
            if arc.cost < Cost::ZERO {
                return Err(Error::InvalidInstance(format!(
                    "arc {}->{} has negative cost",
                    arc.tail, arc.head
                )));
            }
            cheapest
                .entry((arc.tail, arc.head))
                .and_modify(|c| *c = (*c).min(arc.cost))
                .or_insert(arc.cost);
        }
        let arcs: Vec<Edge> = cheapest
            .into_iter()
            .map(|((tail, head), cost)| Edge { tail, head, cost })
            .collect();
        let mut out_start = vec![0usize; vertex_count + 1];
        for arc in &arcs {
            out_start[arc.tail + 1] += 1;
        }
        for v in 0..vertex_count {
            out_start[v + 1] += out_start[v];
        }
        Ok(WeightedDigraph {
            vertex_count,
            arcs,
            out_start,
        })
    }

    /// Builds the arc-pair representation of an undirected graph.
    pub fn from_undirected(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Cost)>,
    ) -> Result<Self> {
        let arcs: Vec<Edge> = edges
            .into_iter()
            .flat_map(|(u, v, c)| [Edge::new(u, v, c), Edge::new(v, u, c)])
            .collect();
        Self::new(vertex_count, arcs)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Edge] {
        &self.arcs
    }

    pub fn out_arcs(&self, v: VertexId) -> &[Edge] {
        &self.arcs[self.out_start[v]..self.out_start[v + 1]]
    }

    pub fn arc_cost(&self, tail: VertexId, head: VertexId) -> Option<Cost> {
        if tail >= self.vertex_count {
            return None;
        }
        let out = self.out_arcs(tail);
        out.binary_search_by_key(&head, |a| a.head)
            .ok()
            .map(|i| out[i].cost)
    }

    /// True when every arc has a reverse arc of equal cost.
    pub fn is_symmetric(&self) -> bool {
        self.arcs
            .iter()
            .all(|a| self.arc_cost(a.head, a.tail) == Some(a.cost))
    }

    /// Vertices reachable from `source`, as a membership vector.
    pub fn reachable_from(&self, source: VertexId) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![source];
        seen[source] = true;
        while let Some(v) = stack.pop() {
            for arc in self.out_arcs(v) {
                if !seen[arc.head] {
                    seen[arc.head] = true;
                    stack.push(arc.head);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(units: i64) -> Cost {
        Cost::from_units(units)
    }

    #[test]
    fn parallel_arcs_collapse_to_minimum() {
        let g = WeightedDigraph::new(
            3,
            [
                Edge::new(0, 1, c(5)),
                Edge::new(0, 1, c(2)),
                Edge::new(1, 2, c(1)),
            ],
        )
        .unwrap();
        assert_eq!(g.arc_count(), 2);
        assert_eq!(g.arc_cost(0, 1), Some(c(2)));
        assert_eq!(g.arc_cost(1, 0), None);
        assert_eq!(g.out_arcs(1).len(), 1);
        assert!(g.out_arcs(2).is_empty());
    }

    #[test]
    fn rejects_self_loops_and_bad_ids() {
        assert!(WeightedDigraph::new(2, [Edge::new(1, 1, c(1))]).is_err());
        assert!(WeightedDigraph::new(2, [Edge::new(0, 2, c(1))]).is_err());
    }

    #[test]
    fn undirected_is_symmetric() {
        let g = WeightedDigraph::from_undirected(3, [(0, 1, c(1)), (1, 2, c(4))]).unwrap();
        assert!(g.is_symmetric());
        assert_eq!(g.arc_count(), 4);
        assert_eq!(g.reachable_from(2), vec![true, true, true]);
    }
}
