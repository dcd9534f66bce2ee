//! Reductions that let the Steiner-tree solvers serve Set Cover and Group Steiner Tree.

use super::graph::{Edge, VertexId, WeightedDigraph};
use super::problems::{
    ArborescenceSolution, CoverSolution, DstInstance, GstInstance, SetCoverInstance,
};
use crate::cost::Cost;
use crate::error::Result;

/// Star-shaped DST instance built from a Set Cover instance.
///
/// Vertex 0 is the root, vertices `1..=m` stand for the sets and
/// `m + 1..=m + n` for the elements.
#[derive(Clone, Debug)]
pub struct SetCoverDst {
    pub instance: DstInstance,
    set_count: usize,
}

impl SetCoverDst {
    pub fn set_vertex(&self, set: usize) -> VertexId {
        1 + set
    }

    pub fn element_vertex(&self, element: usize) -> VertexId {
        1 + self.set_count + element
    }

    /// Sets whose root arc appears in the tree.
    pub fn decode(
        &self,
        sc: &SetCoverInstance,
        tree: &ArborescenceSolution,
    ) -> Result<CoverSolution> {
        let chosen = tree
            .arcs
            .iter()
            .filter(|a| a.tail == 0 && a.head >= 1 && a.head <= self.set_count)
            .map(|a| a.head - 1);
        sc.cover(chosen)
    }
}

pub fn setcover_to_dst(sc: &SetCoverInstance) -> SetCoverDst {
    let m = sc.set_count();
    let n = sc.universe_size();
    let mut arcs = Vec::new();
    for (i, set) in sc.sets().iter().enumerate() {
        arcs.push(Edge::new(0, 1 + i, set.cost));
        for &e in &set.elements {
            arcs.push(Edge::new(1 + i, 1 + m + e, Cost::ZERO));
        }
    }
    let graph = WeightedDigraph::new(1 + m + n, arcs).expect("star arcs are valid");
    let instance = DstInstance::new(graph, 0, (0..n).map(|e| 1 + m + e)).expect("valid ids");
    SetCoverDst {
        instance,
        set_count: m,
    }
}

/// DST instance with one fresh terminal per group.
#[derive(Clone, Debug)]
pub struct GstReduction {
    pub instance: DstInstance,
    /// `group_terminals[i]` is the vertex standing for group `i`.
    pub group_terminals: Vec<VertexId>,
    base_vertex_count: usize,
}

impl GstReduction {
    pub fn base_vertex_count(&self) -> usize {
        self.base_vertex_count
    }

    /// Drops the zero-cost arcs into group terminals.
    pub fn to_gst_solution(&self, tree: &ArborescenceSolution) -> ArborescenceSolution {
        let arcs = tree
            .arcs
            .iter()
            .copied()
            .filter(|a| a.head < self.base_vertex_count)
            .collect();
        ArborescenceSolution::from_arcs(tree.root, arcs)
    }
}

pub fn gst_to_dst(gst: &GstInstance) -> GstReduction {
    let base = gst.graph().vertex_count();
    let k = gst.groups().len();
    let mut arcs: Vec<Edge> = gst.graph().arcs().to_vec();
    for (i, group) in gst.groups().iter().enumerate() {
        for &v in group {
            arcs.push(Edge::new(v, base + i, Cost::ZERO));
        }
    }
    let graph = WeightedDigraph::new(base + k, arcs).expect("group arcs are valid");
    let group_terminals: Vec<VertexId> = (base..base + k).collect();
    let instance =
        DstInstance::new(graph, gst.root(), group_terminals.iter().copied()).expect("valid ids");
    GstReduction {
        instance,
        group_terminals,
        base_vertex_count: base,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_construction() {
        let sc = SetCoverInstance::new(2, [(vec![0, 1], Cost::from_units(3))]).unwrap();
        let red = setcover_to_dst(&sc);
        let g = red.instance.graph();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.arc_count(), 3);
        assert_eq!(g.arc_cost(0, 1), Some(Cost::from_units(3)));
        assert_eq!(g.arc_cost(1, 2), Some(Cost::ZERO));
        assert_eq!(g.arc_cost(1, 3), Some(Cost::ZERO));
        assert_eq!(red.instance.terminals(), &[2, 3]);
        assert_eq!(red.element_vertex(1), 3);
    }

    #[test]
    fn empty_universe_has_no_terminals() {
        let sc = SetCoverInstance::new(0, std::iter::empty()).unwrap();
        let red = setcover_to_dst(&sc);
        assert!(red.instance.terminals().is_empty());
    }

    #[test]
    fn group_terminals_get_zero_arcs() {
        let g = WeightedDigraph::from_undirected(
            3,
            [(0, 1, Cost::from_units(2)), (1, 2, Cost::from_units(1))],
        )
        .unwrap();
        let gst = GstInstance::new(g, 0, vec![vec![2], vec![0, 1]]).unwrap();
        let red = gst_to_dst(&gst);
        assert_eq!(red.group_terminals, vec![3, 4]);
        let g2 = red.instance.graph();
        assert_eq!(g2.arc_cost(2, 3), Some(Cost::ZERO));
        assert_eq!(g2.arc_cost(0, 4), Some(Cost::ZERO));
        assert_eq!(g2.arc_cost(1, 4), Some(Cost::ZERO));
        assert_eq!(red.instance.terminals(), &[3, 4]);
    }
}
