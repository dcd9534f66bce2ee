use std::collections::BTreeSet;

use super::graph::{Edge, VertexId, WeightedDigraph};
use crate::cost::Cost;
use crate::error::{Error, Result};

/// Directed Steiner Tree: connect every terminal to the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DstInstance {
    graph: WeightedDigraph,
    root: VertexId,
    terminals: Vec<VertexId>,
    dropped_root_terminal: bool,
}

impl DstInstance {
    /// Terminals are sorted and deduplicated; a terminal equal to the root is
    /// dropped and remembered so validity reports can warn about it.
    pub fn new(
        graph: WeightedDigraph,
        root: VertexId,
        terminals: impl IntoIterator<Item = VertexId>,
    ) -> Result<Self> {
        let n = graph.vertex_count();
        if root >= n {
            return Err(Error::InvalidInstance(format!(
                "root {root} is not a vertex of 0..{n}"
            )));
        }
        let mut set = BTreeSet::new();
        for t in terminals {
            if t >= n {
                return Err(Error::InvalidInstance(format!(
                    "terminal {t} is not a vertex of 0..{n}"
                )));
            }
            set.insert(t);
        }
        let dropped_root_terminal = set.remove(&root);
        Ok(DstInstance {
            graph,
            root,
            terminals: set.into_iter().collect(),
            dropped_root_terminal,
        })
    }

    pub fn graph(&self) -> &WeightedDigraph {
        &self.graph
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn terminals(&self) -> &[VertexId] {
        &self.terminals
    }

    pub fn dropped_root_terminal(&self) -> bool {
        self.dropped_root_terminal
    }

    /// First terminal not reachable from the root, if any.
    pub fn unreachable_terminal(&self) -> Option<VertexId> {
        let seen = self.graph.reachable_from(self.root);
        self.terminals.iter().copied().find(|&t| !seen[t])
    }

    pub fn check_feasible(&self) -> Result<()> {
        match self.unreachable_terminal() {
            Some(terminal) => Err(Error::UnreachableTerminal {
                terminal,
                root: self.root,
            }),
            None => Ok(()),
        }
    }
}

/// One weighted set of a Set Cover instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostedSet {
    pub elements: Vec<usize>,
    pub cost: Cost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverInstance {
    universe_size: usize,
    sets: Vec<CostedSet>,
}

impl SetCoverInstance {
    pub fn new(
        universe_size: usize,
        sets: impl IntoIterator<Item = (Vec<usize>, Cost)>,
    ) -> Result<Self> {
        let mut out = Vec::new();
        for (i, (mut elements, cost)) in sets.into_iter().enumerate() {
            elements.sort_unstable();
            elements.dedup();
            if let Some(&e) = elements.last() {
                if e >= universe_size {
                    return Err(Error::InvalidInstance(format!(
                        "set {i} contains element {e} outside 0..{universe_size}"
                    )));
                }
            }
            if cost < Cost::ZERO {
                return Err(Error::InvalidInstance(format!("set {i} has negative cost")));
            }
            out.push(CostedSet { elements, cost });
        }
        if universe_size > 0 && out.is_empty() {
            return Err(Error::InvalidInstance(
                "nonempty universe with no sets".into(),
            ));
        }
        Ok(SetCoverInstance {
            universe_size,
            sets: out,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn sets(&self) -> &[CostedSet] {
        &self.sets
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    /// First element contained in no set, if any.
    pub fn uncoverable_element(&self) -> Option<usize> {
        let mut covered = vec![false; self.universe_size];
        for set in &self.sets {
            for &e in &set.elements {
                covered[e] = true;
            }
        }
        covered.iter().position(|c| !c)
    }

    pub fn check_feasible(&self) -> Result<()> {
        match self.uncoverable_element() {
            Some(e) => Err(Error::UncoverableElement(e)),
            None => Ok(()),
        }
    }

    /// Builds a certified cover from chosen set indices.
    ///
    /// Fails with the first uncovered element, or on an out-of-range index.
    pub fn cover(&self, chosen: impl IntoIterator<Item = usize>) -> Result<CoverSolution> {
        let mut chosen: Vec<usize> = chosen.into_iter().collect();
        chosen.sort_unstable();
        chosen.dedup();
        let mut covered = vec![false; self.universe_size];
        let mut cost = Cost::ZERO;
        for &i in &chosen {
            let set = self.sets.get(i).ok_or_else(|| {
                Error::InvalidInstance(format!("set index {i} out of range 0..{}", self.sets.len()))
            })?;
            cost += set.cost;
            for &e in &set.elements {
                covered[e] = true;
            }
        }
        if let Some(e) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidInstance(format!(
                "element {e} is not covered"
            )));
        }
        Ok(CoverSolution { chosen, cost })
    }
}

/// Group Steiner Tree: reach at least one vertex of every group from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GstInstance {
    graph: WeightedDigraph,
    root: VertexId,
    groups: Vec<Vec<VertexId>>,
}

impl GstInstance {
    pub fn new(graph: WeightedDigraph, root: VertexId, groups: Vec<Vec<VertexId>>) -> Result<Self> {
        let n = graph.vertex_count();
        if root >= n {
            return Err(Error::InvalidInstance(format!(
                "root {root} is not a vertex of 0..{n}"
            )));
        }
        let mut out = Vec::with_capacity(groups.len());
        for (i, mut g) in groups.into_iter().enumerate() {
            g.sort_unstable();
            g.dedup();
            if g.is_empty() {
                return Err(Error::InvalidInstance(format!("group {i} is empty")));
            }
            if let Some(&v) = g.last() {
                if v >= n {
                    return Err(Error::InvalidInstance(format!(
                        "group {i} contains vertex {v} outside 0..{n}"
                    )));
                }
            }
            out.push(g);
        }
        Ok(GstInstance {
            graph,
            root,
            groups: out,
        })
    }

    pub fn graph(&self) -> &WeightedDigraph {
        &self.graph
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn groups(&self) -> &[Vec<VertexId>] {
        &self.groups
    }
}

/// A rooted arborescence with its total cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArborescenceSolution {
    pub root: VertexId,
    pub arcs: Vec<Edge>,
    pub cost: Cost,
}

impl ArborescenceSolution {
    pub fn empty(root: VertexId) -> Self {
        ArborescenceSolution {
            root,
            arcs: Vec::new(),
            cost: Cost::ZERO,
        }
    }

    /// Sorts the arcs and sums their cost.
    pub fn from_arcs(root: VertexId, mut arcs: Vec<Edge>) -> Self {
        arcs.sort_unstable();
        arcs.dedup();
        let cost = arcs.iter().map(|a| a.cost).sum();
        ArborescenceSolution { root, arcs, cost }
    }

    /// Breadth-first arborescence inside `arcs` from `root`, pruned to the
    /// arcs on root paths to `required` vertices.
    ///
    /// Uses a subset of `arcs`, so its cost never exceeds theirs. Panics if a
    /// required vertex is unreachable inside `arcs`.
    pub fn spanning(root: VertexId, mut arcs: Vec<Edge>, required: &[VertexId]) -> Self {
        arcs.sort_unstable();
        arcs.dedup_by_key(|a| (a.tail, a.head));
        let n = arcs
            .iter()
            .map(|a| a.tail.max(a.head) + 1)
            .chain(required.iter().map(|&v| v + 1))
            .max()
            .unwrap_or(0)
            .max(root + 1);
        let mut start = vec![0usize; n + 1];
        for a in &arcs {
            start[a.tail + 1] += 1;
        }
        for v in 0..n {
            start[v + 1] += start[v];
        }
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for (i, a) in arcs[start[v]..start[v + 1]].iter().enumerate() {
                if !seen[a.head] {
                    seen[a.head] = true;
                    parent[a.head] = Some(start[v] + i);
                    queue.push_back(a.head);
                }
            }
        }
        let mut keep = vec![false; arcs.len()];
        for &t in required {
            assert!(seen[t], "required vertex {t} unreachable from {root}");
            let mut v = t;
            while let Some(i) = parent[v] {
                if keep[i] {
                    break;
                }
                keep[i] = true;
                v = arcs[i].tail;
            }
        }
        let kept = arcs
            .into_iter()
            .zip(keep)
            .filter_map(|(a, k)| k.then_some(a))
            .collect();
        Self::from_arcs(root, kept)
    }

    pub fn arc_pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.arcs.iter().map(Edge::endpoints).collect()
    }

    /// The root plus every arc head.
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        std::iter::once(self.root)
            .chain(self.arcs.iter().map(|a| a.head))
            .collect()
    }
}

/// Chosen set indices (sorted) and their total cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSolution {
    pub chosen: Vec<usize>,
    pub cost: Cost,
}

impl CoverSolution {
    pub fn empty() -> Self {
        CoverSolution {
            chosen: Vec::new(),
            cost: Cost::ZERO,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_terminal_is_dropped() {
        let g = WeightedDigraph::new(3, []).unwrap();
        let d = DstInstance::new(g, 0, [2, 0, 2, 1]).unwrap();
        assert_eq!(d.terminals(), &[1, 2]);
        assert!(d.dropped_root_terminal());
        assert_eq!(d.unreachable_terminal(), Some(1));
        assert!(matches!(
            d.check_feasible(),
            Err(Error::UnreachableTerminal {
                terminal: 1,
                root: 0
            })
        ));
    }

    #[test]
    fn setcover_validation() {
        assert!(SetCoverInstance::new(2, [(vec![0, 2], Cost::ZERO)]).is_err());
        assert!(SetCoverInstance::new(2, std::iter::empty()).is_err());
        assert!(SetCoverInstance::new(0, std::iter::empty()).is_ok());
        let sc = SetCoverInstance::new(3, [(vec![1, 0, 1], Cost::from_units(2))]).unwrap();
        assert_eq!(sc.sets()[0].elements, vec![0, 1]);
        assert_eq!(sc.uncoverable_element(), Some(2));
        assert!(sc.cover([0]).is_err());
    }

    #[test]
    fn gst_rejects_empty_groups() {
        let g = WeightedDigraph::new(2, []).unwrap();
        assert!(GstInstance::new(g.clone(), 0, vec![vec![]]).is_err());
        assert!(GstInstance::new(g.clone(), 0, vec![vec![5]]).is_err());
        assert!(GstInstance::new(g, 0, vec![vec![1, 1, 0]]).is_ok());
    }
}
