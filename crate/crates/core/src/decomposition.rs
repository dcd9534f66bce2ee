//! Splitting a rooted tree into edge-disjoint subtrees with a bounded
//! number of leaves each, plus an independent verifier.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::instances::VertexId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: VertexId,
    parent: Vec<VertexId>,
    children: Vec<Vec<VertexId>>,
}

impl RootedTree {
    /// `parent[root] == root`; every other vertex must reach the root.
    pub fn new(parent: Vec<VertexId>, root: VertexId) -> Result<Self> {
        let n = parent.len();
        if root >= n || parent[root] != root {
            return Err(Error::InvalidInstance("root must be its own parent".into()));
        }
        let mut children = vec![Vec::new(); n];
        for (v, &p) in parent.iter().enumerate() {
            if p >= n {
                return Err(Error::InvalidInstance(format!(
                    "parent of {v} out of range"
                )));
            }
            if v != root {
                if p == v {
                    return Err(Error::InvalidInstance(format!(
                        "vertex {v} is its own parent"
                    )));
                }
                children[p].push(v);
            }
        }
        // Every vertex must reach the root.
        let mut state = vec![0u8; n];
        state[root] = 2;
        for start in 0..n {
            let mut walk = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                walk.push(v);
                v = parent[v];
            }
            if state[v] == 1 {
                return Err(Error::InvalidInstance(format!(
                    "parent links cycle through {v}"
                )));
            }
            for w in walk {
                state[w] = 2;
            }
        }
        Ok(RootedTree {
            root,
            parent,
            children,
        })
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: VertexId) -> VertexId {
        self.parent[v]
    }

    /// Children in ascending id order.
    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v]
    }

    /// Vertices without children (a lone root counts as a leaf).
    pub fn leaves(&self) -> Vec<VertexId> {
        (0..self.vertex_count())
            .filter(|&v| self.children[v].is_empty())
            .collect()
    }

    pub fn is_arc(&self, tail: VertexId, head: VertexId) -> bool {
        head < self.parent.len() && head != self.root && self.parent[head] == tail
    }
}

/// A subtree given by its root and its `(parent, child)` arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subtree {
    pub root: VertexId,
    pub arcs: Vec<(VertexId, VertexId)>,
}

impl Subtree {
    /// Vertices of the subtree without an outgoing arc in it.
    pub fn leaves(&self) -> Vec<VertexId> {
        let tails: BTreeSet<VertexId> = self.arcs.iter().map(|a| a.0).collect();
        let mut verts: BTreeSet<VertexId> = self.arcs.iter().map(|a| a.1).collect();
        verts.insert(self.root);
        verts.into_iter().filter(|v| !tails.contains(v)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub x_set: Vec<VertexId>,
    pub subtrees: Vec<Subtree>,
    /// The at most `threshold` leaves left over, hanging from the tree root.
    pub residual: Option<Subtree>,
}

/// Repeatedly detaches, below the lowest vertex with more than `threshold`
/// leaves, its first children (ascending id) until their leaf total exceeds
/// `threshold`. The detaching vertex stays in the working tree and joins X.
pub fn decompose(t: &RootedTree, threshold: usize) -> Decomposition {
    assert!(threshold >= 1, "threshold must be positive");
    let n = t.vertex_count();
    let is_leaf: Vec<bool> = (0..n).map(|v| t.children(v).is_empty()).collect();
    let mut children: Vec<Vec<VertexId>> = (0..n).map(|v| t.children(v).to_vec()).collect();
    let mut x_set = BTreeSet::new();
    let mut subtrees = Vec::new();
    let mut leaves_below = vec![0usize; n];
    let mut order = Vec::with_capacity(n);

    loop {
        // Post-order over the working tree, children ascending.
        order.clear();
        let mut stack = vec![(t.root(), 0usize)];
        while let Some((v, i)) = stack.pop() {
            if i < children[v].len() {
                stack.push((v, i + 1));
                stack.push((children[v][i], 0));
            } else {
                order.push(v);
            }
        }
        for &v in &order {
            leaves_below[v] = if children[v].is_empty() {
                usize::from(is_leaf[v])
            } else {
                children[v].iter().map(|&c| leaves_below[c]).sum()
            };
        }
        if leaves_below[t.root()] <= threshold {
            break;
        }
        let v = *order
            .iter()
            .find(|&&v| leaves_below[v] > threshold)
            .expect("root exceeds the threshold");

        let mut taken = 0;
        let mut acc = 0;
        while acc <= threshold {
            acc += leaves_below[children[v][taken]];
            taken += 1;
        }
        let detached: Vec<VertexId> = children[v].drain(..taken).collect();
        let mut arcs = Vec::new();
        for c in detached {
            arcs.push((v, c));
            let mut stack = vec![c];
            while let Some(u) = stack.pop() {
                for &w in &children[u] {
                    arcs.push((u, w));
                    stack.push(w);
                }
            }
        }
        arcs.sort_unstable();
        subtrees.push(Subtree { root: v, arcs });
        x_set.insert(v);

        // Drop branches that no longer lead to any leaf of the input tree.
        let mut u = v;
        while u != t.root() && children[u].is_empty() && !is_leaf[u] {
            let p = t.parent(u);
            children[p].retain(|&w| w != u);
            u = p;
        }
    }

    let residual = (leaves_below[t.root()] > 0).then(|| {
        let mut arcs = Vec::new();
        let mut stack = vec![t.root()];
        while let Some(u) = stack.pop() {
            for &w in &children[u] {
                arcs.push((u, w));
                stack.push(w);
            }
        }
        arcs.sort_unstable();
        Subtree {
            root: t.root(),
            arcs,
        }
    });

    Decomposition {
        x_set: x_set.into_iter().collect(),
        subtrees,
        residual,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Part {
    Subtree(usize),
    Residual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionViolation {
    ArcNotInTree {
        part: Part,
        arc: (VertexId, VertexId),
    },
    NotASubtree {
        part: Part,
    },
    SharedArc {
        arc: (VertexId, VertexId),
    },
    LeafNotCovered {
        leaf: VertexId,
    },
    LeafCoveredTwice {
        leaf: VertexId,
    },
    RootNotInX {
        part: Part,
    },
    LeafCountOutOfRange {
        part: Part,
        leaves: usize,
    },
    ResidualRootMismatch,
    ResidualTooLarge {
        leaves: usize,
    },
    TooManyTrees {
        trees: usize,
        bound: usize,
    },
}

impl fmt::Display for DecompositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecompositionReport {
    pub violations: Vec<DecompositionViolation>,
}

impl DecompositionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every clause of the decomposition contract and lists all violations.
pub fn verify_decomposition(
    t: &RootedTree,
    threshold: usize,
    d: &Decomposition,
) -> DecompositionReport {
    use DecompositionViolation::*;
    let mut violations = Vec::new();
    let parts: Vec<(Part, &Subtree)> = d
        .subtrees
        .iter()
        .enumerate()
        .map(|(i, s)| (Part::Subtree(i), s))
        .chain(d.residual.iter().map(|s| (Part::Residual, s)))
        .collect();

    let mut owner: BTreeMap<(VertexId, VertexId), Part> = BTreeMap::new();
    let mut leaf_hits: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &(part, sub) in &parts {
        let mut heads = BTreeSet::new();
        let mut shape_ok = true;
        for &arc in &sub.arcs {
            if !t.is_arc(arc.0, arc.1) {
                violations.push(ArcNotInTree { part, arc });
                shape_ok = false;
            }
            if owner.insert(arc, part).is_some_and(|p| p != part) {
                violations.push(SharedArc { arc });
            }
            if !heads.insert(arc.1) || arc.1 == sub.root {
                shape_ok = false;
            }
        }
        // Arcs of a tree with unique heads, each tail the root or a head: a subtree.
        if shape_ok
            && !sub
                .arcs
                .iter()
                .all(|a| a.0 == sub.root || heads.contains(&a.0))
        {
            shape_ok = false;
        }
        if !shape_ok {
            violations.push(NotASubtree { part });
        }
        for leaf in sub.leaves() {
            *leaf_hits.entry(leaf).or_default() += 1;
        }
        let leaves = sub.leaves().len();
        match part {
            Part::Subtree(_) => {
                if d.x_set.binary_search(&sub.root).is_err() {
                    violations.push(RootNotInX { part });
                }
                if leaves <= threshold || leaves > 2 * threshold {
                    violations.push(LeafCountOutOfRange { part, leaves });
                }
            }
            Part::Residual => {
                if sub.root != t.root() {
                    violations.push(ResidualRootMismatch);
                }
                if leaves > threshold {
                    violations.push(ResidualTooLarge { leaves });
                }
            }
        }
    }
    let tree_leaves = t.leaves();
    for &leaf in &tree_leaves {
        match leaf_hits.get(&leaf).copied().unwrap_or(0) {
            0 => violations.push(LeafNotCovered { leaf }),
            1 => {}
            _ => violations.push(LeafCoveredTwice { leaf }),
        }
    }
    let bound = tree_leaves.len() / threshold + 1;
    if parts.len() > bound {
        violations.push(TooManyTrees {
            trees: parts.len(),
            bound,
        });
    }
    DecompositionReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> RootedTree {
        RootedTree::new((0..n).map(|v| v.saturating_sub(1)).collect(), 0).unwrap()
    }

    fn star(leaves: usize) -> RootedTree {
        RootedTree::new(vec![0; leaves + 1], 0).unwrap()
    }

    fn complete_binary(depth: u32) -> RootedTree {
        let n = (1usize << (depth + 1)) - 1;
        RootedTree::new(
            (0..n)
                .map(|v| if v == 0 { 0 } else { (v - 1) / 2 })
                .collect(),
            0,
        )
        .unwrap()
    }

    #[test]
    fn rejects_cycles() {
        assert!(RootedTree::new(vec![0, 2, 1], 0).is_err());
        assert!(RootedTree::new(vec![1, 1], 0).is_err());
    }

    #[test]
    fn path_below_threshold_is_all_residual() {
        let t = path(4);
        let d = decompose(&t, 2);
        assert!(d.subtrees.is_empty());
        assert!(d.x_set.is_empty());
        assert_eq!(
            d.residual.as_ref().unwrap().arcs,
            vec![(0, 1), (1, 2), (2, 3)]
        );
        assert!(verify_decomposition(&t, 2, &d).is_ok());
    }

    #[test]
    fn star_with_five_leaves() {
        let t = star(5);
        let d = decompose(&t, 2);
        assert_eq!(d.x_set, vec![0]);
        assert_eq!(d.subtrees.len(), 1);
        assert_eq!(d.subtrees[0].root, 0);
        assert_eq!(d.subtrees[0].arcs, vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(d.residual.as_ref().unwrap().leaves(), vec![4, 5]);
        assert!(verify_decomposition(&t, 2, &d).is_ok());
    }

    #[test]
    fn complete_binary_tree_with_eight_leaves() {
        let t = complete_binary(3);
        let d = decompose(&t, 3);
        assert_eq!(d.x_set, vec![1, 2]);
        assert_eq!(d.subtrees.len(), 2);
        for s in &d.subtrees {
            assert_eq!(s.leaves().len(), 4);
        }
        assert_eq!(d.residual, None);
        assert!(verify_decomposition(&t, 3, &d).is_ok());
    }

    #[test]
    fn single_vertex_tree() {
        let t = RootedTree::new(vec![0], 0).unwrap();
        let d = decompose(&t, 1);
        assert_eq!(d.residual.as_ref().unwrap().leaves(), vec![0]);
        assert!(verify_decomposition(&t, 1, &d).is_ok());
    }

    #[test]
    fn verifier_flags_shared_arc() {
        let t = star(5);
        let mut d = decompose(&t, 2);
        let dup = d.subtrees[0].arcs[0];
        d.residual.as_mut().unwrap().arcs.push(dup);
        let r = verify_decomposition(&t, 2, &d);
        assert!(r
            .violations
            .contains(&DecompositionViolation::SharedArc { arc: dup }));
        assert!(r
            .violations
            .contains(&DecompositionViolation::LeafCoveredTwice { leaf: dup.1 }));
    }

    #[test]
    fn verifier_flags_missing_leaf() {
        let t = star(5);
        let mut d = decompose(&t, 2);
        d.residual.as_mut().unwrap().arcs.pop();
        let r = verify_decomposition(&t, 2, &d);
        assert!(r
            .violations
            .contains(&DecompositionViolation::LeafNotCovered { leaf: 5 }));
    }

    #[test]
    fn verifier_flags_bounds_and_roots() {
        let t = star(5);
        let d = Decomposition {
            x_set: vec![],
            subtrees: vec![Subtree {
                root: 0,
                arcs: vec![(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)],
            }],
            residual: None,
        };
        let r = verify_decomposition(&t, 2, &d);
        assert!(r.violations.contains(&DecompositionViolation::RootNotInX {
            part: Part::Subtree(0)
        }));
        assert!(r
            .violations
            .contains(&DecompositionViolation::LeafCountOutOfRange {
                part: Part::Subtree(0),
                leaves: 5
            }));
        let d = Decomposition {
            x_set: vec![],
            subtrees: vec![],
            residual: Some(Subtree {
                root: 0,
                arcs: vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 5)],
            }),
        };
        let r = verify_decomposition(&t, 2, &d);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, DecompositionViolation::ArcNotInTree { .. })));
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, DecompositionViolation::ResidualTooLarge { .. })));
    }
}
