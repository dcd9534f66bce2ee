use std::collections::BTreeSet;
use std::fmt;

use super::closure::MetricClosure;
use super::graph::VertexId;
use super::problems::{ArborescenceSolution, DstInstance};
use crate::cost::Cost;

/// Where the arcs of a candidate tree must come from.
#[derive(Clone, Copy, Debug)]
pub enum ArcSource<'a> {
    Original,
    Closure(&'a MetricClosure),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArborescenceFailure {
    UnknownArc { tail: VertexId, head: VertexId },
    DuplicateArc { tail: VertexId, head: VertexId },
    RootHasParent { tail: VertexId },
    InDegree { vertex: VertexId },
    Cycle { vertex: VertexId },
    Disconnected { vertex: VertexId },
    MissingTerminal { terminal: VertexId },
    CostMismatch { claimed: Cost, actual: Cost },
}

impl fmt::Display for ArborescenceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ArborescenceFailure::*;
        match self {
            UnknownArc { tail, head } => write!(f, "arc {tail}->{head} is not in the graph"),
            DuplicateArc { tail, head } => write!(f, "arc {tail}->{head} listed twice"),
            RootHasParent { tail } => write!(f, "root has an incoming arc from {tail}"),
            InDegree { vertex } => write!(f, "vertex {vertex} has in-degree greater than 1"),
            Cycle { vertex } => write!(f, "cycle through vertex {vertex}"),
            Disconnected { vertex } => write!(f, "vertex {vertex} is not reachable from the root"),
            MissingTerminal { terminal } => write!(f, "terminal {terminal} is not spanned"),
            CostMismatch { claimed, actual } => {
                write!(f, "claimed cost {claimed} but arcs cost {actual}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidityWarning {
    RootTerminalDropped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    /// Sum of the costs of the recognised arcs.
    pub cost: Cost,
    pub failure: Option<ArborescenceFailure>,
    pub warnings: Vec<ValidityWarning>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that `arcs` form an arborescence rooted at `d.root()` spanning every terminal.
///
/// Conditions are checked in a fixed order and the first violation is reported.
pub fn validate_arborescence(
    d: &DstInstance,
    arcs: &[(VertexId, VertexId)],
    source: ArcSource<'_>,
) -> ValidityReport {
    let mut warnings = Vec::new();
    if d.dropped_root_terminal() {
        warnings.push(ValidityWarning::RootTerminalDropped);
    }
    let report = |cost, failure| ValidityReport {
        cost,
        failure,
        warnings: warnings.clone(),
    };
    let n = d.graph().vertex_count();
    let mut cost = Cost::ZERO;
    let mut seen = BTreeSet::new();
    for &(tail, head) in arcs {
        let arc_cost = if tail >= n || head >= n || tail == head {
            None
        } else {
            match source {
                ArcSource::Original => d.graph().arc_cost(tail, head),
                ArcSource::Closure(mc) => mc.dist(tail, head),
            }
        };
        match arc_cost {
            Some(c) => cost += c,
            None => return report(cost, Some(ArborescenceFailure::UnknownArc { tail, head })),
        }
        if !seen.insert((tail, head)) {
            return report(cost, Some(ArborescenceFailure::DuplicateArc { tail, head }));
        }
    }

    let root = d.root();
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    for &(tail, head) in arcs {
        if head == root {
            return report(cost, Some(ArborescenceFailure::RootHasParent { tail }));
        }
        if parent[head].is_some() {
            return report(cost, Some(ArborescenceFailure::InDegree { vertex: head }));
        }
        parent[head] = Some(tail);
    }

    // With in-degree <= 1 everywhere, walking parent links from any touched
    // vertex either reaches the root, stops at a parentless vertex, or loops.
    let mut state = vec![0u8; n]; // 0 = unvisited, 1 = on current walk, 2 = reaches root
    state[root] = 2;
    let touched: BTreeSet<VertexId> = arcs.iter().flat_map(|&(t, h)| [t, h]).collect();
    for &start in &touched {
        let mut walk = Vec::new();
        let mut v = start;
        loop {
            match state[v] {
                2 => break,
                1 => return report(cost, Some(ArborescenceFailure::Cycle { vertex: v })),
                _ => {}
            }
            state[v] = 1;
            walk.push(v);
            match parent[v] {
                Some(p) => v = p,
                None => return report(cost, Some(ArborescenceFailure::Disconnected { vertex: v })),
            }
        }
        for w in walk {
            state[w] = 2;
        }
    }

    for &t in d.terminals() {
        if state[t] != 2 {
            return report(
                cost,
                Some(ArborescenceFailure::MissingTerminal { terminal: t }),
            );
        }
    }
    report(cost, None)
}

/// Validates a solution against the original graph and checks its claimed cost.
pub fn validate_solution(d: &DstInstance, sol: &ArborescenceSolution) -> ValidityReport {
    let mut report = if sol.root != d.root() {
        ValidityReport {
            cost: Cost::ZERO,
            failure: Some(ArborescenceFailure::Disconnected { vertex: sol.root }),
            warnings: Vec::new(),
        }
    } else {
        validate_arborescence(d, &sol.arc_pairs(), ArcSource::Original)
    };
    if report.is_valid() && report.cost != sol.cost {
        report.failure = Some(ArborescenceFailure::CostMismatch {
            claimed: sol.cost,
            actual: report.cost,
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{Edge, WeightedDigraph};

    fn instance() -> DstInstance {
        let c = Cost::from_units;
        let g = WeightedDigraph::new(
            4,
            [
                Edge::new(0, 1, c(1)),
                Edge::new(1, 2, c(1)),
                Edge::new(2, 1, c(1)),
                Edge::new(1, 3, c(2)),
                Edge::new(0, 3, c(7)),
            ],
        )
        .unwrap();
        DstInstance::new(g, 0, [2, 3]).unwrap()
    }

    #[test]
    fn accepts_a_spanning_tree() {
        let r = validate_arborescence(&instance(), &[(0, 1), (1, 2), (1, 3)], ArcSource::Original);
        assert!(r.is_valid());
        assert_eq!(r.cost, Cost::from_units(4));
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn reports_missing_terminal() {
        let r = validate_arborescence(&instance(), &[(0, 1), (1, 2)], ArcSource::Original);
        assert_eq!(
            r.failure,
            Some(ArborescenceFailure::MissingTerminal { terminal: 3 })
        );
    }

    #[test]
    fn reports_two_cycle() {
        let r = validate_arborescence(&instance(), &[(1, 2), (2, 1), (0, 3)], ArcSource::Original);
        assert!(matches!(r.failure, Some(ArborescenceFailure::Cycle { .. })));
    }

    #[test]
    fn reports_in_degree_and_unknown_arcs() {
        let r = validate_arborescence(&instance(), &[(0, 3), (1, 3), (0, 1)], ArcSource::Original);
        assert_eq!(r.failure, Some(ArborescenceFailure::InDegree { vertex: 3 }));
        let r = validate_arborescence(&instance(), &[(3, 0)], ArcSource::Original);
        assert_eq!(
            r.failure,
            Some(ArborescenceFailure::UnknownArc { tail: 3, head: 0 })
        );
    }

    #[test]
    fn reports_disconnected_fragment() {
        let r = validate_arborescence(&instance(), &[(1, 2), (1, 3)], ArcSource::Original);
        assert_eq!(
            r.failure,
            Some(ArborescenceFailure::Disconnected { vertex: 1 })
        );
    }

    #[test]
    fn closure_arcs_need_the_closure_source() {
        let d = instance();
        let mc = MetricClosure::new(d.graph());
        let arcs = [(0, 2), (0, 3)];
        assert!(!validate_arborescence(&d, &arcs, ArcSource::Original).is_valid());
        let r = validate_arborescence(&d, &arcs, ArcSource::Closure(&mc));
        assert!(r.is_valid());
        assert_eq!(r.cost, Cost::from_units(5));
    }

    #[test]
    fn warns_about_root_terminal() {
        let g = WeightedDigraph::new(1, []).unwrap();
        let d = DstInstance::new(g, 0, [0]).unwrap();
        let r = validate_arborescence(&d, &[], ArcSource::Original);
        assert!(r.is_valid());
        assert_eq!(r.warnings, vec![ValidityWarning::RootTerminalDropped]);
    }
}
