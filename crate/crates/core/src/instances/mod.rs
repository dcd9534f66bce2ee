//! Problem instances, solutions, metric closure and the reductions that let
//! one Steiner-tree algorithm serve Set Cover and Group Steiner Tree.

mod closure;
pub mod format;
mod graph;
mod problems;
mod reduce;
mod validate;

pub use closure::{metric_closure, MetricClosure};
pub use graph::{Edge, VertexId, WeightedDigraph};
pub use problems::{
    ArborescenceSolution, CostedSet, CoverSolution, DstInstance, GstInstance, SetCoverInstance,
};
pub use reduce::{gst_to_dst, setcover_to_dst, GstReduction, SetCoverDst};
pub use validate::{
    validate_arborescence, validate_solution, ArborescenceFailure, ArcSource, ValidityReport,
    ValidityWarning,
};
