//! Benchmark harness: instance generation, solving, verification and
//! ratio/runtime experiments with CSV reports.

pub mod config;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod problem;
pub mod report;

pub use config::{ExperimentConfig, Source};
pub use error::{exit, BenchError, Result};
pub use experiment::{load_instances, run_experiment};
pub use generate::{
    gen_hardness, gen_random_instance, HardnessBundle, HardnessParams, RandomParams,
};
pub use problem::{approx_solve, exact_solve, verify, ExactCaps, Instance, ProblemKind, Solution};
pub use report::{read_report, summarize, write_report, ReportRow, Status, Summary};
