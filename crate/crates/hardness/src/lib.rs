//! Generators and verifiers for adversarial Set Cover and Label Cover
//! instances: partition systems, aggregator graphs, the agreement
//! transform, the Label Cover to Set Cover reduction, and a calculator for
//! the Group Steiner Tree hardness parameters.

pub mod aggregator;
pub mod error;
pub mod format;
pub mod params;
pub mod partition;
pub mod planted;
pub mod transform;

pub use aggregator::{check_aggregator, gen_aggregator, AggregatorCheck, AggregatorGraph};
pub use error::{HardnessError, Result};
pub use params::{corollary_universe, gst_hardness_params, GstHardnessInputs, GstHardnessParams};
pub use partition::{
    gen_partition_system, gen_partition_system_with, rainbow_bound, verify_partition_system,
    verify_partition_system_capped, Certification, GeneratedPartitionSystem, PartitionGenOptions,
    PartitionSystem, PartitionVerdict,
};
pub use planted::{gen_planted_lc, PlantedLc, PlantedLcParams};
pub use transform::{agreement_transform, lc_to_setcover, LcSetCover};
