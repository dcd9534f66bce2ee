//! Steiner-tree and set-cover instances, exact oracles, tree decomposition
//! and the subexponential-time approximation.

pub mod approx;
pub mod cost;
pub mod decomposition;
pub mod error;
pub mod exact;
pub mod instances;
pub mod subsets;

pub use cost::{format_rational, parse_rational, Cost, Rational, COST_SCALE};
pub use error::{Error, ErrorKind, Result};
