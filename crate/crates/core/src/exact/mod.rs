//! Exact solvers, used both inside the approximation algorithm and as
//! ground-truth oracles.

mod dreyfus_wagner;
mod labelcover;
mod setcover;

pub use dreyfus_wagner::{
    dw_solve, dw_solve_capped, estimate_dw_work, expand_to_arborescence, DwTable,
    DEFAULT_TERMINAL_CAP,
};
pub use labelcover::{
    agreement_check, agreement_check_capped, bruteforce_labelcover, bruteforce_labelcover_capped,
    AgreementReport, LabelCoverInstance, LabelCoverValue, DEFAULT_ASSIGNMENT_CAP,
};
pub use setcover::{bruteforce_setcover, bruteforce_setcover_with, SetCoverOracleConfig};
