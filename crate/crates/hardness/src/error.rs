use subexp_core::ErrorKind;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HardnessError {
    #[error(transparent)]
    Core(#[from] subexp_core::Error),
    #[error("no certified partition system after {attempts} attempts at ell = {ell}")]
    RetriesExhausted { attempts: usize, ell: usize },
}

impl HardnessError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            HardnessError::Core(e) => e.kind(),
            HardnessError::RetriesExhausted { .. } => ErrorKind::Infeasible,
        }
    }
}

pub type Result<T> = std::result::Result<T, HardnessError>;

pub(crate) fn parameter(msg: impl Into<String>) -> HardnessError {
    HardnessError::Core(subexp_core::Error::Parameter(msg.into()))
}
