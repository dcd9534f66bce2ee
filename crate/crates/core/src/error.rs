use thiserror::Error;

use crate::instances::VertexId;

/// Errors shared by the solvers, oracles and parsers.
///
/// Refusal (a configured cap or work budget would be exceeded) is kept
/// separate from infeasibility: oracles never fall back to approximations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("infeasible: terminal {terminal} is unreachable from root {root}")]
    UnreachableTerminal { terminal: VertexId, root: VertexId },
    #[error("infeasible: element {0} is contained in no set")]
    UncoverableElement(usize),
    #[error("refused: {what} needs {estimate} units of work, cap is {cap}")]
    Refused {
        what: &'static str,
        estimate: u128,
        cap: u128,
    },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Infeasible,
    Refusal,
    InvalidInput,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::UnreachableTerminal { .. } | Error::UncoverableElement(_) => {
                ErrorKind::Infeasible
            }
            Error::Refused { .. } => ErrorKind::Refusal,
            Error::InvalidInstance(_) | Error::Parameter(_) | Error::Parse { .. } => {
                ErrorKind::InvalidInput
            }
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
