use std::path::PathBuf;

use subexp_core::ErrorKind;
use subexp_hardness::HardnessError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Core(#[from] subexp_core::Error),
    #[error(transparent)]
    Hardness(#[from] HardnessError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<BenchError>,
    },
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("report row {row}: {message}")]
    Report { row: usize, message: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INFEASIBLE: i32 = 1;
    pub const REFUSED: i32 = 2;
    pub const INVALID_INPUT: i32 = 3;
    pub const INVARIANT: i32 = 4;
}

fn kind_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Infeasible => exit::INFEASIBLE,
        ErrorKind::Refusal => exit::REFUSED,
        ErrorKind::InvalidInput => exit::INVALID_INPUT,
    }
}

impl BenchError {
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Core(e) => kind_code(e.kind()),
            BenchError::Hardness(e) => kind_code(e.kind()),
            BenchError::InFile { source, .. } => source.exit_code(),
            BenchError::Io { .. }
            | BenchError::Config { .. }
            | BenchError::Report { .. }
            | BenchError::Input(_)
            | BenchError::InvalidSolution(_) => exit::INVALID_INPUT,
            BenchError::Invariant(_) => exit::INVARIANT,
        }
    }

    pub fn in_file(self, path: impl Into<PathBuf>) -> Self {
        BenchError::InFile {
            path: path.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, BenchError>;

pub fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| BenchError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &std::path::Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| BenchError::Io {
        path: path.to_path_buf(),
        source,
    })
}
