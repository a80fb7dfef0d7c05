//! CLI errors and their exit codes.

use thiserror::Error;

use supercohom::{AlgebraError, ScalarError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<ScalarError> for CliError {
    fn from(e: ScalarError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e.to_string()))
    }
}

impl CliError {
    /// 1 validation, 2 parse, 3 resource bound.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Algebra(AlgebraError::Bound(_) | AlgebraError::Truncation(..) | AlgebraError::OutOfScope(_)) => 3,
            CliError::Algebra(AlgebraError::Scalar(_)) => 2,
            CliError::Validation(_) | CliError::Algebra(_) => 1,
        }
    }
}
