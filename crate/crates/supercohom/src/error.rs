//! error types.

use thiserror::Error;

use crate::linalg::FieldTag;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    TagMismatch(FieldTag, FieldTag),
    #[error("not an odd prime below 2^31: {0}")]
    BadModulus(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("grading violation: {0}")]
    Grading(String),
    #[error("no p-map defined: {0}")]
    NoPMap(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error("degree {0} exceeds truncation {1}")]
    Truncation(usize, usize),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("resource bound exceeded: {0}")]
    Bound(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
