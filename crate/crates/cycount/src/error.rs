use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyError {
    #[error("modulus {0} is not prime (prime powers are not supported)")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched fields: q={0} vs q={1}")]
    FieldMismatch(u64, u64),
    #[error("{0} has no square root in Q(sqrt q, sqrt(q-1)) for q={1}")]
    NoSquareRoot(String, u64),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("grading violation: {0}")]
    Grading(String),
    #[error("invalid ruling: {0}")]
    InvalidRuling(String),
    #[error("incompatible shapes: {0}")]
    Shape(String),
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    Resource { what: String, needed: usize, cap: usize },
    #[error("not a valid object: {0}")]
    InvalidObject(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, CyError>;
