use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("grading violation: {0}")]
    Grading(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("bilinear form is degenerate")]
    Degenerate,
    #[error("odd dimension {0} is not even")]
    OddDimensionNotEven(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not idempotent: {0}")]
    NotIdempotent(String),
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("spectral decomposition failed: {0}")]
    Spectral(String),
    #[error("ambiguous sign: |{0}| is below the numeric tolerance")]
    AmbiguousSign(f64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not in the localized ring: {0}")]
    NotLocalized(String),
    #[error("pole at the evaluation point")]
    Pole,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
