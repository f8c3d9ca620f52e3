use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("division by zero")]
    DivisionByZero,
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("characteristic polynomial does not split over the rationals")]
    NonSplitSpectrum,
    #[error("search exhausted within bounds (sigma <= {sigma}, z <= {z}, window {window})")]
    SearchExhausted {
        sigma: usize,
        z: usize,
        window: usize,
    },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid deformation parameter {0}: q must avoid 0, 1 and -1")]
    InvalidQ(String),
    #[error("matrix is not invertible over the Laurent ring")]
    NotInvertible,
    #[error("malformed descriptor: {0}")]
    Descriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
