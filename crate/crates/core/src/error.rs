use thiserror::Error;

/// Errors raised by the library. The CLI maps every variant to exit status 1.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("resolution vector has length {got}, diagram has {expected} crossings")]
    ResolutionLength { expected: usize, got: usize },

    #[error("differential does not square to zero")]
    NotAComplex,

    #[error("differential is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("differential lowers the filtration grading from generator {from} to generator {to}")]
    FiltrationViolated { from: usize, to: usize },

    #[error("cannot cancel: d(x_{from}, x_{to}) = 0")]
    InvalidCancellation { from: usize, to: usize },

    #[error("chain is not a cycle")]
    NotACycle,

    #[error("chain is not homogeneous in the filtration grading")]
    InhomogeneousChain,

    #[error("disconnected diagram: {0}")]
    Disconnected(String),

    #[error("invalid solver constraints: {0}")]
    InvalidConstraints(String),

    #[error("page data does not match the link: {0}")]
    Inconsistent(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
