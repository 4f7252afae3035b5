use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid chain complex `{name}`: {reason}")]
    InvalidComplex { name: String, reason: String },

    #[error("invalid graded map: {0}")]
    InvalidMap(String),

    #[error("not a chain map: {0}")]
    NotAChainMap(String),

    #[error("invalid order map: {0}")]
    InvalidOrderMap(String),

    #[error("invalid cell key {key} for a domain of size {size}")]
    InvalidSubset { key: String, size: usize },

    #[error("formal chain is not homogeneous of an admissible degree: {0}")]
    Degree(String),

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("no cochain stored for sequence {0}")]
    MissingCochain(String),

    #[error("missing diagram entry: {0}")]
    MissingObject(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}
