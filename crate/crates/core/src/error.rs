use thiserror::Error;

/// Errors raised by every layer of the crate.
///
/// The variants fall into four families that callers (the CLI in
/// particular) map onto exit statuses: validation, consistency, resource
/// limits and numerics. See [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid rank {0}: rank must be at least 1")]
    InvalidRank(i64),

    #[error("invalid dimension d = {0}: must be odd and at least 3")]
    InvalidDimension(i64),

    #[error("resource limit: {what} = {requested} exceeds the bound {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("representation is not strongly acyclic: highest weight {weight} equals its theta-twist {twisted}")]
    NotStronglyAcyclic { weight: String, twisted: String },

    #[error("internal consistency error: {0}")]
    InternalConsistency(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("ambiguous projection: {0}")]
    AmbiguousProjection(String),

    #[error("invalid cochain complex: {0}")]
    InvalidComplex(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid cohomology basis in degree {degree}: {reason}")]
    InvalidBasis { degree: i64, reason: String },

    #[error("consistency check failed: {0}")]
    ConsistencyFailure(String),

    #[error("numerics: {0}")]
    Numerics(String),

    #[error("parse error: {0}")]
    Parse(String),
}

/// Coarse classification of [`Error`] values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Consistency,
    Resource,
    Numerics,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::ResourceLimit { .. } => ErrorKind::Resource,
            Error::InternalConsistency(_)
            | Error::ConsistencyFailure(_)
            | Error::Construction(_) => ErrorKind::Consistency,
            Error::Numerics(_) => ErrorKind::Numerics,
            _ => ErrorKind::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
