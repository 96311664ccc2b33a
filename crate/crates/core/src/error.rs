use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is empty")]
    EmptyMatrix,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid mixed profile: {0}")]
    InvalidProfile(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration cap exceeded: m + n = {size} exceeds cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("rank guard exceeded: rank(A+B) = {rank} exceeds limit {limit}")]
    RankGuard { rank: usize, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("approximation failed: {0}")]
    ApproximationFailed(String),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
