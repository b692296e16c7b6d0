use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on the parameters does not hold. The message names it.
    #[error("domain error: {0}")]
    Domain(String),
    /// The gamma function was evaluated at a pole.
    #[error("pole of the gamma function at {0}")]
    Pole(f64),
    /// An iterative or adaptive routine failed to reach its tolerance.
    #[error("did not converge: {0}")]
    NonConvergence(String),
    /// A grid or sampled object is malformed.
    #[error("invalid grid: {0}")]
    Grid(String),
    /// The parameters fall outside every proven region.
    #[error("classification error: {0}")]
    Classification(String),
    /// An intermediate quantity left the range of `f64`.
    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
