use thiserror::Error;

/// Errors raised by the model evaluators, solvers and the harness.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an input was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// Best-response dynamics hit the iteration cap.
    #[error("no convergence after {iterations} iterations (last profile {last:?})")]
    Divergence { iterations: usize, last: Vec<f64> },

    /// The stability probe saw the same sign on both sides of the candidate price.
    #[error("ambiguous stability: marginal utility {below:e} below and {above:e} above")]
    AmbiguousStability { below: f64, above: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
