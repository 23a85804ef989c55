use thiserror::Error;

/// Errors raised by the coefficient-functional machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("evaluation at a pole of the quadratic differential (xi = {xi})")]
    Pole { xi: String },

    #[error("no unimodular double zero (best residual {best_residual:.3e}): {diagnostics}")]
    NoDoubleZero {
        best_residual: f64,
        diagnostics: String,
    },

    #[error("branch tracking failed at step {step}: direction turned by {angle:.3} rad")]
    Branch { step: usize, angle: f64 },

    #[error("Loewner flow not converged at horizon {horizon}: last delta {last_delta:.3e}")]
    Horizon { horizon: f64, last_delta: f64 },

    #[error("search failed: {0}")]
    Search(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
