//! Error type shared by all modules.

use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Domain` and `InvalidSector` map to CLI exit code 1, `NonConvergence`
/// to exit code 2.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Quantum numbers that do not form a valid sector.
    #[error("invalid sector: {0}")]
    InvalidSector(String),

    /// A quadrature did not meet its convergence target at the node cap.
    #[error("non-convergence in {context}: last value {last_value:e}, last delta {last_delta:e} (cap {cap} nodes)")]
    NonConvergence {
        context: String,
        last_value: f64,
        last_delta: f64,
        cap: usize,
    },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
