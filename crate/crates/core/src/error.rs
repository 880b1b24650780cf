//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by exact matrix algebra, the generator constructions, and
/// the numerical invariants.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Matrix sizes are incompatible with the requested operation.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// An argument is outside the operation's domain (even k, off-sphere
    /// point, unknown table index, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured resource limit was exceeded (matrix sizes grow as
    /// 2^((k-1)/2), so k is capped).
    #[error("resource limit: {0}")]
    Resource(String),

    /// A documented precondition of the operation does not hold for the
    /// given input (non-unitary pencil, selection set of wrong parity, ...).
    #[error("precondition violated: {0}")]
    Contract(String),

    /// The spectral gap required by a projection-based invariant is absent.
    #[error("spectral gap too small: min |eigenvalue| = {0:.3e}")]
    Gap(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
