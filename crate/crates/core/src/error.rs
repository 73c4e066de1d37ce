use thiserror::Error;

/// Errors produced by the engine.
///
/// The variants map one-to-one onto the CLI exit codes and the FFI status
/// codes, so new variants must be added there as well.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input (bad words, mismatched alphabets,
    /// parse failures, out-of-range parameters).
    #[error("invalid input: {0}")]
    Input(String),

    /// A forbidden set violates a structural requirement (not reduced,
    /// contains words shorter than two symbols, ...).
    #[error("validation failed: {0}")]
    Validation(String),

    /// The constraint admits no strings of unbounded length, so capacity and
    /// spectral quantities are undefined.
    #[error("degenerate constraint: {0}")]
    Degenerate(String),

    /// A configured resource guard (enumeration budget, matrix size cap)
    /// would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// No positive real root exists in the searched range.
    #[error("no positive root: {0}")]
    NoRoot(String),

    /// An exact division left a remainder or an algebraic invariant broke.
    /// Always indicates a bug upstream.
    #[error("internal arithmetic error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
