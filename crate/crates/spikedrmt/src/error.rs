use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A request for zero items (e.g. `n = 0` functions).
    #[error("empty request: {0}")]
    EmptyRequest(&'static str),
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Exact integer arithmetic would overflow.
    #[error("exact arithmetic overflow: {0}")]
    Overflow(String),
    /// Inconsistent sizes or ranks.
    #[error("dimension error: {0}")]
    Dimension(String),
    /// The configuration is valid but not supported by this solver.
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    /// Input is degenerate after deflation.
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// Arguments are too close to a singular configuration.
    #[error("ill-conditioned input: {0}")]
    Conditioning(String),
    /// A root could not be bracketed or polished.
    #[error("bracketing failure: {0}")]
    Bracketing(String),
    /// Invalid experiment configuration.
    #[error("configuration error: {0}")]
    Config(String),
    /// Filesystem failure with path context.
    #[error("i/o error at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
