use thiserror::Error;

/// Errors raised by the permeance, force and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the mathematical domain of the requested formula.
    #[error("domain error: {0}")]
    Domain(String),
    /// The request itself is malformed (disallowed kind/mode pair, bad sweep spec, ...).
    #[error("usage error: {0}")]
    Usage(String),
    /// A finite-difference stencil would cross an existence boundary of the tube.
    #[error("stencil straddles an existence boundary: {0}")]
    Boundary(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
