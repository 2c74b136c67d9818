use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation
    /// (point outside the interval, log of a non-positive number, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation produced or encountered a non-finite value where a
    /// finite one is required (overflow, singular derivative, ...).
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// A tuning parameter violates its documented range (s outside (0, 1],
    /// non-conjugate Hölder exponents, empty grids, ...).
    #[error("invalid parameter: {0}")]
    Param(String),

    /// A configuration file or equation id could not be interpreted.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
