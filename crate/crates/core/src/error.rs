//! Error types shared across the pipeline.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by seed construction, quadrature and synthesis.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A configuration value is outside its admissible range.
    InvalidConfig(String),
    /// A seed function failed normalization or validation.
    InvalidSeed(String),
    /// Numerical evaluation did not converge; carries the residual estimate.
    Evaluation { what: String, residual: f64 },
    /// An overlap or orthonormality integral did not converge.
    Integration { what: String, residual: f64 },
    /// The spectral series is not strictly positive, so the synthesis
    /// integral may diverge. Carries the certified minimum and its location.
    Positivity { min_value: f64, min_location: f64 },
    /// Tabulated seed file could not be parsed.
    TabulatedFormat(String),
    /// Not enough tail samples to classify a decay law.
    InsufficientTail(String),
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::InvalidSeed(msg) => write!(f, "invalid seed: {msg}"),
            Error::Evaluation { what, residual } => {
                write!(f, "evaluation of {what} did not converge (residual ~{residual:.3e})")
            }
            Error::Integration { what, residual } => {
                write!(f, "integration of {what} did not converge (residual ~{residual:.3e})")
            }
            Error::Positivity { min_value, min_location } => write!(
                f,
                "spectral series is not strictly positive: min {min_value:.6e} at p = {min_location:.6}"
            ),
            Error::TabulatedFormat(msg) => write!(f, "tabulated seed file: {msg}"),
            Error::InsufficientTail(msg) => write!(f, "insufficient tail: {msg}"),
            Error::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
