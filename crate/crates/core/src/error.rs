use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the discretizations, oracles and experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    /// Evaluation at a pole of a special function.
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: f64 },

    /// Adaptive quadrature gave up before reaching the requested tolerance.
    #[error(
        "quadrature tolerance not met: estimate {value:e}, achieved error {achieved:e}, \
         requested {requested:e} after {subdivisions} subdivisions"
    )]
    ToleranceNotMet {
        value: f64,
        achieved: f64,
        requested: f64,
        subdivisions: usize,
    },

    /// Log-log fit with no spread in the abscissae, or non-positive data.
    #[error("degenerate rate fit: {0}")]
    DegenerateFit(String),

    #[error("test function `{name}` has no reference for the {what}")]
    UnsupportedFunction { name: String, what: &'static str },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of a numerical tolerance (as opposed to bad input).
    pub fn is_tolerance_failure(&self) -> bool {
        matches!(self, Error::ToleranceNotMet { .. })
    }
}
