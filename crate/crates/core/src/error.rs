//! Library error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument violates an operation's documented precondition.
    #[error("{op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// A NaN or infinite value was passed where a finite one is required.
    #[error("{op}: argument `{name}` must be finite")]
    NonFinite { op: &'static str, name: &'static str },

    /// A computed quantity left its admissible range, usually because the
    /// quadrature grid is too coarse.
    #[error("{op}: {reason}")]
    Numerical { op: &'static str, reason: String },

    /// Linear system too ill-conditioned to trust.
    #[error("{op}: condition estimate {condition:.3e} exceeds {limit:.1e}")]
    IllConditioned { op: &'static str, condition: f64, limit: f64 },

    /// A value moved by more than the tolerance when the grid was refined.
    #[error("{op}: grid refinement changed the result by {change:.3e} (tolerance {tolerance:.1e})")]
    Refinement { op: &'static str, change: f64, tolerance: f64 },

    /// A postcondition on an emitted curve or sample set failed.
    #[error("{op}: {reason}")]
    Invariant { op: &'static str, reason: String },

    /// Iterative method failed to converge.
    #[error("{op}: no convergence after {iterations} iterations")]
    NoConvergence { op: &'static str, iterations: usize },

    /// The eigensolver failed on a sampled matrix; seed and index allow replay.
    #[error("eigensolver failed for seed {seed}, sample {index}")]
    Eigensolver { seed: u64, index: u64 },

    /// Two experiment results cannot be merged.
    #[error("cannot merge results: {0}")]
    Merge(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain { op, reason: reason.into() }
    }

    pub(crate) fn numerical(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Numerical { op, reason: reason.into() }
    }
}

pub(crate) fn ensure_finite(op: &'static str, name: &'static str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { op, name })
    }
}
