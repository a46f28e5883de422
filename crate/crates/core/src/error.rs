//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by lattice construction, design, and propagation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violated an invariant of its type. Names the offending
    /// field so callers can point at the exact input.
    #[error("invalid {field}: {message}")]
    InvalidParameter {
        field: &'static str,
        message: String,
    },

    /// A requested coupling cannot be realized by any positive separation
    /// under the given exponential law (C >= alpha).
    #[error(
        "infeasible geometry at gap {index}: coupling {coupling} 1/cm requires a \
         non-positive separation under alpha = {alpha} 1/cm"
    )]
    InfeasibleGeometry {
        index: usize,
        coupling: f64,
        alpha: f64,
    },

    /// Regression needs at least two distinct separations.
    #[error("underdetermined fit: {distinct} distinct separation(s), need at least 2")]
    UnderdeterminedFit { distinct: usize },

    /// A 1-based site index fell outside the lattice.
    #[error("site index {index} out of range for {n_sites} sites")]
    SiteOutOfRange { index: usize, n_sites: usize },

    /// The sampling grid was empty, negative, or not strictly increasing.
    #[error("invalid z grid: {message}")]
    InvalidGrid { message: String },

    /// Integrator step exceeds what the grid or accuracy target admits.
    #[error("step {step} cm too large; use a step of at most {max_allowed} cm")]
    StepTooLarge { step: f64, max_allowed: f64 },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            message: message.into(),
        }
    }
}

/// Checks that a value is finite and strictly positive.
pub(crate) fn ensure_positive(field: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::invalid(field, format!("must be positive, got {value}")));
    }
    Ok(())
}

/// Checks that a value is finite and non-negative.
pub(crate) fn ensure_non_negative(field: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::invalid(
            field,
            format!("must be non-negative, got {value}"),
        ));
    }
    Ok(())
}
