//! Error types shared across the crate.
//!
//! Domain errors come from handing a closed form a parameter outside its
//! mathematical domain. Oracle errors come from the numerical machinery in
//! [`crate::oracle`] failing to reach its accuracy or bracketing targets.
//! Diagnostic payloads are reported in `f64` regardless of the scalar type
//! the computation ran in.

use thiserror::Error;

/// A parameter or state fell outside the domain of a closed form.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    /// A parameter that must be `>= 0` was negative.
    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },

    /// A parameter that must be `> 0` was zero or negative.
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    /// A parameter was NaN or infinite where a finite value is required.
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    /// A matrix that must be symmetric positive definite was not.
    #[error("{what} must be symmetric positive definite")]
    NotPositiveDefinite { what: &'static str },

    /// A threshold ratio or crossover is undefined for these parameters.
    #[error("threshold undefined: {reason}")]
    DegenerateThreshold { reason: &'static str },
}

/// A numerical oracle failed to deliver its target accuracy.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    /// Quadrature refinement stalled above the requested error target.
    #[error("quadrature stalled at estimate {estimate} with error bound {error_bound} (target {target})")]
    QuadratureNotConverged {
        estimate: f64,
        error_bound: f64,
        target: f64,
    },

    /// No sign change was found, even after expanding the bracket.
    #[error("no sign change on [{lo}, {hi}] after bracket expansion")]
    NoBracket { lo: f64, hi: f64 },

    /// The integration span or step configuration is unusable.
    #[error("invalid integration span {0}")]
    BadSpan(f64),
}
