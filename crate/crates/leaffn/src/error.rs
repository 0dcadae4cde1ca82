//! Error type shared by every evaluation path in the crate.

use std::fmt;

/// Errors raised by quadrature, root finding, ODE integration and the
/// function evaluators built on top of them.
#[derive(Debug, Clone, PartialEq)]
pub enum LeafError {
    /// An iterative kernel ran out of budget before reaching its tolerance.
    NonConvergence {
        /// Which kernel gave up.
        context: &'static str,
    },
    /// An argument lies outside the mathematical domain of the operation.
    DomainError { message: String },
    /// A hyperbolic function was evaluated at or beyond its domain limit.
    DomainExceeded { limit: f64, argument: f64 },
    /// The evaluation point is closer to a pole than the configured guard
    /// distance allows.
    PoleProximity { distance: f64 },
    /// A formula denominator fell below the configured guard.
    DivisionNearZero { context: &'static str },
    /// The square-root branch is not differentiable at this point.
    DegenerateBranch,
}

impl fmt::Display for LeafError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeafError::NonConvergence { context } => {
                write!(f, "failed to converge: {context}")
            }
            LeafError::DomainError { message } => write!(f, "domain error: {message}"),
            LeafError::DomainExceeded { limit, argument } => {
                write!(f, "argument {argument} exceeds the domain limit ±{limit}")
            }
            LeafError::PoleProximity { distance } => {
                write!(f, "argument is within {distance} of a pole")
            }
            LeafError::DivisionNearZero { context } => {
                write!(f, "denominator below guard: {context}")
            }
            LeafError::DegenerateBranch => {
                write!(f, "square-root branch degenerate (value too close to zero)")
            }
        }
    }
}

impl std::error::Error for LeafError {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, LeafError>;

pub(crate) fn domain_error<T>(message: impl Into<String>) -> Result<T> {
    Err(LeafError::DomainError {
        message: message.into(),
    })
}
