//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong when driving the library with bad inputs.
///
/// Numerical *failures* (an identity that does not hold to tolerance) are not
/// errors: the verification harness reports them as failed checks. `Error` is
/// reserved for inputs that violate a documented precondition.
#[derive(Debug, Error)]
pub enum Error {
    /// A multiplicity component was negative or not finite.
    #[error("invalid multiplicity: {0}")]
    InvalidMultiplicity(String),

    /// A scalar parameter was outside its documented domain.
    #[error("invalid parameter {name}: {message}")]
    InvalidParameter {
        /// Name of the offending argument.
        name: &'static str,
        /// What went wrong.
        message: String,
    },

    /// An operation that requires a regular point (no zero coordinate) was
    /// called on the singular set.
    #[error("point has a zero coordinate where a regular point is required: {0}")]
    NonRegularPoint(String),

    /// A quadrature rule could not be constructed.
    #[error("quadrature construction failed: {0}")]
    Quadrature(String),

    /// Grid construction rejected its parameters, or two grid functions live
    /// on different grids.
    #[error("grid error: {0}")]
    Grid(String),

    /// The zero function was passed where a nonzero one is required.
    #[error("zero function rejected: {0}")]
    ZeroFunction(&'static str),

    /// A radial profile failed the admissibility test.
    #[error("profile is not admissible: {0}")]
    InadmissibleProfile(String),

    /// A verified inequality did not hold where the library guarantees it.
    #[error("verified inequality failed: {0}")]
    CheckFailed(String),

    /// Bad run configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Serialization / filesystem problems from the report writers.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
