//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A channel or split parameter failed validation. `name` identifies the
    /// offending field.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation does not apply to this channel class.
    #[error("dispatch error: {0}")]
    Dispatch(String),

    /// The closed-form solution is not defined in this parameter regime.
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    /// The half-plane set does not bound the region inside the first quadrant.
    #[error("unbounded region: {0}")]
    Unbounded(String),

    /// A half-plane set or vertex list violates the region invariants.
    #[error("invalid region: {0}")]
    InvalidRegion(String),

    /// The feasible set of an optimization problem is empty (or no feasible
    /// point was found).
    #[error("infeasible optimization: {0}")]
    Infeasible(String),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
