use thiserror::Error;

use crate::weight::Weight;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Lie type factor `{factor}`: {reason}")]
    InvalidType { factor: String, reason: String },

    #[error("weight {weight} has {found} coordinates but the root system has rank {rank}")]
    DimensionMismatch {
        weight: Weight,
        rank: usize,
        found: usize,
    },

    #[error("weight {0} is not dominant (all coordinates must be >= 0)")]
    NotDominant(Weight),

    #[error("malformed weight `{0}`: expected comma-separated integers such as `1,0`")]
    MalformedWeight(String),

    #[error("deformation parameter q = {0} is outside the open interval (0, 1)")]
    QOutOfRange(f64),

    #[error("beta = {0} is invalid: {1}")]
    InvalidBeta(f64, &'static str),

    #[error("invalid weight table: {0}")]
    InvalidTable(String),

    #[error("no table entry for weight {0}")]
    MissingTableEntry(Weight),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A mathematical invariant failed; this indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
