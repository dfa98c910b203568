use thiserror::Error;

/// Errors reported by the belief-function operators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("frame must have between 1 and {max} elements, got {got}", max = crate::frame::MAX_ELEMENTS)]
    InvalidFrame { got: usize },

    #[error("frame labels must be unique and non-empty (offending label: {label:?})")]
    InvalidLabel { label: String },

    #[error("masses sum to {sum}, expected 1 within {tol}", tol = crate::mass::MASS_TOL)]
    NonUnitSum { sum: f64 },

    #[error("negative mass {mass} assigned to a subset")]
    NegativeMass { mass: f64 },

    #[error("duplicate subset in mass assignments (bits {bits:#b})")]
    DuplicateSubset { bits: u32 },

    #[error("subset (bits {bits:#b}) does not fit a frame of {n_elems} elements")]
    SubsetOutOfRange { bits: u32, n_elems: usize },

    #[error("mass function has no assignments")]
    EmptyAssignments,

    #[error("operands are defined on different frames")]
    FrameMismatch,

    #[error("expected a non-empty list of mass functions")]
    EmptyList,

    #[error("conditioning set must not be empty")]
    EmptyConditioner,

    #[error("focal element (bits {bits:#b}) lies outside the conditioning set")]
    FocalOutsideConditioner { bits: u32 },

    #[error("discount factor must lie in [0, 1], got {alpha}")]
    AlphaOutOfRange { alpha: f64 },

    #[error("rate {name} must lie in [0, 1], got {value}")]
    RateOutOfRange { name: &'static str, value: f64 },

    #[error("total conflict: all mass on the empty set")]
    TotalConflict,

    #[error("product frame would have {got} elements, limit is {max}", max = crate::frame::MAX_ELEMENTS)]
    FrameTooLarge { got: usize },

    #[error("cluster {cluster} is empty")]
    EmptyCluster { cluster: usize },

    #[error("cannot build {clusters} clusters from {objects} objects")]
    TooFewObjects { objects: usize, clusters: usize },

    #[error("partitions do not cover the same objects or cluster counts differ")]
    PartitionMismatch,

    #[error("input lists have different lengths: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("contradiction map is not a derangement of the frame elements")]
    NotADerangement,

    #[error("decision class must be a singleton (bits {bits:#b})")]
    NotASingleton { bits: u32 },

    #[error("invalid partition: {reason}")]
    InvalidPartition { reason: &'static str },

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
