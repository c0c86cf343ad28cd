use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("ambient length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("degree {requested} exceeds built table degree {built}; extend the table first")]
    DegreeExceeded { requested: u32, built: u32 },

    #[error("pole: ({param})_k vanishes at k = {k}")]
    Pole { param: String, k: Partition },

    #[error("singular argument: denominator of a~_{j} vanishes for pair ({j},{k})")]
    Singular { j: usize, k: usize },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
