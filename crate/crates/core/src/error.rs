use thiserror::Error;

use crate::relations::Generator;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("representation is not unitarizable: {0}")]
    NotUnitarizable(String),

    #[error("dimension {dim} too small (need at least {min})")]
    DimensionTooSmall { dim: usize, min: usize },

    #[error("generator {0} is not present in the assignment")]
    UnknownGenerator(Generator),

    #[error("matrix for {symbol} is {rows}x{cols}, expected {dim}x{dim}")]
    DimensionMismatch {
        symbol: Generator,
        rows: usize,
        cols: usize,
        dim: usize,
    },

    #[error("zero off-diagonal entry at index {0}: the chain is reducible")]
    DegenerateChain(usize),

    #[error("recurrence to degree {requested} needs {needed} off-diagonal entries, system has {available}")]
    ChainTooShort {
        requested: usize,
        needed: usize,
        available: usize,
    },

    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),

    #[error("cannot parse number {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
