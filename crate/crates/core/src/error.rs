use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition {parts:?}: parts must be weakly decreasing")]
    InvalidPartition { parts: Vec<u32> },

    #[error("partition {partition:?} does not fit in a {rows}x{cols} box")]
    DoesNotFit {
        partition: Vec<u32>,
        rows: usize,
        cols: usize,
    },

    #[error("invalid index set {elems:?} in [{ambient}]: {reason}")]
    InvalidIndexSet {
        elems: Vec<u32>,
        ambient: u32,
        reason: &'static str,
    },

    #[error("spectrum {factor} is not weakly decreasing at position {position}")]
    Unordered { factor: usize, position: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid parameters: {0}")]
    Parameters(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inputs are infeasible: {0}")]
    Infeasible(String),

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
