use std::collections::BTreeMap;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Rejection counts keyed by the hypothesis that failed.
pub type Histogram = BTreeMap<String, u64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {}x{} vs {}x{}", left.0, left.1, right.0, right.1)]
    Dimension {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op} requires a square matrix, got {}x{}", shape.0, shape.1)]
    NotSquare {
        op: &'static str,
        shape: (usize, usize),
    },

    #[error("no group inverse{}: rank(M²)={rank_sq}≠rank(M)={rank}", block.as_ref().map(|b| format!(" for block {b}")).unwrap_or_default())]
    NoGroupInverse {
        block: Option<String>,
        rank: usize,
        rank_sq: usize,
    },

    #[error("invalid block partition: {0}")]
    Partition(String),

    #[error("instance generation failed after {discards} rejections (seed {seed})")]
    GenerationFailed {
        seed: u64,
        discards: u64,
        histogram: Histogram,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn dim(op: &'static str, left: (usize, usize), right: (usize, usize)) -> Self {
        Error::Dimension { op, left, right }
    }

    /// Attaches a block name to a group-inverse failure.
    pub fn in_block(self, name: &str) -> Self {
        match self {
            Error::NoGroupInverse { rank, rank_sq, .. } => Error::NoGroupInverse {
                block: Some(name.to_string()),
                rank,
                rank_sq,
            },
            other => other,
        }
    }
}
