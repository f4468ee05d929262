use thiserror::Error;

/// Errors produced by the simulator and its numerical kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error(
        "matrix of size {size} is not positive definite after jitter {jitter:e} \
         (pivot {pivot:e} at row {row}, diagonal ratio {condition:e})"
    )]
    Factorization {
        size: usize,
        row: usize,
        pivot: f64,
        jitter: f64,
        /// max/min diagonal ratio of the input, a cheap conditioning estimate
        condition: f64,
    },

    #[error("point {point:?} lies outside the domain")]
    OutOfDomain { point: Vec<f64> },

    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("degenerate posterior standard deviation {0:e}")]
    DegenerateVariance(f64),

    #[error("information gain routes disagree: log-det {logdet}, chain rule {chain}")]
    InconsistentGain { logdet: f64, chain: f64 },

    #[error("missing {table} estimate at index {index} (table has {len} entries)")]
    MissingEstimate {
        table: &'static str,
        index: usize,
        len: usize,
    },

    #[error("dataset consistency violated for agent {agent} at round {round}: {reason}")]
    Consistency {
        agent: usize,
        round: usize,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
