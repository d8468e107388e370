use std::path::PathBuf;

use thiserror::Error;

use crate::fit::SampleKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("fit degree {degree} needs at least {} samples, got {samples}", degree + 1)]
    DegreeTooHigh { degree: usize, samples: usize },

    #[error("least-squares system is rank deficient (rank {rank} < {columns})")]
    RankDeficient { rank: usize, columns: usize },

    #[error("batch holds {found:?} samples but {expected:?} samples are required")]
    KindMismatch { expected: SampleKind, found: SampleKind },

    #[error("invalid batch: {0}")]
    InvalidBatch(String),

    #[error("argument {value} outside the Chebyshev domain [-1, 1]")]
    OutOfDomain { value: f64 },

    #[error("{nodes} interpolation nodes cannot determine {} coefficients", degree + 1)]
    InsufficientNodes { nodes: usize, degree: usize },

    #[error("truncation degree {m_t} is below the fit degree + 1 ({required})")]
    TruncationTooLow { m_t: usize, required: usize },

    #[error("iteration did not converge in {iterations} steps (last DPC {dpc:e})")]
    NotConverged { iterations: usize, dpc: f64 },

    #[error("update interval {index}: {source}")]
    Interval {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config { field: field.into(), message: message.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
