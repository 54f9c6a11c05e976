use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("index out of range: {what} = {index}, limit {limit}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("distance {0} m is below the 1 m path-loss reference")]
    DistanceTooSmall(f64),

    #[error("cannot select a beam for an all-zero channel vector")]
    ZeroChannel,

    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("probability vector is off the simplex: {0}")]
    OffSimplex(String),

    #[error("invalid learning input: {0}")]
    InvalidLearningInput(String),

    #[error(
        "exhaustive search needs {size} joint schedules ((M!)^N), above the budget of {budget}; \
         use the greedy or learning scheduler instead"
    )]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("empirical CDF needs at least one sample")]
    EmptySamples,

    #[error("invalid experiment: {0}")]
    InvalidExperiment(String),

    #[error("malformed result file {path}: {reason}")]
    MalformedResults { path: PathBuf, reason: String },

    #[error("failed to parse config: {0}")]
    ConfigParse(#[from] toml::de::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_index(what: &'static str, index: usize, limit: usize) -> Result<()> {
    if index < limit {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { what, index, limit })
    }
}
