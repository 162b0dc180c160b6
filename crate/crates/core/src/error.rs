use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} amplitudes, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("{n_sites} sites is too large for the exact path (cap {cap})")]
    TooLarge { n_sites: usize, cap: usize },

    #[error("site {site} out of range for {n_sites} sites")]
    SiteOutOfRange { site: usize, n_sites: usize },

    #[error("temperature must be nonzero")]
    ZeroTemperature,

    #[error("imaginary-time evolution underflowed to the zero vector")]
    Underflow,

    #[error("measurement outcome is orthogonal to the state (probability {probability:e})")]
    OrthogonalOutcome { probability: f64 },

    #[error("superposition of the inputs vanishes")]
    ZeroSuperposition,

    #[error("invalid delay interval [{low}, {high}]")]
    InvalidInterval { low: f64, high: f64 },

    #[error("spectrum carries no eigenvectors")]
    MissingEigenvectors,

    #[error("energy grids differ")]
    GridMismatch,

    #[error("cut leaves zero probability (B = {normalization:e})")]
    ZeroProbabilityOutcome { normalization: f64 },

    #[error("formula domain exceeded: {0}")]
    DomainExceeded(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{n_sites} sites exceeds the memory budget ({budget_sites} sites max)")]
    MemoryBudget { n_sites: usize, budget_sites: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error("no records to emit")]
    EmptyRecords,

    #[error("I/O error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
