use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid witness specification: {0}")]
    InvalidWitness(String),

    #[error("invalid strategy or mixture: {0}")]
    InvalidStrategy(String),

    #[error("enumeration guard exceeded: {count} strategies would be generated")]
    EnumerationGuard { count: u128 },

    #[error("infeasible target witness value {requested}: feasible up to {bound}")]
    Infeasible { requested: f64, bound: f64 },

    #[error("optimizer did not reach the constraint tolerance; best residual {residual:.3e}")]
    NonConvergence { residual: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid counts: {0}")]
    InvalidCounts(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
