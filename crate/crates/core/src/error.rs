use thiserror::Error;

/// Errors raised by the kinetic-closure toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate distribution: density {rho:e} is below the quadrature tolerance")]
    DegenerateDistribution { rho: f64 },

    #[error("invalid distribution: value {value:e} at node {node:?} is negative")]
    InvalidDistribution { node: [usize; 3], value: f64 },

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("moments are not realizable on this grid: {0}")]
    Realizability(String),

    #[error("numerical consistency check failed: {0}")]
    NumericalConsistency(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("insufficient signal: {0}")]
    InsufficientSignal(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
