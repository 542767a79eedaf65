use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model: {}", .0.join("; "))]
    InvalidModel(Vec<String>),

    #[error("invalid transition matrix: {0}")]
    InvalidTransition(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Every unnormalized filter weight fell below the underflow floor.
    #[error("degenerate input at step {step}: total predictive density underflowed")]
    Degenerate { step: usize },

    #[error("brute-force path sum needs {paths} hidden paths (limit {limit})")]
    PathLimit { paths: f64, limit: usize },

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    /// A kernel column lost (or gained) too much mass before renormalization.
    #[error("grid too coarse: column {column} sums to {sum} before normalization")]
    GridTooCoarse { column: usize, sum: f64 },

    #[error("non-finite value in {0}")]
    Numeric(&'static str),

    #[error("replication {rep} failed: {source}")]
    Replication {
        rep: usize,
        #[source]
        source: Box<Error>,
    },
}
