use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation is not defined for this kind of function.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// Inconsistent arguments (mismatched orders, empty grids, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// An iterative solver failed to converge.
    #[error("numeric failure in {what}: bracket [{lo:e}, {hi:e}] after {iterations} iterations")]
    Numeric {
        what: String,
        lo: f64,
        hi: f64,
        iterations: usize,
    },

    /// An estimator could not produce a value from the sampled inputs.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
