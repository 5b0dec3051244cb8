//! Error type shared by all simulator modules.

use thiserror::Error;

/// Errors reported by the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty state vector")]
    EmptyVector,

    #[error("state of length {len} does not match split {dim_a}x{dim_b}")]
    InvalidSplit { len: usize, dim_a: usize, dim_b: usize },

    #[error("state vector of length {len} exceeds the dense ceiling of {max} amplitudes")]
    StateTooLarge { len: usize, max: usize },

    #[error("state norm {norm:.3e} is not 1 within tolerance")]
    NotNormalized { norm: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("subsystem index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("matrix is not {property}; worst violation {violation:.3e}")]
    MatrixValidation { property: &'static str, violation: f64 },

    #[error("decomposition failed: {0}")]
    Decomposition(&'static str),

    #[error("unitary completion failed after column {column}")]
    CompletionFailure { column: usize },

    #[error(
        "measurement branch is numerically degenerate (complement amplitude {amplitude:.3e}); \
         the input already equals the target state"
    )]
    DegenerateBranch { amplitude: f64 },

    #[error("restoration did not verify within {max_iters} iterations")]
    RestorationCapExceeded { max_iters: u64 },

    #[error("recovery walk did not return to the verified state within {cap} steps")]
    RecoveryCapExceeded { cap: u64 },

    #[error("qubit {qubit} was not recovered within {cap} verification attempts")]
    PerQubitCapExceeded { qubit: usize, cap: u64 },

    #[error("post-measurement state is not a product state")]
    NotProduct,

    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
