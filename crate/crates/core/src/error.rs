use thiserror::Error;

/// Errors raised by the kernels and solvers.
///
/// Positional indices (`SingularFactor`, `NotPositiveDefinite`) are 1-based,
/// following the LAPACK `info` convention.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("triangular factor is singular: zero diagonal entry at position {0}")]
    SingularFactor(usize),

    #[error("matrix is not positive definite: pivot {0} is not positive")]
    NotPositiveDefinite(usize),

    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("invalid semibandwidth {w} for dimension {n}")]
    InvalidBandwidth { w: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("inverse iteration did not converge for eigenpair {0}")]
    ConvergenceFailure(usize),

    #[error("Lanczos breakdown at step {step}: no new direction after retries")]
    Breakdown { step: usize },

    #[error(
        "maximum number of restarts exceeded with {converged} of {wanted} eigenpairs converged"
    )]
    MaxRestartsExceeded { converged: usize, wanted: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}
