//! Implicitly restarted symmetric Lanczos over an abstract operator, with full
//! re-orthogonalization and exact shifts.

mod driver;
mod operator;
mod restart;
mod state;

pub use driver::{
    check_convergence, default_subspace_size, keep_size, solve_std_krylov, KrylovDiagnostics,
    KrylovOptions, KrylovSolution, RitzInfo, DEFAULT_MAX_RESTARTS, DEFAULT_START_SEED,
};
pub use operator::{operator_apply, ApplyProfile, SpectralOperator};
pub use restart::implicit_restart;
pub use state::{basis_orthogonality, extend_factorization, factorization_residual, LanczosState};
