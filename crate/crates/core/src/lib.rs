//! Dense generalized symmetric-definite eigensolvers for `A X = B X Λ`.
//!
//! The pencil is reduced to a standard problem through the Cholesky factor of
//! `B`, solved with one of four variants, and transformed back:
//!
//! * [`Variant::Td`]: Householder tridiagonalization and a subset tridiagonal
//!   eigensolver.
//! * [`Variant::Tt`]: two-stage reduction (dense to band, band to tridiagonal).
//! * [`Variant::Ke`]: implicitly restarted Lanczos on the explicitly formed `C`.
//! * [`Variant::Ki`]: the same, applying `C = U⁻ᵀAU⁻¹` through triangular solves.
//!
//! ```
//! use gsyeig_core::{solve_gsyeig, DenseSymmetric, SolverConfig, Variant};
//!
//! let a = DenseSymmetric::from_diag(&[3.0, 1.0, 2.0]);
//! let b = DenseSymmetric::identity(3);
//! let r = solve_gsyeig(&a, &b, &SolverConfig::new(Variant::Td, 2)).unwrap();
//! assert!((r.eigenvalues[0] - 1.0).abs() < 1e-12);
//! ```

pub mod error;
pub mod lanczos;
pub mod matcore;
pub mod pipeline;
pub mod stage;
pub mod stdform;
pub mod tridiag;

pub use error::{Error, Result};
pub use matcore::{
    frobenius_norm, BandedSymmetric, DenseMatrix, DenseSymmetric, SymTridiagonal, Uplo,
    UpperTriangular,
};
pub use pipeline::{
    accuracy_metrics, cost_model, eigen_pair_with_spectrum, solve_gsyeig, Accuracy, CostParams,
    CostReport, EigenResult, SolveDiagnostics, SolverConfig, SpectrumRecipe,
};
pub use stage::{StageKey, StageTimings, Variant};
pub use tridiag::Which;
