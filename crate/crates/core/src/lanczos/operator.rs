use std::time::{Duration, Instant};

use crate::error::{check_dim, Result};
use crate::matcore::{sym_matvec, tri_solve_vec, DenseSymmetric, TriMode, UpperTriangular};

/// The symmetric operator `C` a Lanczos run works on.
#[derive(Debug, Clone, Copy)]
pub enum SpectralOperator<'a> {
    /// `C` formed explicitly: one symmetric matvec per application (2n² flops).
    Explicit(&'a DenseSymmetric),
    /// `C = U⁻ᵀ A U⁻¹` applied as solve, matvec, solve (4n² flops).
    Implicit {
        a: &'a DenseSymmetric,
        u: &'a UpperTriangular,
    },
}

/// Accumulated wall time of the pieces of an operator application.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ApplyProfile {
    pub solve: Duration,
    pub matvec: Duration,
    pub solve_transpose: Duration,
}

impl ApplyProfile {
    pub fn total(&self) -> Duration {
        self.solve + self.matvec + self.solve_transpose
    }
}

impl<'a> SpectralOperator<'a> {
    pub fn n(&self) -> usize {
        match self {
            SpectralOperator::Explicit(c) => c.n(),
            SpectralOperator::Implicit { a, .. } => a.n(),
        }
    }

    pub fn is_implicit(&self) -> bool {
        matches!(self, SpectralOperator::Implicit { .. })
    }

    /// Flops of one application.
    pub fn flops_per_apply(&self) -> f64 {
        let n2 = (self.n() as f64).powi(2);
        match self {
            SpectralOperator::Explicit(_) => 2.0 * n2,
            SpectralOperator::Implicit { .. } => 4.0 * n2,
        }
    }

    pub fn apply(&self, w: &[f64]) -> Result<Vec<f64>> {
        self.apply_profiled(w, &mut ApplyProfile::default())
    }

    /// As [`apply`](Self::apply), charging each piece to `profile`.
    pub fn apply_profiled(&self, w: &[f64], profile: &mut ApplyProfile) -> Result<Vec<f64>> {
        check_dim("operator_apply", self.n(), w.len())?;
        match *self {
            SpectralOperator::Explicit(c) => {
                let t = Instant::now();
                let z = sym_matvec(c, w)?;
                profile.matvec += t.elapsed();
                Ok(z)
            }
            SpectralOperator::Implicit { a, u } => {
                let t = Instant::now();
                let wbar = tri_solve_vec(u, w, TriMode::Inverse)?;
                profile.solve += t.elapsed();
                let t = Instant::now();
                let what = sym_matvec(a, &wbar)?;
                profile.matvec += t.elapsed();
                let t = Instant::now();
                let z = tri_solve_vec(u, &what, TriMode::InverseTranspose)?;
                profile.solve_transpose += t.elapsed();
                Ok(z)
            }
        }
    }
}

/// Free-function form of [`SpectralOperator::apply`].
pub fn operator_apply(op: &SpectralOperator<'_>, w: &[f64]) -> Result<Vec<f64>> {
    op.apply(w)
}
