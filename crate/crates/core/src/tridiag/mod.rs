//! Tridiagonal-reduction solvers for the standard problem `C Y = Y Λ`.
//!
//! Variant TD reduces `C` directly and keeps `Q` as reflectors; variant TT
//! goes dense → band → tridiagonal and carries an explicit `Q₁Q₂`.

mod band;
mod bulge;
mod direct;
mod householder;
pub(crate) mod ql;
mod subset;

pub use band::{reduce_to_band, BandReductionResult};
pub use bulge::band_to_tridiagonal;
pub use direct::householder_tridiagonalize;
pub use householder::{
    apply_q, apply_q_in_place, Reflector, ReflectorLayout, ReflectorSet, DEFAULT_WY_BLOCK,
};
pub use subset::{tridiagonal_eigs, TridiagEigs, Which};

pub(crate) use subset::fix_sign;

use crate::error::{Error, Result};
use crate::matcore::{DenseMatrix, DenseSymmetric, Side, SymTridiagonal};
use crate::stage::{StageKey, StageTimings};

pub const DEFAULT_SEMIBANDWIDTH: usize = 32;

/// The orthogonal factor of a reduction: reflectors (TD) or explicit (TT).
#[derive(Debug, Clone)]
pub enum QFactor {
    Implicit(ReflectorSet),
    Explicit(DenseMatrix),
}

impl QFactor {
    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            QFactor::Implicit(set) => direct::implicit_q_dense(set),
            QFactor::Explicit(q) => q.clone(),
        }
    }

    /// `Q Z`.
    pub fn apply(&self, z: &DenseMatrix) -> Result<DenseMatrix> {
        match self {
            QFactor::Implicit(set) => apply_q(set, z, Side::Left, false),
            QFactor::Explicit(q) => q.matmul(z),
        }
    }
}

/// `T = QᵀCQ` with its orthogonal factor.
#[derive(Debug, Clone)]
pub struct TridiagResult {
    pub t: SymTridiagonal,
    pub q: QFactor,
}

/// Eigenpairs of the standard problem with per-stage timings.
#[derive(Debug, Clone)]
pub struct StdSolution {
    /// Ascending.
    pub values: Vec<f64>,
    /// `n x s`, column `j` pairs with `values[j]`.
    pub vectors: DenseMatrix,
    pub timings: StageTimings,
}

fn check_count(n: usize, s: usize) -> Result<()> {
    if s == 0 || s > n {
        return Err(Error::InvalidArgument(format!(
            "requested {s} eigenpairs of a {n}x{n} problem"
        )));
    }
    Ok(())
}

/// Variant TD: tridiagonalize, subset tridiagonal eigensolve, `Y := QZ`.
pub fn solve_std_td(c: &DenseSymmetric, s: usize, which: Which) -> Result<StdSolution> {
    check_count(c.n(), s)?;
    let mut timings = StageTimings::new();
    let red = timings.time(StageKey::Td1, || householder_tridiagonalize(c))?;
    let eig = timings.time(StageKey::Td2, || tridiagonal_eigs(&red.t, s, which))?;
    let y = timings.time(StageKey::Td3, || red.q.apply(&eig.vectors))?;
    Ok(StdSolution {
        values: eig.values,
        vectors: y,
        timings,
    })
}

/// Variant TT: dense → band (with explicit `Q₁`), band → tridiagonal
/// (accumulating into `Q₁`), subset eigensolve, `Y := (Q₁Q₂) Z`.
///
/// `w` is clamped to `n - 1`.
pub fn solve_std_tt(c: &DenseSymmetric, s: usize, which: Which, w: usize) -> Result<StdSolution> {
    let n = c.n();
    check_count(n, s)?;
    if w == 0 {
        return Err(Error::InvalidBandwidth { w, n });
    }
    let mut timings = StageTimings::new();
    let red = if n <= 2 {
        let band = timings.time(StageKey::Tt1, || -> Result<_> {
            Ok(BandReductionResult {
                w: crate::matcore::BandedSymmetric::from_symmetric(c, n - 1)?,
                q1: DenseMatrix::identity(n),
            })
        })?;
        timings.time(StageKey::Tt2, || band_to_tridiagonal(&band))?
    } else {
        let band = timings.time(StageKey::Tt1, || reduce_to_band(c, w.min(n - 1)))?;
        timings.time(StageKey::Tt2, || band_to_tridiagonal(&band))?
    };
    let eig = timings.time(StageKey::Tt3, || tridiagonal_eigs(&red.t, s, which))?;
    let y = timings.time(StageKey::Tt4, || red.q.apply(&eig.vectors))?;
    Ok(StdSolution {
        values: eig.values,
        vectors: y,
        timings,
    })
}
