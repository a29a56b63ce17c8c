use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lanczos::operator::SpectralOperator;
use crate::lanczos::restart::implicit_restart;
use crate::lanczos::state::{extend_factorization, LanczosState};
use crate::matcore::DenseMatrix;
use crate::stage::{StageKey, StageTimings};
use crate::tridiag::ql::tridiagonal_full_eig;
use crate::tridiag::{fix_sign, Which};

pub const DEFAULT_MAX_RESTARTS: usize = 1000;
pub const DEFAULT_START_SEED: u64 = 0x5EED;

/// Ritz approximations from the current factorization.
#[derive(Debug, Clone)]
pub struct RitzInfo {
    /// Ascending.
    pub values: Vec<f64>,
    /// `|β_k · z_{k,i}|`.
    pub residual_estimates: Vec<f64>,
    pub converged: Vec<bool>,
    /// Eigenvectors of `T_k`, column `i` pairs with `values[i]`.
    pub vectors: DenseMatrix,
}

/// Flags a Ritz pair converged when its residual estimate is at most
/// `max(tol, ε)·max(|θ|, ε^{2/3})`.
pub fn check_convergence(state: &LanczosState, tol: f64) -> Result<RitzInfo> {
    let k = state.k();
    if k == 0 {
        return Err(Error::InvalidArgument("empty factorization".into()));
    }
    let (values, vectors) = tridiagonal_full_eig(state.alpha(), state.beta())?;
    let beta = state.residual_norm();
    let rel = tol.max(f64::EPSILON);
    let floor = f64::EPSILON.powf(2.0 / 3.0);
    let residual_estimates: Vec<f64> = (0..k).map(|i| (beta * vectors[(k - 1, i)]).abs()).collect();
    let converged = values
        .iter()
        .zip(&residual_estimates)
        .map(|(theta, est)| *est <= rel * theta.abs().max(floor))
        .collect();
    Ok(RitzInfo {
        values,
        residual_estimates,
        converged,
        vectors,
    })
}

/// Parameters of [`solve_std_krylov`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KrylovOptions {
    /// Subspace size; `None` picks [`default_subspace_size`].
    pub m: Option<usize>,
    pub max_restarts: usize,
    /// Relative tolerance; anything below `ε` means `ε`.
    pub tol: f64,
    pub seed: u64,
}

impl Default for KrylovOptions {
    fn default() -> Self {
        Self {
            m: None,
            max_restarts: DEFAULT_MAX_RESTARTS,
            tol: 0.0,
            seed: DEFAULT_START_SEED,
        }
    }
}

/// `max(2s + 1, s + 20)` capped at `n`.
pub fn default_subspace_size(n: usize, s: usize) -> usize {
    (2 * s + 1).max(s + 20).min(n)
}

/// Number of Ritz vectors kept across a restart.
pub fn keep_size(s: usize, m: usize) -> usize {
    (s + s.min((m - s) / 2)).min(m - 1)
}

/// Counters of a Krylov run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KrylovDiagnostics {
    pub m: usize,
    pub matvecs: usize,
    pub restarts: usize,
    pub lanczos_steps: usize,
    pub breakdowns: usize,
    pub converged: usize,
    /// Residual estimates of the returned pairs, in output order.
    pub residual_estimates: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct KrylovSolution {
    /// Ascending.
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
    pub diagnostics: KrylovDiagnostics,
    pub timings: StageTimings,
}

fn wanted_range(m: usize, s: usize, which: Which) -> std::ops::Range<usize> {
    match which {
        Which::Smallest => 0..s,
        Which::Largest => m - s..m,
    }
}

/// Implicitly restarted Lanczos for `s` extremal eigenpairs of `op`.
///
/// Timings go to KE1..KE3 for an explicit operator and KI1..KI5 for an
/// implicit one. Requires `s ≤ m ≤ n` and `2s ≤ m` unless `m = n`.
pub fn solve_std_krylov(
    op: &SpectralOperator<'_>,
    s: usize,
    which: Which,
    opts: &KrylovOptions,
) -> Result<KrylovSolution> {
    let n = op.n();
    let m = opts.m.unwrap_or_else(|| default_subspace_size(n, s));
    if s == 0 || m > n || s > m || (2 * s > m && m != n) {
        return Err(Error::InvalidArgument(format!(
            "Krylov sizes need 1 <= s, 2s <= m <= n (s = {s}, m = {m}, n = {n})"
        )));
    }
    let keep = keep_size(s, m.max(s + 1));
    let wanted = wanted_range(m, s, which);

    let iter_start = Instant::now();
    let mut state = LanczosState::new(n, m, opts.seed)?;
    extend_factorization(op, &mut state, m)?;
    // With m = n the basis spans the whole space and f is rounding noise.
    let (info, nconv) = loop {
        let info = check_convergence(&state, opts.tol)?;
        let nconv = info.converged[wanted.clone()]
            .iter()
            .filter(|c| **c)
            .count();
        if nconv == s || m == n {
            break (info, nconv);
        }
        if state.restart_count() >= opts.max_restarts {
            return Err(Error::MaxRestartsExceeded {
                converged: nconv,
                wanted: s,
            });
        }
        let shifts = match which {
            Which::Smallest => &info.values[keep..m],
            Which::Largest => &info.values[..m - keep],
        };
        implicit_restart(&mut state, shifts)?;
        extend_factorization(op, &mut state, m)?;
    };
    let iter_elapsed = iter_start.elapsed();

    let extract_start = Instant::now();
    let z = DenseMatrix::from_fn(m, s, |i, j| info.vectors[(i, wanted.start + j)]);
    let mut y = state.basis().matmul(&z)?;
    for j in 0..s {
        fix_sign(y.col_mut(j));
    }
    let extract_elapsed = extract_start.elapsed();

    let profile = state.apply_profile();
    let mut timings = StageTimings::new();
    let other = iter_elapsed.saturating_sub(profile.total());
    if op.is_implicit() {
        timings.add(StageKey::Ki1, profile.solve);
        timings.add(StageKey::Ki2, profile.matvec);
        timings.add(StageKey::Ki3, profile.solve_transpose);
        timings.add(StageKey::Ki4, other);
        timings.add(StageKey::Ki5, extract_elapsed);
    } else {
        timings.add(StageKey::Ke1, profile.total());
        timings.add(StageKey::Ke2, other);
        timings.add(StageKey::Ke3, extract_elapsed);
    }

    Ok(KrylovSolution {
        values: info.values[wanted.clone()].to_vec(),
        vectors: y,
        diagnostics: KrylovDiagnostics {
            m,
            matvecs: state.matvec_count(),
            restarts: state.restart_count(),
            lanczos_steps: state.step_count(),
            breakdowns: state.breakdowns(),
            converged: nconv,
            residual_estimates: info.residual_estimates[wanted].to_vec(),
        },
        timings,
    })
}
