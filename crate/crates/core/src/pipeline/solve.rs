use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::lanczos::{
    default_subspace_size, solve_std_krylov, KrylovOptions, SpectralOperator, DEFAULT_MAX_RESTARTS,
    DEFAULT_START_SEED,
};
use crate::matcore::{dot, frobenius_norm, sym_matvec, DenseMatrix, DenseSymmetric};
use crate::pipeline::cost::{cost_model, CostParams};
use crate::stage::{StageKey, StageTimings, Variant};
use crate::stdform::{back_transform, cholesky, reduce_to_standard};
use crate::tridiag::{solve_std_td, solve_std_tt, StdSolution, Which, DEFAULT_SEMIBANDWIDTH};

/// Everything [`solve_gsyeig`] needs besides the pencil.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub variant: Variant,
    pub s: usize,
    pub which: Which,
    /// Solve `B X = A X Λ⁻¹` instead and report reciprocals. `which` then
    /// refers to the swapped problem.
    pub invert_problem: bool,
    /// Semibandwidth for TT.
    pub w: usize,
    /// Krylov subspace size; `None` for the default.
    pub m: Option<usize>,
    pub tol: f64,
    pub seed: u64,
    pub max_restarts: usize,
}

impl SolverConfig {
    pub fn new(variant: Variant, s: usize) -> Self {
        Self {
            variant,
            s,
            which: Which::Smallest,
            invert_problem: false,
            w: DEFAULT_SEMIBANDWIDTH,
            m: None,
            tol: 0.0,
            seed: DEFAULT_START_SEED,
            max_restarts: DEFAULT_MAX_RESTARTS,
        }
    }

    pub fn which(mut self, which: Which) -> Self {
        self.which = which;
        self
    }

    pub fn inverted(mut self, invert: bool) -> Self {
        self.invert_problem = invert;
        self
    }

    pub fn bandwidth(mut self, w: usize) -> Self {
        self.w = w;
        self
    }

    pub fn subspace(mut self, m: Option<usize>) -> Self {
        self.m = m;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn max_restarts(mut self, max_restarts: usize) -> Self {
        self.max_restarts = max_restarts;
        self
    }
}

/// Counters and internals of a solve.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveDiagnostics {
    pub matvecs: usize,
    pub restarts: usize,
    pub lanczos_steps: usize,
    pub breakdowns: usize,
    pub converged: usize,
    /// Subspace size used (Krylov variants).
    pub m: Option<usize>,
    /// Semibandwidth used (TT).
    pub w: Option<usize>,
    /// The eigenvalues of the swapped pencil when `invert_problem` is set, in
    /// output order.
    pub inverted_values: Option<Vec<f64>>,
}

/// Eigenpairs of the pencil with per-stage times and modeled flops.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub variant: Variant,
    /// Ascending for `Smallest`, descending for `Largest`.
    pub eigenvalues: Vec<f64>,
    /// `n x s`, `B`-orthonormal columns.
    pub x: DenseMatrix,
    pub stage_timings: StageTimings,
    pub stage_flops: BTreeMap<StageKey, f64>,
    pub diagnostics: SolveDiagnostics,
}

/// Solves `A X = B X Λ` for `cfg.s` extremal eigenpairs with the configured
/// variant.
pub fn solve_gsyeig(
    a: &DenseSymmetric,
    b: &DenseSymmetric,
    cfg: &SolverConfig,
) -> Result<EigenResult> {
    let n = a.n();
    check_dim("solve_gsyeig", n, b.n())?;
    if cfg.s == 0 || cfg.s > n {
        return Err(Error::InvalidArgument(format!(
            "requested {} eigenpairs of a {n}x{n} pencil",
            cfg.s
        )));
    }
    a.check_finite()?;
    b.check_finite()?;
    let (a_eff, b_eff) = if cfg.invert_problem { (b, a) } else { (a, b) };

    let mut timings = StageTimings::new();
    let mut diag = SolveDiagnostics::default();
    let f = timings.time(StageKey::Gs1, || cholesky(b_eff))?;

    let std = match cfg.variant {
        Variant::Td | Variant::Tt | Variant::Ke => {
            let c = timings.time(StageKey::Gs2, || reduce_to_standard(a_eff, &f))?;
            match cfg.variant {
                Variant::Td => solve_std_td(&c, cfg.s, cfg.which)?,
                Variant::Tt => {
                    let w = cfg.w.min(n.saturating_sub(1)).max(1);
                    diag.w = Some(w);
                    solve_std_tt(&c, cfg.s, cfg.which, w)?
                }
                _ => krylov(&SpectralOperator::Explicit(&c), cfg, &mut diag)?,
            }
        }
        Variant::Ki => {
            let op = SpectralOperator::Implicit { a: a_eff, u: f.u() };
            krylov(&op, cfg, &mut diag)?
        }
    };
    timings.extend(std.timings);

    let mut x = timings.time(StageKey::Bt1, || back_transform(&f, &std.vectors))?;
    let mut values = std.values;
    if cfg.which == Which::Largest {
        values.reverse();
        x = DenseMatrix::from_fn(n, cfg.s, |i, j| x[(i, cfg.s - 1 - j)]);
    }
    if cfg.invert_problem {
        diag.inverted_values = Some(values.clone());
        values.iter_mut().for_each(|mu| *mu = mu.recip());
        renormalize(&mut x, b)?;
    }
    if !cfg.variant.is_krylov() {
        diag.converged = cfg.s;
    }

    let params = CostParams {
        n,
        s: cfg.s,
        m: diag.m.unwrap_or_else(|| default_subspace_size(n, cfg.s)),
        w: diag.w.unwrap_or(cfg.w),
        matvecs: diag.matvecs,
        restarts: diag.restarts,
    };
    Ok(EigenResult {
        variant: cfg.variant,
        eigenvalues: values,
        x,
        stage_timings: timings,
        stage_flops: cost_model(&params, cfg.variant).stages,
        diagnostics: diag,
    })
}

fn krylov(
    op: &SpectralOperator<'_>,
    cfg: &SolverConfig,
    diag: &mut SolveDiagnostics,
) -> Result<StdSolution> {
    let opts = KrylovOptions {
        m: cfg.m,
        max_restarts: cfg.max_restarts,
        tol: cfg.tol,
        seed: cfg.seed,
    };
    let sol = solve_std_krylov(op, cfg.s, cfg.which, &opts)?;
    let d = &sol.diagnostics;
    diag.matvecs = d.matvecs;
    diag.restarts = d.restarts;
    diag.lanczos_steps = d.lanczos_steps;
    diag.breakdowns = d.breakdowns;
    diag.converged = d.converged;
    diag.m = Some(d.m);
    Ok(StdSolution {
        values: sol.values,
        vectors: sol.vectors,
        timings: sol.timings,
    })
}

/// Scales each column to `xᵀBx = 1`.
fn renormalize(x: &mut DenseMatrix, b: &DenseSymmetric) -> Result<()> {
    for j in 0..x.cols() {
        let bx = sym_matvec(b, x.col(j))?;
        let nrm = dot(x.col(j), &bx).sqrt();
        x.col_mut(j).iter_mut().for_each(|v| *v /= nrm);
    }
    Ok(())
}

/// Accuracy of a computed solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Accuracy {
    /// `‖I − XᵀBX‖_F / ‖B‖_F`.
    pub orth: f64,
    /// `‖AX − BXΛ‖_F / max(‖A‖_F, ‖B‖_F)`.
    pub resid: f64,
}

pub fn accuracy_metrics(
    a: &DenseSymmetric,
    b: &DenseSymmetric,
    result: &EigenResult,
) -> Result<Accuracy> {
    let x = &result.x;
    let n = a.n();
    check_dim("accuracy_metrics", n, x.rows())?;
    check_dim("accuracy_metrics", x.cols(), result.eigenvalues.len())?;
    let s = x.cols();
    let mut ax = DenseMatrix::zeros(n, s);
    let mut bx = DenseMatrix::zeros(n, s);
    for j in 0..s {
        ax.col_mut(j).copy_from_slice(&sym_matvec(a, x.col(j))?);
        bx.col_mut(j).copy_from_slice(&sym_matvec(b, x.col(j))?);
    }
    let gram = x.t_matmul(&bx)?;
    let orth = frobenius_norm(&gram.sub(&DenseMatrix::identity(s))?);
    let mut r = 0.0;
    for j in 0..s {
        let lam = result.eigenvalues[j];
        for (axi, bxi) in ax.col(j).iter().zip(bx.col(j)) {
            let d = axi - bxi * lam;
            r += d * d;
        }
    }
    let na = frobenius_norm(a);
    let nb = frobenius_norm(b);
    Ok(Accuracy {
        orth: orth / nb,
        resid: r.sqrt() / na.max(nb),
    })
}
