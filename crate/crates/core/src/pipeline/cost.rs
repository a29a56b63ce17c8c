use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::lanczos::default_subspace_size;
use crate::stage::{StageKey, Variant};
use crate::tridiag::DEFAULT_SEMIBANDWIDTH;

/// Problem and run parameters the flop formulas depend on.
///
/// `matvecs` and `restarts` only matter for the Krylov variants; after a solve
/// they come from the run's counters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostParams {
    pub n: usize,
    pub s: usize,
    pub m: usize,
    pub w: usize,
    pub matvecs: usize,
    pub restarts: usize,
}

impl CostParams {
    /// Defaults for `m` and `w`; a single Lanczos cycle without restarts.
    pub fn new(n: usize, s: usize) -> Self {
        let m = default_subspace_size(n, s);
        Self {
            n,
            s,
            m,
            w: DEFAULT_SEMIBANDWIDTH.min(n.saturating_sub(1)).max(1),
            matvecs: m,
            restarts: 0,
        }
    }
}

/// Modeled flops per stage for one variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub variant: Variant,
    pub params: CostParams,
    pub stages: BTreeMap<StageKey, f64>,
}

impl CostReport {
    pub fn get(&self, key: StageKey) -> f64 {
        self.stages.get(&key).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.stages.values().sum()
    }

    /// Flops of one operator application in the iterative stage: `2n²` with
    /// `C` formed, `4n²` through the Cholesky factor. `None` for TD/TT.
    pub fn apply_flops(&self) -> Option<f64> {
        let n2 = (self.params.n as f64).powi(2);
        match self.variant {
            Variant::Ke => Some(2.0 * n2),
            Variant::Ki => Some(4.0 * n2),
            _ => None,
        }
    }

    /// Building `Q₁`, accumulating `Q₂` and applying `Q₁Q₂`: `7n³/3 + 2n²s`
    /// for TT, zero otherwise.
    pub fn tt_back_transform_bucket(&self) -> f64 {
        if self.variant != Variant::Tt {
            return 0.0;
        }
        let n = self.params.n as f64;
        Q1_BUILD * n.powi(3) + self.get(StageKey::Tt2) + self.get(StageKey::Tt4)
    }
}

const Q1_BUILD: f64 = 4.0 / 3.0;

/// `C := U⁻ᵀAU⁻¹` done as two full triangular solves.
pub fn gs2_two_solve(n: usize) -> f64 {
    2.0 * (n as f64).powi(3)
}

/// `C := U⁻ᵀAU⁻¹` exploiting the symmetry of the result.
pub fn gs2_symmetric(n: usize) -> f64 {
    (n as f64).powi(3)
}

/// Evaluates the flop formulas for `variant` at `p`.
pub fn cost_model(p: &CostParams, variant: Variant) -> CostReport {
    let n = p.n as f64;
    let s = p.s as f64;
    let m = p.m as f64;
    let n2 = n * n;
    let n3 = n2 * n;
    let mv = p.matvecs as f64;
    let restart = n * m * m * p.restarts as f64;

    let mut stages = BTreeMap::new();
    stages.insert(StageKey::Gs1, n3 / 3.0);
    if variant != Variant::Ki {
        stages.insert(StageKey::Gs2, gs2_two_solve(p.n));
    }
    match variant {
        Variant::Td => {
            stages.insert(StageKey::Td1, 4.0 * n3 / 3.0);
            stages.insert(StageKey::Td2, n * s);
            stages.insert(StageKey::Td3, 2.0 * n2 * s);
        }
        Variant::Tt => {
            stages.insert(StageKey::Tt1, 4.0 * n3 / 3.0 + Q1_BUILD * n3);
            stages.insert(StageKey::Tt2, n3);
            stages.insert(StageKey::Tt3, n * s);
            stages.insert(StageKey::Tt4, 2.0 * n2 * s);
        }
        Variant::Ke => {
            stages.insert(StageKey::Ke1, 2.0 * n2 * mv);
            stages.insert(StageKey::Ke2, restart);
            stages.insert(StageKey::Ke3, m * m);
        }
        Variant::Ki => {
            stages.insert(StageKey::Ki1, n2 * mv);
            stages.insert(StageKey::Ki2, 2.0 * n2 * mv);
            stages.insert(StageKey::Ki3, n2 * mv);
            stages.insert(StageKey::Ki4, restart);
            stages.insert(StageKey::Ki5, m * m);
        }
    }
    stages.insert(StageKey::Bt1, n2 * s);
    CostReport {
        variant,
        params: *p,
        stages,
    }
}
