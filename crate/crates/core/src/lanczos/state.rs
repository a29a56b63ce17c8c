use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_dim, Error, Result};
use crate::lanczos::operator::{ApplyProfile, SpectralOperator};
use crate::matcore::{axpy, dot, norm2, DenseMatrix, SymTridiagonal};

const MAX_DIRECTION_RETRIES: usize = 3;

/// A `k`-step Lanczos factorization `op·V_k = V_k T_k + f e_kᵀ` with room for
/// `m` basis vectors.
#[derive(Debug, Clone)]
pub struct LanczosState {
    n: usize,
    m: usize,
    k: usize,
    v: DenseMatrix,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    f: Vec<f64>,
    start: Vec<f64>,
    rng: ChaCha8Rng,
    scale: f64,
    pub(crate) matvec_count: usize,
    pub(crate) restart_count: usize,
    pub(crate) step_count: usize,
    pub(crate) breakdowns: usize,
    pub(crate) profile: ApplyProfile,
}

impl LanczosState {
    /// Empty factorization with a seeded pseudo-random unit start vector.
    pub fn new(n: usize, m: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = random_unit(n, &mut rng);
        Self::build(n, m, start, rng)
    }

    /// Empty factorization starting from `v0` (normalized here).
    pub fn with_start_vector(v0: &[f64], m: usize, seed: u64) -> Result<Self> {
        let nrm = norm2(v0);
        if !nrm.is_finite() || nrm <= 0.0 {
            return Err(Error::InvalidArgument(
                "start vector must be nonzero and finite".into(),
            ));
        }
        let start = v0.iter().map(|x| x / nrm).collect();
        Self::build(v0.len(), m, start, ChaCha8Rng::seed_from_u64(seed))
    }

    fn build(n: usize, m: usize, start: Vec<f64>, rng: ChaCha8Rng) -> Result<Self> {
        if n == 0 || m == 0 || m > n {
            return Err(Error::InvalidArgument(format!(
                "subspace size {m} must satisfy 1 <= m <= n = {n}"
            )));
        }
        Ok(Self {
            n,
            m,
            k: 0,
            v: DenseMatrix::zeros(n, m),
            alpha: Vec::with_capacity(m),
            beta: Vec::with_capacity(m),
            f: vec![0.0; n],
            start,
            rng,
            scale: 0.0,
            matvec_count: 0,
            restart_count: 0,
            step_count: 0,
            breakdowns: 0,
            profile: ApplyProfile::default(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Current factorization size.
    pub fn k(&self) -> usize {
        self.k
    }

    /// The basis `V_k`.
    pub fn basis(&self) -> DenseMatrix {
        self.v.columns(0..self.k)
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// Off-diagonal of `T_k` (length `k - 1`).
    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn residual(&self) -> &[f64] {
        &self.f
    }

    /// `‖f‖`, the coupling to the next Krylov vector.
    pub fn residual_norm(&self) -> f64 {
        norm2(&self.f)
    }

    pub fn tridiagonal(&self) -> Result<SymTridiagonal> {
        SymTridiagonal::new(self.alpha.clone(), self.beta.clone())
    }

    pub fn matvec_count(&self) -> usize {
        self.matvec_count
    }

    pub fn restart_count(&self) -> usize {
        self.restart_count
    }

    /// Lanczos steps taken, counting re-extension after restarts.
    pub fn step_count(&self) -> usize {
        self.step_count
    }

    /// Invariant-subspace breakdowns recovered by a fresh random direction.
    pub fn breakdowns(&self) -> usize {
        self.breakdowns
    }

    /// Running estimate of `‖op‖` from the recurrence coefficients.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn apply_profile(&self) -> ApplyProfile {
        self.profile
    }

    pub(crate) fn replace(
        &mut self,
        v_kept: &DenseMatrix,
        alpha: Vec<f64>,
        beta: Vec<f64>,
        f: Vec<f64>,
    ) {
        let keep = alpha.len();
        for j in 0..keep {
            self.v.col_mut(j).copy_from_slice(v_kept.col(j));
        }
        self.k = keep;
        self.alpha = alpha;
        self.beta = beta;
        self.f = f;
    }

    /// Two passes of classical Gram-Schmidt of `x` against the first `cols`
    /// basis vectors. Returns the accumulated coefficients.
    fn orthogonalize(&self, x: &mut [f64], cols: usize) -> Vec<f64> {
        let mut total = vec![0.0; cols];
        for _ in 0..2 {
            let h: Vec<f64> = (0..cols).map(|j| dot(self.v.col(j), x)).collect();
            for (j, &hj) in h.iter().enumerate() {
                axpy(-hj, self.v.col(j), x);
            }
            total.iter_mut().zip(&h).for_each(|(t, hj)| *t += hj);
        }
        total
    }

    fn fresh_direction(&mut self) -> Result<Vec<f64>> {
        for _ in 0..MAX_DIRECTION_RETRIES {
            let mut r = random_unit(self.n, &mut self.rng);
            self.orthogonalize(&mut r, self.k);
            let nrm = norm2(&r);
            if nrm > f64::EPSILON.sqrt() {
                r.iter_mut().for_each(|x| *x /= nrm);
                return Ok(r);
            }
        }
        Err(Error::Breakdown { step: self.k })
    }
}

fn random_unit(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let nrm = norm2(&v);
        if nrm > 0.0 {
            return v.into_iter().map(|x| x / nrm).collect();
        }
    }
}

/// Extends the factorization to `target_k` steps.
///
/// Each step applies the three-term recurrence and then re-orthogonalizes the
/// new residual against the whole basis, twice. When the coupling `β` falls
/// below `n·ε·‖op‖` the Krylov space has become invariant; the next basis
/// vector is then a random direction orthogonal to the basis and the coupling
/// is set to zero.
pub fn extend_factorization(
    op: &SpectralOperator<'_>,
    state: &mut LanczosState,
    target_k: usize,
) -> Result<()> {
    check_dim("extend_factorization", state.n, op.n())?;
    if target_k <= state.k || target_k > state.m {
        return Err(Error::InvalidArgument(format!(
            "cannot extend a {}-step factorization to {target_k} (max {})",
            state.k, state.m
        )));
    }
    let n = state.n;
    while state.k < target_k {
        let j = state.k;
        let (vj, coupling) = if j == 0 {
            (state.start.clone(), 0.0)
        } else {
            let beta = norm2(&state.f);
            if beta <= n as f64 * f64::EPSILON * state.scale {
                state.breakdowns += 1;
                (state.fresh_direction()?, 0.0)
            } else {
                (state.f.iter().map(|x| x / beta).collect(), beta)
            }
        };
        state.v.col_mut(j).copy_from_slice(&vj);

        let mut profile = state.profile;
        let w = op.apply_profiled(&vj, &mut profile)?;
        state.profile = profile;
        state.matvec_count += 1;

        let mut alpha = dot(&vj, &w);
        let mut f = w;
        axpy(-alpha, &vj, &mut f);
        if j > 0 {
            axpy(-coupling, state.v.col(j - 1), &mut f);
        }
        let h = state.orthogonalize(&mut f, j + 1);
        alpha += h[j];

        if j > 0 {
            state.beta.push(coupling);
        }
        state.alpha.push(alpha);
        state.f = f;
        state.k += 1;
        state.step_count += 1;
        state.scale = state.scale.max(alpha.abs() + coupling + norm2(&state.f));
    }
    Ok(())
}

/// `‖op·V_k − V_k T_k − f e_kᵀ‖_F`. Does not touch the state's counters.
pub fn factorization_residual(op: &SpectralOperator<'_>, state: &LanczosState) -> Result<f64> {
    let k = state.k;
    let n = state.n;
    let mut sum = 0.0;
    for j in 0..k {
        let mut r = op.apply(state.v.col(j))?;
        axpy(-state.alpha[j], state.v.col(j), &mut r);
        if j > 0 {
            axpy(-state.beta[j - 1], state.v.col(j - 1), &mut r);
        }
        if j + 1 < k {
            axpy(-state.beta[j], state.v.col(j + 1), &mut r);
        } else {
            axpy(-1.0, &state.f, &mut r);
        }
        debug_assert_eq!(r.len(), n);
        sum += dot(&r, &r);
    }
    Ok(sum.sqrt())
}

/// `‖V_kᵀV_k − I‖_F`.
pub fn basis_orthogonality(state: &LanczosState) -> f64 {
    let v = state.basis();
    let g = v.t_matmul(&v).expect("square Gram matrix");
    let mut sum = 0.0;
    for j in 0..g.cols() {
        for i in 0..g.rows() {
            let d = g[(i, j)] - if i == j { 1.0 } else { 0.0 };
            sum += d * d;
        }
    }
    sum.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::DenseSymmetric;

    #[test]
    fn rejects_bad_sizes() {
        assert!(LanczosState::new(5, 6, 0).is_err());
        assert!(LanczosState::new(5, 0, 0).is_err());
        assert!(LanczosState::with_start_vector(&[0.0, 0.0], 2, 0).is_err());
    }

    #[test]
    fn extension_bounds() {
        let c = DenseSymmetric::identity(4);
        let op = SpectralOperator::Explicit(&c);
        let mut st = LanczosState::new(4, 3, 1).unwrap();
        assert!(extend_factorization(&op, &mut st, 4).is_err());
        extend_factorization(&op, &mut st, 2).unwrap();
        assert!(extend_factorization(&op, &mut st, 2).is_err());
    }

    #[test]
    fn one_step_residual_estimate_is_beta() {
        let c = DenseSymmetric::from_diag(&[1.0, 2.0, 3.0]);
        let op = SpectralOperator::Explicit(&c);
        let mut st = LanczosState::new(3, 3, 9).unwrap();
        extend_factorization(&op, &mut st, 1).unwrap();
        assert_eq!(st.k(), 1);
        assert_eq!(st.matvec_count(), 1);
        assert!(st.residual_norm() > 0.0);
    }

    #[test]
    fn eigenvector_start_deflates() {
        let c = DenseSymmetric::from_diag(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let op = SpectralOperator::Explicit(&c);
        let mut st = LanczosState::with_start_vector(&[0.0, 0.0, 1.0, 0.0, 0.0], 5, 3).unwrap();
        extend_factorization(&op, &mut st, 1).unwrap();
        assert!(st.residual_norm() <= 5.0 * f64::EPSILON * 5.0);
        extend_factorization(&op, &mut st, 3).unwrap();
        assert_eq!(st.breakdowns(), 1);
        assert_eq!(st.beta()[0], 0.0);
        assert!(basis_orthogonality(&st) < 1e-14);
    }
}
