use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{axpy, dot, norm2, DenseMatrix, DenseSymmetric, Uplo};
use crate::stdform::cholesky;

/// Seeded Haar-like random orthogonal matrix: Gram-Schmidt (twice) on
/// Gaussian columns.
pub fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DenseMatrix {
    let mut q = DenseMatrix::zeros(n, n);
    for j in 0..n {
        loop {
            let mut v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
            for _ in 0..2 {
                for i in 0..j {
                    let h = dot(q.col(i), &v);
                    axpy(-h, q.col(i), &mut v);
                }
            }
            let nrm = norm2(&v);
            if nrm > 1e-8 {
                v.iter_mut().for_each(|x| *x /= nrm);
                q.col_mut(j).copy_from_slice(&v);
                break;
            }
        }
    }
    q
}

/// `Q diag(d) Qᵀ`, symmetrized.
fn conjugate_diag(q: &DenseMatrix, d: &[f64]) -> DenseSymmetric {
    let mut qd = q.clone();
    qd.scale_columns(d);
    let full = qd.matmul(&q.transpose()).expect("square factors");
    DenseSymmetric::from_fn(q.rows(), Uplo::Upper, |i, j| {
        0.5 * (full[(i, j)] + full[(j, i)])
    })
}

/// Synthetic pencil `(A, B)` whose generalized eigenvalues are `planted`.
///
/// `B = Q_B diag(d) Q_Bᵀ` with `d` log-spaced on `[1, cond_b]` (so `λ_min(B) = 1`
/// and `κ(B) = cond_b`; exactly `I` when `cond_b = 1`). With `U = chol(B)`,
/// `A = Uᵀ (Q_r diag(planted) Q_rᵀ) U`.
pub fn eigen_pair_with_spectrum(
    n: usize,
    planted: &[f64],
    cond_b: f64,
    seed: u64,
) -> Result<(DenseSymmetric, DenseSymmetric)> {
    if n == 0 || planted.len() != n {
        return Err(Error::InvalidArgument(format!(
            "need {n} planted eigenvalues, got {}",
            planted.len()
        )));
    }
    if planted.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(
            "planted eigenvalues must be finite".into(),
        ));
    }
    if !cond_b.is_finite() || cond_b < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "cond_b = {cond_b} must be finite and >= 1"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = if cond_b == 1.0 {
        DenseSymmetric::identity(n)
    } else {
        let qb = random_orthogonal(n, &mut rng);
        let d: Vec<f64> = (0..n)
            .map(|i| {
                let t = if n == 1 {
                    0.0
                } else {
                    i as f64 / (n - 1) as f64
                };
                cond_b.powf(t)
            })
            .collect();
        conjugate_diag(&qb, &d)
    };
    let qr = random_orthogonal(n, &mut rng);
    let core = conjugate_diag(&qr, planted).materialize();
    let u = cholesky(&b)?.into_u().materialize();
    let a = u.t_matmul(&core)?.matmul(&u)?;
    let a = DenseSymmetric::from_fn(n, Uplo::Upper, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]));
    Ok((a, b))
}

/// `n` values on `[lo, hi]`, evenly spaced.
pub fn linear_spectrum(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    SpectrumRecipe::Linear.generate(n, lo, hi)
}

/// Shape of a planted spectrum on `[lo, hi]`, as a function of `t = i/(n-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumRecipe {
    /// `lo + (hi - lo)·t`.
    Linear,
    /// `lo + (hi - lo)·√t`: wide gaps at the low end, crowding toward `hi`.
    #[default]
    Graded,
    /// `lo·(hi/lo)^t`. Needs `lo > 0`.
    Geometric,
}

impl SpectrumRecipe {
    pub fn generate(self, n: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..n)
            .map(|i| {
                let t = if n == 1 {
                    0.0
                } else {
                    i as f64 / (n - 1) as f64
                };
                match self {
                    SpectrumRecipe::Linear => lo + (hi - lo) * t,
                    SpectrumRecipe::Graded => lo + (hi - lo) * t.sqrt(),
                    SpectrumRecipe::Geometric => lo * (hi / lo).powf(t),
                }
            })
            .collect()
    }
}

impl FromStr for SpectrumRecipe {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linear" => Ok(SpectrumRecipe::Linear),
            "graded" => Ok(SpectrumRecipe::Graded),
            "geometric" => Ok(SpectrumRecipe::Geometric),
            other => Err(format!(
                "unknown spectrum '{other}' (expected linear, graded or geometric)"
            )),
        }
    }
}

impl fmt::Display for SpectrumRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumRecipe::Linear => "linear",
            SpectrumRecipe::Graded => "graded",
            SpectrumRecipe::Geometric => "geometric",
        })
    }
}
