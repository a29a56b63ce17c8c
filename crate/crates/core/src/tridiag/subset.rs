//! Subset eigenpairs of a symmetric tridiagonal matrix: Sturm-count bisection
//! for the eigenvalues, inverse iteration for the eigenvectors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matcore::{dot, norm2, DenseMatrix, SymTridiagonal};

/// Which end of the spectrum to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    #[default]
    Smallest,
    Largest,
}

impl std::str::FromStr for Which {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "smallest" | "sa" => Ok(Which::Smallest),
            "largest" | "la" => Ok(Which::Largest),
            other => Err(format!(
                "unknown spectrum end '{other}' (expected smallest or largest)"
            )),
        }
    }
}

const MAX_ITS: usize = 5;
const EXTRA_ITS: usize = 2;
const CLUSTER_GAP: f64 = 1e-3;
const START_SEED: u64 = 0x5eed_1d7e;

/// Eigenpairs of `T` with eigenvalues in ascending order and unit eigenvectors
/// as the columns of `Z`.
#[derive(Debug, Clone)]
pub struct TridiagEigs {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
    /// Positions of the computed eigenvalues in the ascending spectrum of `T`.
    pub indices: Vec<usize>,
}

/// The `s` extremal eigenpairs of `T` at the `which` end, ascending.
///
/// Eigenvalues are bisected to `2·ε·max(|gl|, |gu|)` absolute accuracy where
/// `[gl, gu]` is the Gershgorin interval. Each eigenvector is found by
/// inverse iteration from a fixed pseudo-random start; vectors whose
/// eigenvalues lie within `1e-3·‖T‖₁` of each other form a cluster and are
/// re-orthogonalized against each other by modified Gram-Schmidt. Each
/// eigenvector's largest-magnitude component is made positive.
pub fn tridiagonal_eigs(t: &SymTridiagonal, s: usize, which: Which) -> Result<TridiagEigs> {
    let n = t.n();
    if s == 0 || s > n {
        return Err(Error::InvalidArgument(format!(
            "requested {s} eigenpairs of a {n}x{n} tridiagonal matrix"
        )));
    }
    let indices: Vec<usize> = match which {
        Which::Smallest => (0..s).collect(),
        Which::Largest => (n - s..n).collect(),
    };
    let values = bisect_eigenvalues(t, &indices);
    let vectors = inverse_iteration(t, &values, &indices)?;
    Ok(TridiagEigs {
        values,
        vectors,
        indices,
    })
}

struct Sturm<'a> {
    diag: &'a [f64],
    off2: Vec<f64>,
    pivmin: f64,
}

impl<'a> Sturm<'a> {
    fn new(t: &'a SymTridiagonal) -> Self {
        let off2: Vec<f64> = t.offdiag().iter().map(|e| e * e).collect();
        let maxe2 = off2.iter().copied().fold(1.0_f64, f64::max);
        Self {
            diag: t.diag(),
            off2,
            pivmin: f64::MIN_POSITIVE * maxe2,
        }
    }

    /// Number of eigenvalues strictly less than `x`.
    fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for (i, &a) in self.diag.iter().enumerate() {
            d = if i == 0 {
                a - x
            } else {
                a - x - self.off2[i - 1] / d
            };
            if d.abs() < self.pivmin {
                d = -self.pivmin;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }
}

fn gershgorin(t: &SymTridiagonal) -> (f64, f64) {
    let n = t.n();
    let (d, e) = (t.diag(), t.offdiag());
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += e[i - 1].abs();
        }
        if i + 1 < n {
            r += e[i].abs();
        }
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    (lo, hi)
}

fn bisect_eigenvalues(t: &SymTridiagonal, indices: &[usize]) -> Vec<f64> {
    let n = t.n();
    let sturm = Sturm::new(t);
    let (gl, gu) = gershgorin(t);
    let tnorm = gl.abs().max(gu.abs());
    let abstol = 2.0 * f64::EPSILON * tnorm;
    let fudge = 2.0 * f64::EPSILON * tnorm * n as f64 + 2.0 * sturm.pivmin;
    let (gl, gu) = (gl - fudge, gu + fudge);

    let mut out = Vec::with_capacity(indices.len());
    let mut floor = gl;
    for &k in indices {
        let (mut lo, mut hi) = (floor, gu);
        loop {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= abstol.max(sturm.pivmin) || mid <= lo || mid >= hi {
                break;
            }
            if sturm.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(0.5 * (lo + hi));
        // eigenvalue k+1 is at least as large as the lower end of this bracket
        floor = lo;
    }
    out
}

/// LU factorization with partial pivoting of a shifted tridiagonal matrix.
struct TridiagLu {
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    dl: Vec<f64>,
    swap: Vec<bool>,
}

impl TridiagLu {
    fn new(t: &SymTridiagonal, shift: f64, tiny: f64) -> Self {
        let n = t.n();
        let mut d: Vec<f64> = t.diag().iter().map(|a| a - shift).collect();
        let mut du = t.offdiag().to_vec();
        let mut dl = t.offdiag().to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swap = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i].abs() < tiny {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 1 < n - 1 {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swap[i] = true;
            }
        }
        if d[n - 1].abs() < tiny {
            d[n - 1] = tiny;
        }
        Self {
            d,
            du,
            du2,
            dl,
            swap,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swap[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.dl[i] * b[i];
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

fn inverse_iteration(t: &SymTridiagonal, values: &[f64], indices: &[usize]) -> Result<DenseMatrix> {
    let n = t.n();
    let mut z = DenseMatrix::zeros(n, values.len());
    if n == 1 {
        z[(0, 0)] = 1.0;
        return Ok(z);
    }
    let onenrm = (0..n)
        .map(|i| {
            let mut s = t.diag()[i].abs();
            if i > 0 {
                s += t.offdiag()[i - 1].abs();
            }
            if i + 1 < n {
                s += t.offdiag()[i].abs();
            }
            s
        })
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let ortol = CLUSTER_GAP * onenrm;
    let tiny = f64::EPSILON * onenrm;
    let growth_target = (0.1 / n as f64).sqrt();

    let mut cluster_start = 0;
    let mut prev_shift = f64::NEG_INFINITY;
    for (j, (&lambda, &index)) in values.iter().zip(indices).enumerate() {
        if j > 0 && lambda - values[j - 1] > ortol {
            cluster_start = j;
        }
        // separate numerically coincident eigenvalues
        let pertol = 10.0 * f64::EPSILON * lambda.abs().max(onenrm);
        let shift = if j > cluster_start && lambda - prev_shift < pertol {
            prev_shift + pertol
        } else {
            lambda
        };
        prev_shift = shift;

        let lu = TridiagLu::new(t, shift, tiny);
        let mut rng = ChaCha8Rng::seed_from_u64(START_SEED ^ index as u64);
        let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();

        let mut converged = false;
        let mut checks = 0;
        for _ in 0..MAX_ITS {
            let l1: f64 = x.iter().map(|v| v.abs()).sum();
            let scale = n as f64 * onenrm * f64::EPSILON.max(lu.d[n - 1].abs()) / l1;
            x.iter_mut().for_each(|v| *v *= scale);
            lu.solve(&mut x);
            for p in cluster_start..j {
                let zp = z.col(p);
                let c = dot(zp, &x);
                x.iter_mut().zip(zp).for_each(|(xi, zi)| *xi -= c * zi);
            }
            let inf = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            if !inf.is_finite() || inf == 0.0 {
                break;
            }
            x.iter_mut().for_each(|v| *v /= inf);
            if inf >= growth_target {
                checks += 1;
                if checks > EXTRA_ITS {
                    converged = true;
                    break;
                }
            }
        }
        if !converged {
            return Err(Error::ConvergenceFailure(index + 1));
        }
        let nrm = norm2(&x);
        x.iter_mut().for_each(|v| *v /= nrm);
        fix_sign(&mut x);
        z.col_mut(j).copy_from_slice(&x);
    }
    Ok(z)
}

/// Flips `x` so that its largest-magnitude component (first on ties) is positive.
pub(crate) fn fix_sign(x: &mut [f64]) {
    let mut best = 0;
    for (i, v) in x.iter().enumerate() {
        if v.abs() > x[best].abs() {
            best = i;
        }
    }
    if x.get(best).is_some_and(|v| *v < 0.0) {
        x.iter_mut().for_each(|v| *v = -*v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix_gives_coordinate_vectors() {
        let t = SymTridiagonal::new(vec![1.0, 2.0, 3.0], vec![0.0, 0.0]).unwrap();
        let r = tridiagonal_eigs(&t, 2, Which::Smallest).unwrap();
        assert!((r.values[0] - 1.0).abs() < 1e-15);
        assert!((r.values[1] - 2.0).abs() < 1e-15);
        for j in 0..2 {
            for i in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((r.vectors[(i, j)] - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn hand_solved_two_by_two() {
        let t = SymTridiagonal::new(vec![2.0, 2.0], vec![1.0]).unwrap();
        let r = tridiagonal_eigs(&t, 2, Which::Smallest).unwrap();
        assert!((r.values[0] - 1.0).abs() < 1e-15);
        assert!((r.values[1] - 3.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // (1, -1)/√2 and (1, 1)/√2 up to sign
        let z = &r.vectors;
        assert!((z[(0, 0)].abs() - h).abs() < 1e-14);
        assert!((z[(0, 0)] + z[(1, 0)]).abs() < 1e-14);
        assert!((z[(0, 1)] - h).abs() < 1e-14);
        assert!((z[(1, 1)] - h).abs() < 1e-14);
    }

    #[test]
    fn largest_end_is_ascending() {
        let t = SymTridiagonal::new(vec![4.0, 1.0, 3.0, 2.0], vec![0.0; 3]).unwrap();
        let r = tridiagonal_eigs(&t, 2, Which::Largest).unwrap();
        assert_eq!(r.indices, vec![2, 3]);
        assert!((r.values[0] - 3.0).abs() < 1e-15 && (r.values[1] - 4.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_count() {
        let t = SymTridiagonal::new(vec![1.0, 2.0], vec![0.5]).unwrap();
        assert!(tridiagonal_eigs(&t, 0, Which::Smallest).is_err());
        assert!(tridiagonal_eigs(&t, 3, Which::Smallest).is_err());
    }

    #[test]
    fn repeated_eigenvalues_get_orthogonal_vectors() {
        // identity: every eigenvalue is 1
        let t = SymTridiagonal::new(vec![1.0; 6], vec![0.0; 5]).unwrap();
        let r = tridiagonal_eigs(&t, 6, Which::Smallest).unwrap();
        let g = r.vectors.t_matmul(&r.vectors).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g[(i, j)] - expect).abs() < 1e-13, "{i},{j}: {}", g[(i, j)]);
            }
        }
    }

    #[test]
    fn sturm_count_brackets() {
        let t = SymTridiagonal::new(vec![2.0, 2.0], vec![1.0]).unwrap();
        let s = Sturm::new(&t);
        assert_eq!(s.count_below(0.5), 0);
        assert_eq!(s.count_below(2.0), 1);
        assert_eq!(s.count_below(3.5), 2);
    }

    #[test]
    fn one_by_one() {
        let t = SymTridiagonal::new(vec![-4.0], vec![]).unwrap();
        let r = tridiagonal_eigs(&t, 1, Which::Largest).unwrap();
        assert!((r.values[0] + 4.0).abs() < 1e-15);
        assert_eq!(r.vectors[(0, 0)], 1.0);
    }
}
