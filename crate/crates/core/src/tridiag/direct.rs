use crate::error::Result;
use crate::matcore::{axpy, dot, DenseMatrix, DenseSymmetric, SymTridiagonal};
use crate::tridiag::householder::{Reflector, ReflectorLayout, ReflectorSet};
use crate::tridiag::{QFactor, TridiagResult};

/// Reduces `C` to tridiagonal `T = QᵀCQ` by `n - 2` Householder similarity
/// transforms (4n³/3 flops). `Q` is returned implicitly.
pub fn householder_tridiagonalize(c: &DenseSymmetric) -> Result<TridiagResult> {
    c.check_finite()?;
    let n = c.n();
    let mut q = ReflectorSet::new(n, ReflectorLayout::TridiagImplicit);
    if n <= 2 {
        let diag = (0..n).map(|i| c.get(i, i)).collect();
        let off = (1..n).map(|i| c.get(i, i - 1)).collect();
        return Ok(TridiagResult {
            t: SymTridiagonal::new(diag, off)?,
            q: QFactor::Implicit(q),
        });
    }

    // lower triangle is the working copy
    let mut a = c.materialize();
    let mut off = vec![0.0; n - 1];
    let mut p = vec![0.0; n];

    for i in 0..n - 2 {
        let (h, beta) = Reflector::annihilating(i + 1, &a.col(i)[i + 1..]);
        off[i] = beta;
        {
            let col = a.col_mut(i);
            col[i + 1] = beta;
            col[i + 2..].iter_mut().for_each(|x| *x = 0.0);
        }
        if h.tau != 0.0 {
            let m = n - i - 1;
            let v = &h.v;
            // p = tau * A22 v using the lower triangle of A22
            let p = &mut p[..m];
            p.iter_mut().for_each(|x| *x = 0.0);
            for jj in 0..m {
                let col = &a.col(i + 1 + jj)[i + 1..];
                let mut t = 0.0;
                for ii in jj + 1..m {
                    p[ii] += col[ii] * v[jj];
                    t += col[ii] * v[ii];
                }
                p[jj] += t + col[jj] * v[jj];
            }
            p.iter_mut().for_each(|x| *x *= h.tau);
            // w = p - (tau/2)(pᵀv) v
            let alpha = -0.5 * h.tau * dot(p, v);
            axpy(alpha, v, p);
            // A22 -= v wᵀ + w vᵀ (lower)
            for jj in 0..m {
                let (vj, wj) = (v[jj], p[jj]);
                let col = &mut a.col_mut(i + 1 + jj)[i + 1..];
                for ii in jj..m {
                    col[ii] -= v[ii] * wj + p[ii] * vj;
                }
            }
        }
        q.push(h);
    }
    off[n - 2] = a[(n - 1, n - 2)];
    let diag = (0..n).map(|i| a[(i, i)]).collect();
    Ok(TridiagResult {
        t: SymTridiagonal::new(diag, off)?,
        q: QFactor::Implicit(q),
    })
}

/// Materialized `Q` of a direct tridiagonalization.
pub(crate) fn implicit_q_dense(set: &ReflectorSet) -> DenseMatrix {
    set.to_dense()
}
