use crate::error::{Error, Result};
use crate::lanczos::state::LanczosState;
use crate::matcore::{axpy, DenseMatrix};

/// Applies `p = shifts.len()` implicit shifted-QR steps to `T_k` and compresses
/// the factorization to `k - p` steps. With exact shifts (unwanted Ritz
/// values) the kept factorization spans the wanted Ritz vectors.
///
/// Zero shifts leave the state untouched.
pub fn implicit_restart(state: &mut LanczosState, shifts: &[f64]) -> Result<()> {
    if shifts.is_empty() {
        return Ok(());
    }
    let k = state.k();
    let p = shifts.len();
    if p >= k {
        return Err(Error::InvalidArgument(format!(
            "{p} shifts cannot be applied to a {k}-step factorization"
        )));
    }
    let keep = k - p;
    let mut d = state.alpha().to_vec();
    let mut e = state.beta().to_vec();
    let mut q = DenseMatrix::identity(k);

    for &mu in shifts {
        for i in 0..k - 1 {
            if e[i].abs() <= f64::EPSILON * (d[i].abs() + d[i + 1].abs()) {
                e[i] = 0.0;
            }
        }
        let mut l = 0;
        while l < k {
            let mut r = l;
            while r + 1 < k && e[r] != 0.0 {
                r += 1;
            }
            if r > l {
                qr_sweep(&mut d, &mut e, &mut q, l, r, mu);
            }
            l = r + 1;
        }
    }

    let beta_keep = e[keep - 1];
    let sigma = q[(k - 1, keep - 1)];
    let vq = state
        .basis()
        .matmul(&q.columns(0..keep + 1))
        .expect("basis and rotation shapes agree");
    let mut f: Vec<f64> = state.residual().iter().map(|x| x * sigma).collect();
    axpy(beta_keep, vq.col(keep), &mut f);

    d.truncate(keep);
    e.truncate(keep - 1);
    state.replace(&vq, d, e, f);
    state.restart_count += 1;
    Ok(())
}

/// One implicit shifted-QR bulge chase over the unreduced block `l..=r`,
/// accumulating the rotations into the columns of `q`.
fn qr_sweep(d: &mut [f64], e: &mut [f64], q: &mut DenseMatrix, l: usize, r: usize, mu: f64) {
    let mut x = d[l] - mu;
    let mut y = e[l];
    for i in l..r {
        let rr = x.hypot(y);
        let (c, s) = if rr == 0.0 {
            (1.0, 0.0)
        } else {
            (x / rr, y / rr)
        };
        if i > l {
            e[i - 1] = rr;
        }
        let (a, b, dd) = (d[i], e[i], d[i + 1]);
        d[i] = c * c * a + 2.0 * c * s * b + s * s * dd;
        d[i + 1] = s * s * a - 2.0 * c * s * b + c * c * dd;
        e[i] = (c * c - s * s) * b + c * s * (dd - a);
        if i + 1 < r {
            let bulge = s * e[i + 1];
            e[i + 1] *= c;
            x = e[i];
            y = bulge;
        }
        let (qi, qi1) = q.col_pair_mut(i, i + 1);
        for (u, v) in qi.iter_mut().zip(qi1.iter_mut()) {
            let (pu, pv) = (*u, *v);
            *u = c * pu + s * pv;
            *v = -s * pu + c * pv;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lanczos::operator::SpectralOperator;
    use crate::lanczos::state::{
        basis_orthogonality, extend_factorization, factorization_residual,
    };
    use crate::matcore::DenseSymmetric;
    use crate::tridiag::ql::tridiagonal_full_eig;

    fn diag_op(n: usize) -> DenseSymmetric {
        DenseSymmetric::from_diag(&(1..=n).map(|i| i as f64).collect::<Vec<_>>())
    }

    #[test]
    fn zero_shifts_is_a_no_op() {
        let c = diag_op(6);
        let op = SpectralOperator::Explicit(&c);
        let mut st = LanczosState::new(6, 4, 5).unwrap();
        extend_factorization(&op, &mut st, 4).unwrap();
        let before = st.clone();
        implicit_restart(&mut st, &[]).unwrap();
        assert_eq!(st.alpha(), before.alpha());
        assert_eq!(st.restart_count(), 0);
    }

    #[test]
    fn exact_shift_keeps_remaining_ritz_values() {
        let c = diag_op(10);
        let op = SpectralOperator::Explicit(&c);
        let mut st = LanczosState::new(10, 4, 11).unwrap();
        extend_factorization(&op, &mut st, 4).unwrap();
        let t = st.tridiagonal().unwrap();
        let (ritz, _) = tridiagonal_full_eig(t.diag(), t.offdiag()).unwrap();
        implicit_restart(&mut st, &[ritz[3]]).unwrap();
        assert_eq!(st.k(), 3);
        let t3 = st.tridiagonal().unwrap();
        let (kept, _) = tridiagonal_full_eig(t3.diag(), t3.offdiag()).unwrap();
        for (a, b) in kept.iter().zip(&ritz[..3]) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        assert!(factorization_residual(&op, &st).unwrap() < 1e-12);
        assert!(basis_orthogonality(&st) < 1e-13);
    }

    #[test]
    fn too_many_shifts() {
        let c = diag_op(5);
        let op = SpectralOperator::Explicit(&c);
        let mut st = LanczosState::new(5, 3, 0).unwrap();
        extend_factorization(&op, &mut st, 3).unwrap();
        assert!(implicit_restart(&mut st, &[1.0, 2.0, 3.0]).is_err());
    }
}
