//! Transformation of the generalized pencil `(A, B)` to the standard problem
//! `C = U⁻ᵀ A U⁻¹` and back, with `B = UᵀU`.

use crate::error::{check_dim, Error, Result};
use crate::matcore::{
    tri_solve_multi, tri_solve_multi_in_place, DenseMatrix, DenseSymmetric, Side, TriMode, Uplo,
    UpperTriangular,
};

pub const DEFAULT_CHOLESKY_BLOCK: usize = 64;

/// Upper Cholesky factor `U` with `B = UᵀU`.
#[derive(Debug, Clone, PartialEq)]
pub struct CholeskyFactor {
    u: UpperTriangular,
}

impl CholeskyFactor {
    pub fn u(&self) -> &UpperTriangular {
        &self.u
    }

    pub fn into_u(self) -> UpperTriangular {
        self.u
    }

    pub fn n(&self) -> usize {
        self.u.n()
    }
}

/// Cholesky factorization with the default block size.
pub fn cholesky(b: &DenseSymmetric) -> Result<CholeskyFactor> {
    cholesky_blocked(b, DEFAULT_CHOLESKY_BLOCK)
}

/// Right-looking blocked Cholesky factorization, `n³/3` flops.
///
/// Each step factors a diagonal block, solves the block row to its right and
/// applies the symmetric rank-`block` update to the trailing upper triangle.
pub fn cholesky_blocked(b: &DenseSymmetric, block: usize) -> Result<CholeskyFactor> {
    if block == 0 {
        return Err(Error::InvalidArgument(
            "Cholesky block size must be positive".into(),
        ));
    }
    let n = b.n();
    let mut w = DenseMatrix::from_fn(n, n, |i, j| if i <= j { b.get(i, j) } else { 0.0 });

    let mut k0 = 0;
    while k0 < n {
        let k1 = (k0 + block).min(n);

        // diagonal block
        for j in k0..k1 {
            let cj = w.col(j);
            let mut ajj = cj[j];
            for &x in &cj[k0..j] {
                ajj -= x * x;
            }
            if !ajj.is_finite() || ajj <= 0.0 {
                return Err(Error::NotPositiveDefinite(j + 1));
            }
            let ujj = ajj.sqrt();
            w[(j, j)] = ujj;
            for i in j + 1..k1 {
                let mut s = w[(j, i)];
                for p in k0..j {
                    s -= w[(p, j)] * w[(p, i)];
                }
                w[(j, i)] = s / ujj;
            }
        }

        // block row: U_kkᵀ X = B_k,rest
        for c in k1..n {
            for j in k0..k1 {
                let mut s = w[(j, c)];
                for p in k0..j {
                    s -= w[(p, j)] * w[(p, c)];
                }
                w[(j, c)] = s / w[(j, j)];
            }
        }

        // trailing update of the upper triangle
        for c in k1..n {
            for r in k1..=c {
                let mut s = 0.0;
                for p in k0..k1 {
                    s += w[(p, r)] * w[(p, c)];
                }
                w[(r, c)] -= s;
            }
        }
        k0 = k1;
    }

    Ok(CholeskyFactor {
        u: UpperTriangular::from_dense(w)?,
    })
}

/// `C = U⁻ᵀ A U⁻¹` via two multi-RHS triangular solves (2n³ flops), followed by
/// averaging of the two triangles so the result is exactly symmetric.
pub fn reduce_to_standard(a: &DenseSymmetric, f: &CholeskyFactor) -> Result<DenseSymmetric> {
    check_dim("reduce_to_standard", f.n(), a.n())?;
    let x = tri_solve_multi(
        f.u(),
        &a.materialize(),
        Side::Left,
        TriMode::InverseTranspose,
    )?;
    let c = tri_solve_multi(f.u(), &x, Side::Right, TriMode::Inverse)?;
    Ok(DenseSymmetric::from_fn(a.n(), Uplo::Upper, |i, j| {
        0.5 * (c[(i, j)] + c[(j, i)])
    }))
}

/// `X = U⁻¹ Y` (n²s flops).
pub fn back_transform(f: &CholeskyFactor, y: &DenseMatrix) -> Result<DenseMatrix> {
    tri_solve_multi(f.u(), y, Side::Left, TriMode::Inverse)
}

/// In-place form of [`back_transform`].
pub fn back_transform_in_place(f: &CholeskyFactor, y: &mut DenseMatrix) -> Result<()> {
    tri_solve_multi_in_place(f.u(), y, Side::Left, TriMode::Inverse)
}
