use crate::error::{Error, Result};
use crate::matcore::{BandedSymmetric, DenseMatrix, DenseSymmetric};
use crate::tridiag::householder::{Reflector, WyBlock};

/// `W = Q₁ᵀ C Q₁` banded, with `Q₁` explicit.
#[derive(Debug, Clone)]
pub struct BandReductionResult {
    pub w: BandedSymmetric,
    pub q1: DenseMatrix,
}

/// Dense-to-band reduction by panels of `w` columns.
///
/// Each panel is QR-factored below the band, its reflectors are aggregated
/// into one WY block, and the block is applied two-sided to the trailing
/// matrix. `Q₁` is formed by applying every panel block to the identity from
/// the right, which is two matrix-matrix products per panel.
pub fn reduce_to_band(c: &DenseSymmetric, w: usize) -> Result<BandReductionResult> {
    c.check_finite()?;
    let n = c.n();
    if w == 0 || w >= n {
        return Err(Error::InvalidBandwidth { w, n });
    }
    let mut a = c.materialize();
    let mut q1 = DenseMatrix::identity(n);

    // columns 0 .. n-w-1 have entries below the band
    let last = n.saturating_sub(w + 1);
    let mut j0 = 0;
    while j0 < last {
        let j1 = (j0 + w).min(last);
        let top = j0 + w;

        // panel QR of a[top.., j0..j1]
        let mut panel = Vec::with_capacity(j1 - j0);
        for (k, col) in (j0..j1).enumerate() {
            let start = top + k;
            let (h, beta) = Reflector::annihilating(start, &a.col(col)[start..]);
            {
                let cc = a.col_mut(col);
                cc[start] = beta;
                cc[start + 1..].iter_mut().for_each(|x| *x = 0.0);
            }
            h.apply_left(&mut a, col + 1..j1);
            panel.push(h);
        }
        // mirror R into the upper triangle
        for col in j0..j1 {
            for r in top..n {
                a[(col, r)] = a[(r, col)];
            }
        }

        let block = WyBlock::new(&panel);
        // Ĥᵀ A Ĥ on the trailing part
        block.apply_left(&mut a, true, j1..n);
        block.apply_right(&mut a, false, j1..n);
        block.apply_right(&mut q1, false, 0..n);
        j0 = j1;
    }

    Ok(BandReductionResult {
        w: BandedSymmetric::from_dense_lower(&a, w)?,
        q1,
    })
}
