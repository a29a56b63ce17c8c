use crate::error::{check_dim, Error, Result};
use crate::matcore::dense::{axpy, dot, DenseMatrix};

/// Upper-triangular `n x n` matrix. Entries below the diagonal are never read.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperTriangular {
    n: usize,
    data: DenseMatrix,
}

/// Which inverse a triangular solve applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriMode {
    /// `U⁻¹ · v` (back substitution).
    Inverse,
    /// `U⁻ᵀ · v` (forward substitution).
    InverseTranspose,
}

/// Side on which the triangular inverse multiplies a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl UpperTriangular {
    /// Takes the upper triangle (including the diagonal) of a square matrix.
    pub fn from_dense(m: DenseMatrix) -> Result<Self> {
        check_dim("UpperTriangular::from_dense", m.rows(), m.cols())?;
        let n = m.rows();
        let mut data = m;
        for j in 0..n {
            for i in j + 1..n {
                data[(i, j)] = 0.0;
            }
        }
        Ok(Self { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let data = DenseMatrix::from_fn(n, n, |i, j| if i <= j { f(i, j) } else { 0.0 });
        Self { n, data }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            data: DenseMatrix::identity(n),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i > j {
            0.0
        } else {
            self.data[(i, j)]
        }
    }

    pub fn diag(&self) -> Vec<f64> {
        self.data.diag()
    }

    pub fn materialize(&self) -> DenseMatrix {
        self.data.clone()
    }

    fn check_invertible(&self) -> Result<()> {
        match (0..self.n).find(|&i| self.data[(i, i)] == 0.0) {
            Some(i) => Err(Error::SingularFactor(i + 1)),
            None => Ok(()),
        }
    }

    /// In-place `x := U⁻¹ x`, column-oriented over contiguous columns of `U`.
    pub(crate) fn solve_in_place(&self, x: &mut [f64]) {
        for j in (0..self.n).rev() {
            let col = self.data.col(j);
            x[j] /= col[j];
            let xj = x[j];
            if xj != 0.0 {
                axpy(-xj, &col[..j], &mut x[..j]);
            }
        }
    }

    /// In-place `x := U⁻ᵀ x`, dot-product form over contiguous columns of `U`.
    pub(crate) fn solve_transpose_in_place(&self, x: &mut [f64]) {
        for i in 0..self.n {
            let col = self.data.col(i);
            let s = dot(&col[..i], &x[..i]);
            x[i] = (x[i] - s) / col[i];
        }
    }
}

/// Single right-hand-side triangular solve (n² flops).
pub fn tri_solve_vec(u: &UpperTriangular, v: &[f64], mode: TriMode) -> Result<Vec<f64>> {
    check_dim("tri_solve_vec", u.n, v.len())?;
    u.check_invertible()?;
    let mut x = v.to_vec();
    match mode {
        TriMode::Inverse => u.solve_in_place(&mut x),
        TriMode::InverseTranspose => u.solve_transpose_in_place(&mut x),
    }
    Ok(x)
}

/// Multi right-hand-side triangular solve.
///
/// `Side::Left` computes `op(U)⁻¹ M` column by column with the same kernel as
/// [`tri_solve_vec`], so each column is bit-identical to the vector solve.
/// `Side::Right` computes `M op(U)⁻¹`.
pub fn tri_solve_multi(
    u: &UpperTriangular,
    m: &DenseMatrix,
    side: Side,
    mode: TriMode,
) -> Result<DenseMatrix> {
    let mut x = m.clone();
    tri_solve_multi_in_place(u, &mut x, side, mode)?;
    Ok(x)
}

pub fn tri_solve_multi_in_place(
    u: &UpperTriangular,
    x: &mut DenseMatrix,
    side: Side,
    mode: TriMode,
) -> Result<()> {
    let n = u.n;
    match side {
        Side::Left => check_dim("tri_solve_multi (rows)", n, x.rows())?,
        Side::Right => check_dim("tri_solve_multi (cols)", n, x.cols())?,
    }
    u.check_invertible()?;
    match (side, mode) {
        (Side::Left, TriMode::Inverse) => {
            for j in 0..x.cols() {
                u.solve_in_place(x.col_mut(j));
            }
        }
        (Side::Left, TriMode::InverseTranspose) => {
            for j in 0..x.cols() {
                u.solve_transpose_in_place(x.col_mut(j));
            }
        }
        // X U = M: X[:, j] = (M[:, j] - sum_{p<j} X[:, p] U[p, j]) / U[j, j]
        (Side::Right, TriMode::Inverse) => {
            for j in 0..n {
                for p in 0..j {
                    let upj = u.data[(p, j)];
                    if upj != 0.0 {
                        let (xp, xj) = x.col_pair_mut(p, j);
                        axpy(-upj, xp, xj);
                    }
                }
                let d = u.data[(j, j)];
                x.col_mut(j).iter_mut().for_each(|e| *e /= d);
            }
        }
        // X Uᵀ = M: X[:, j] = (M[:, j] - sum_{p>j} X[:, p] U[j, p]) / U[j, j]
        (Side::Right, TriMode::InverseTranspose) => {
            for j in (0..n).rev() {
                for p in j + 1..n {
                    let ujp = u.data[(j, p)];
                    if ujp != 0.0 {
                        let (xj, xp) = x.col_pair_mut(j, p);
                        axpy(-ujp, xp, xj);
                    }
                }
                let d = u.data[(j, j)];
                x.col_mut(j).iter_mut().for_each(|e| *e /= d);
            }
        }
    }
    Ok(())
}
