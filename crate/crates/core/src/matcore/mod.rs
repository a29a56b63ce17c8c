//! Matrix storage types and the dense kernels every pipeline stage is built from.
//!
//! Dense storage is column-major. All kernels use a fixed loop nesting, so
//! results are reproducible run to run.

mod banded;
mod dense;
mod triangular;

pub use banded::{BandedSymmetric, SymTridiagonal};
pub use dense::{sym_matvec, sym_matvec_into, DenseMatrix, DenseSymmetric, Uplo};
pub use triangular::{
    tri_solve_multi, tri_solve_multi_in_place, tri_solve_vec, Side, TriMode, UpperTriangular,
};

pub(crate) use dense::{axpy, dot, norm2};

/// Frobenius norm over all logical entries.
pub trait FrobeniusNorm {
    fn frobenius_norm(&self) -> f64;
}

fn sum_squares(it: impl Iterator<Item = f64>) -> f64 {
    it.map(|x| x * x).sum::<f64>().sqrt()
}

impl FrobeniusNorm for DenseMatrix {
    fn frobenius_norm(&self) -> f64 {
        sum_squares(self.as_slice().iter().copied())
    }
}

// Symmetric types walk the logical matrix in column-major order so the result
// is bit-identical to the norm of the materialized form.
impl FrobeniusNorm for DenseSymmetric {
    fn frobenius_norm(&self) -> f64 {
        let n = self.n();
        sum_squares(
            (0..n)
                .flat_map(|j| (0..n).map(move |i| (i, j)))
                .map(|(i, j)| self.get(i, j)),
        )
    }
}

impl FrobeniusNorm for UpperTriangular {
    fn frobenius_norm(&self) -> f64 {
        let n = self.n();
        sum_squares(
            (0..n)
                .flat_map(|j| (0..n).map(move |i| (i, j)))
                .map(|(i, j)| self.get(i, j)),
        )
    }
}

impl FrobeniusNorm for BandedSymmetric {
    fn frobenius_norm(&self) -> f64 {
        let n = self.n();
        sum_squares(
            (0..n)
                .flat_map(|j| (0..n).map(move |i| (i, j)))
                .map(|(i, j)| self.get(i, j)),
        )
    }
}

impl FrobeniusNorm for SymTridiagonal {
    fn frobenius_norm(&self) -> f64 {
        let n = self.n();
        sum_squares(
            (0..n)
                .flat_map(|j| (0..n).map(move |i| (i, j)))
                .map(|(i, j)| self.get(i, j)),
        )
    }
}

pub fn frobenius_norm<M: FrobeniusNorm + ?Sized>(m: &M) -> f64 {
    m.frobenius_norm()
}
