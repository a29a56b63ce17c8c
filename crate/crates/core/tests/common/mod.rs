#![allow(dead_code)]

use gsyeig_core::{DenseMatrix, DenseSymmetric, Uplo, UpperTriangular};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_symmetric(n: usize, seed: u64) -> DenseSymmetric {
    let mut r = rng(seed);
    let vals: Vec<f64> = (0..n * n).map(|_| r.random_range(-1.0..1.0)).collect();
    DenseSymmetric::from_fn(n, Uplo::Upper, |i, j| vals[i + j * n] + vals[j + i * n])
}

/// `GᵀG + n·I`: comfortably positive definite.
pub fn random_spd(n: usize, seed: u64) -> DenseSymmetric {
    let mut r = rng(seed);
    let g = DenseMatrix::from_fn(n, n, |_, _| r.random_range(-1.0..1.0));
    let gtg = g.t_matmul(&g).unwrap();
    DenseSymmetric::from_fn(n, Uplo::Upper, |i, j| {
        gtg[(i, j)] + if i == j { n as f64 } else { 0.0 }
    })
}

/// Upper triangular with a dominant diagonal.
pub fn random_upper(n: usize, seed: u64) -> UpperTriangular {
    let mut r = rng(seed);
    let vals: Vec<f64> = (0..n * n).map(|_| r.random_range(-1.0..1.0)).collect();
    UpperTriangular::from_fn(n, |i, j| {
        if i == j {
            2.0 + vals[i + j * n].abs()
        } else {
            0.3 * vals[i + j * n]
        }
    })
}

pub fn random_vec(n: usize, seed: u64) -> Vec<f64> {
    let mut r = rng(seed);
    (0..n).map(|_| r.random_range(-1.0..1.0)).collect()
}

pub fn to_na(m: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_column_slice(m.rows(), m.cols(), m.as_slice())
}

pub fn sym_to_na(m: &DenseSymmetric) -> DMatrix<f64> {
    to_na(&m.materialize())
}

/// All eigenvalues of a symmetric matrix, ascending (nalgebra).
pub fn oracle_eigenvalues(m: &DenseSymmetric) -> Vec<f64> {
    let mut v: Vec<f64> = sym_to_na(m)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// All generalized eigenvalues of `(A, B)`, ascending: nalgebra Cholesky of
/// `B = LLᵀ`, then the eigenvalues of `L⁻¹AL⁻ᵀ`.
pub fn oracle_generalized(a: &DenseSymmetric, b: &DenseSymmetric) -> Vec<f64> {
    let l = sym_to_na(b).cholesky().expect("SPD").l();
    let linv = l.clone().try_inverse().unwrap();
    let c = &linv * sym_to_na(a) * linv.transpose();
    let c = (&c + c.transpose()) * 0.5;
    let mut v: Vec<f64> = c.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn fro(m: &DMatrix<f64>) -> f64 {
    m.norm()
}

pub fn max_rel_err(got: &[f64], want: &[f64]) -> f64 {
    assert_eq!(got.len(), want.len());
    got.iter()
        .zip(want)
        .map(|(g, w)| (g - w).abs() / w.abs().max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max)
}

/// Largest principal angle (radians) between the column spans of two
/// matrices with orthonormal columns.
pub fn subspace_angle(x: &DenseMatrix, y: &DenseMatrix) -> f64 {
    let xn = to_na(x);
    let yn = to_na(y);
    let proj = &yn - &xn * (xn.transpose() * &yn);
    proj.singular_values().max().min(1.0).asin()
}

/// `‖QᵀQ − I‖_F`.
pub fn orthogonality(q: &DenseMatrix) -> f64 {
    let qn = to_na(q);
    fro(&(qn.transpose() * &qn - DMatrix::identity(q.cols(), q.cols())))
}
