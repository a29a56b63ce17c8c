mod common;

use common::*;
use gsyeig_core::lanczos::{
    basis_orthogonality, check_convergence, extend_factorization, factorization_residual,
    implicit_restart, solve_std_krylov, KrylovOptions, LanczosState, SpectralOperator,
};
use gsyeig_core::stdform::{cholesky, reduce_to_standard};
use gsyeig_core::tridiag::{solve_std_td, Which};
use gsyeig_core::{frobenius_norm, DenseSymmetric};
use nalgebra::DVector;

fn diag_op(n: usize) -> DenseSymmetric {
    DenseSymmetric::from_diag(&(1..=n).map(|i| i as f64).collect::<Vec<_>>())
}

#[test]
fn cross_mode_apply_n30() {
    let a = random_symmetric(30, 50);
    let b = random_spd(30, 51);
    let f = cholesky(&b).unwrap();
    let c = reduce_to_standard(&a, &f).unwrap();
    let w = random_vec(30, 52);
    let e = SpectralOperator::Explicit(&c).apply(&w).unwrap();
    let i = SpectralOperator::Implicit { a: &a, u: f.u() }
        .apply(&w)
        .unwrap();
    let diff = DVector::from_vec(e) - DVector::from_vec(i);
    assert!(diff.norm() <= 1e-12 * DVector::from_column_slice(&w).norm() * frobenius_norm(&c));
}

#[test]
fn implicit_apply_is_linear_and_self_adjoint() {
    let n = 40;
    let a = random_symmetric(n, 53);
    let b = random_spd(n, 54);
    let f = cholesky(&b).unwrap();
    let op = SpectralOperator::Implicit { a: &a, u: f.u() };
    let u = random_vec(n, 55);
    let v = random_vec(n, 56);
    let opu = op.apply(&u).unwrap();
    let opv = op.apply(&v).unwrap();
    let comb: Vec<f64> = u.iter().zip(&v).map(|(x, y)| 2.0 * x - 3.0 * y).collect();
    let opc = op.apply(&comb).unwrap();
    let lin: f64 = (0..n)
        .map(|i| (opc[i] - 2.0 * opu[i] + 3.0 * opv[i]).powi(2))
        .sum::<f64>()
        .sqrt();
    let scale = DVector::from_vec(opu.clone()).norm() + DVector::from_vec(opv.clone()).norm();
    assert!(lin <= 10.0 * n as f64 * f64::EPSILON * scale);
    let uv: f64 = u.iter().zip(&opv).map(|(x, y)| x * y).sum();
    let vu: f64 = v.iter().zip(&opu).map(|(x, y)| x * y).sum();
    let c = reduce_to_standard(&a, &f).unwrap();
    let nu = DVector::from_column_slice(&u).norm();
    let nv = DVector::from_column_slice(&v).norm();
    assert!((uv - vu).abs() <= 10.0 * n as f64 * f64::EPSILON * nu * nv * frobenius_norm(&c));
}

#[test]
fn full_subspace_recovers_diag_1_to_8() {
    let c = diag_op(8);
    let op = SpectralOperator::Explicit(&c);
    let mut st = LanczosState::with_start_vector(&[1.0; 8], 8, 0).unwrap();
    extend_factorization(&op, &mut st, 8).unwrap();
    let t = st.tridiagonal().unwrap();
    let ev = oracle_eigenvalues(
        &DenseSymmetric::from_dense(&t.materialize(), gsyeig_core::Uplo::Upper).unwrap(),
    );
    for (g, w) in ev.iter().zip(1..=8) {
        assert!((g - w as f64).abs() <= 1e-12);
    }
    let info = check_convergence(&st, 0.0).unwrap();
    assert!(info.converged.iter().all(|c| *c));
}

#[test]
fn orthogonality_audit_k50() {
    let c = random_symmetric(120, 57);
    let op = SpectralOperator::Explicit(&c);
    let mut st = LanczosState::new(120, 50, 3).unwrap();
    extend_factorization(&op, &mut st, 50).unwrap();
    assert!(basis_orthogonality(&st) <= 1e-13);
    assert!(factorization_residual(&op, &st).unwrap() <= 1e-11 * st.scale());
}

#[test]
fn identity_holds_across_restarts_n60() {
    for seed in 0..5 {
        let a = random_symmetric(60, 60 + seed);
        let b = random_spd(60, 70 + seed);
        let f = cholesky(&b).unwrap();
        let op = SpectralOperator::Implicit { a: &a, u: f.u() };
        let mut st = LanczosState::new(60, 12, seed).unwrap();
        extend_factorization(&op, &mut st, 12).unwrap();
        for _ in 0..5 {
            assert!(factorization_residual(&op, &st).unwrap() <= 1e-11 * st.scale());
            let info = check_convergence(&st, 0.0).unwrap();
            implicit_restart(&mut st, &info.values[8..]).unwrap();
            assert_eq!(st.k(), 8);
            assert!(factorization_residual(&op, &st).unwrap() <= 1e-11 * st.scale());
            assert!(basis_orthogonality(&st) <= 1e-12);
            extend_factorization(&op, &mut st, 12).unwrap();
        }
    }
}

#[test]
fn residual_estimate_bounds_true_residual() {
    let c = random_spd(60, 80);
    let op = SpectralOperator::Explicit(&c);
    let opts = KrylovOptions {
        m: Some(12),
        ..Default::default()
    };
    let sol = solve_std_krylov(&op, 4, Which::Smallest, &opts).unwrap();
    let cn = sym_to_na(&c);
    for j in 0..4 {
        let y = to_na(&sol.vectors).column(j).into_owned();
        let res = (&cn * &y - &y * sol.values[j]).norm();
        let est = sol.diagnostics.residual_estimates[j];
        assert!(
            res <= 10.0 * est.max(f64::EPSILON * frobenius_norm(&c)),
            "{res} vs {est}"
        );
    }
}

#[test]
fn half_subspace_converges_within_50_restarts() {
    let n = 40;
    let c = DenseSymmetric::from_diag(&(0..n).map(|i| 1.0 + i as f64).collect::<Vec<_>>());
    let op = SpectralOperator::Explicit(&c);
    let opts = KrylovOptions {
        m: Some(10),
        max_restarts: 50,
        ..Default::default()
    };
    let sol = solve_std_krylov(&op, 5, Which::Smallest, &opts).unwrap();
    assert!(sol.diagnostics.restarts <= 50);
    for (g, w) in sol.values.iter().zip(1..=5) {
        assert!((g - w as f64).abs() <= 1e-10);
    }
}

#[test]
fn krylov_matches_td_n80() {
    let c = random_symmetric(80, 81);
    let op = SpectralOperator::Explicit(&c);
    for which in [Which::Smallest, Which::Largest] {
        let kr = solve_std_krylov(&op, 6, which, &KrylovOptions::default()).unwrap();
        let td = solve_std_td(&c, 6, which).unwrap();
        assert!(max_rel_err(&kr.values, &td.values) <= 1e-9);
        assert!(subspace_angle(&kr.vectors, &td.vectors) <= 1e-7);
    }
}

#[test]
fn wanted_ritz_values_survive_restart() {
    let c = diag_op(50);
    let op = SpectralOperator::Explicit(&c);
    let mut st = LanczosState::new(50, 10, 4).unwrap();
    extend_factorization(&op, &mut st, 10).unwrap();
    let first_err = check_convergence(&st, 0.0).unwrap().values[0] - 1.0;
    for _ in 0..30 {
        let info = check_convergence(&st, 0.0).unwrap();
        implicit_restart(&mut st, &info.values[6..]).unwrap();
        let t = st.tridiagonal().unwrap();
        let kept = oracle_eigenvalues(
            &DenseSymmetric::from_dense(&t.materialize(), gsyeig_core::Uplo::Upper).unwrap(),
        );
        for (i, conv) in info.converged.iter().enumerate().take(3) {
            if *conv {
                assert!(kept.iter().any(|k| (k - info.values[i]).abs() <= 1e-12));
            }
        }
        extend_factorization(&op, &mut st, 10).unwrap();
    }
    let last_err = check_convergence(&st, 0.0).unwrap().values[0] - 1.0;
    assert!(last_err <= first_err);
}
