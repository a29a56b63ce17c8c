mod common;

use common::*;
use gsyeig_core::lanczos::{
    basis_orthogonality, check_convergence, extend_factorization, factorization_residual,
    implicit_restart, LanczosState, SpectralOperator,
};
use gsyeig_core::matcore::{sym_matvec, tri_solve_vec, BandedSymmetric, SymTridiagonal, TriMode};
use gsyeig_core::stdform::{cholesky, reduce_to_standard};
use gsyeig_core::tridiag::{
    band_to_tridiagonal, householder_tridiagonalize, reduce_to_band, tridiagonal_eigs,
};
use gsyeig_core::{
    cost_model, frobenius_norm, CostParams, DenseSymmetric, StageKey, Uplo, Variant, Which,
};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 32,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn symmetric_product_is_self_adjoint(n in 1usize..40, seed in any::<u64>()) {
        let m = random_symmetric(n, seed);
        let u = random_vec(n, seed ^ 1);
        let v = random_vec(n, seed ^ 2);
        let mv = sym_matvec(&m, &v).unwrap();
        let mu = sym_matvec(&m, &u).unwrap();
        let a: f64 = u.iter().zip(&mv).map(|(x, y)| x * y).sum();
        let b: f64 = v.iter().zip(&mu).map(|(x, y)| x * y).sum();
        let scale = frobenius_norm(&m) * n as f64;
        prop_assert!((a - b).abs() <= 8.0 * n as f64 * f64::EPSILON * scale.max(1.0));
    }

    #[test]
    fn triangular_solve_multiplies_back(n in 1usize..50, seed in any::<u64>()) {
        let u = random_upper(n, seed);
        let v = random_vec(n, seed ^ 3);
        let x = tri_solve_vec(&u, &v, TriMode::Inverse).unwrap();
        let ux = u.materialize().matvec(&x).unwrap();
        let err: f64 = ux.iter().zip(&v).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let nv: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let un = to_na(&u.materialize());
        let kappa = un.clone().norm() * un.try_inverse().unwrap().norm();
        prop_assert!(err <= 10.0 * n as f64 * f64::EPSILON * kappa * nv.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn band_and_tridiagonal_storage_agree(n in 2usize..20, seed in any::<u64>()) {
        let m = random_symmetric(n, seed);
        prop_assert_eq!(BandedSymmetric::from_symmetric(&m, n - 1).unwrap().materialize(), m.materialize());
        let t = SymTridiagonal::new(random_vec(n, seed), random_vec(n - 1, seed ^ 5)).unwrap();
        prop_assert_eq!(t.to_banded().materialize(), t.materialize());
    }

    #[test]
    fn cholesky_reconstructs(n in 1usize..70, seed in any::<u64>()) {
        let b = random_spd(n, seed);
        let f = cholesky(&b).unwrap();
        let un = to_na(&f.u().materialize());
        let err = fro(&(un.transpose() * &un - sym_to_na(&b)));
        prop_assert!(err <= 20.0 * n as f64 * f64::EPSILON * frobenius_norm(&b));
        prop_assert!(f.u().diag().iter().all(|d| *d > 0.0));
    }

    #[test]
    fn reduction_preserves_spectrum(n in 1usize..30, seed in any::<u64>()) {
        let a = random_symmetric(n, seed);
        let b = random_spd(n, seed ^ 7);
        let c = reduce_to_standard(&a, &cholesky(&b).unwrap()).unwrap();
        let got = oracle_eigenvalues(&c);
        let want = oracle_generalized(&a, &b);
        let scale = want.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for (g, w) in got.iter().zip(&want) {
            prop_assert!((g - w).abs() <= 1e-10 * scale);
        }
        let cm = c.materialize();
        prop_assert_eq!(cm.transpose(), cm);
    }

    #[test]
    fn td_and_tt_are_orthogonal_similarities(n in 3usize..60, w in 1usize..12, seed in any::<u64>()) {
        let c = random_symmetric(n, seed);
        let cn = sym_to_na(&c);
        let cf = frobenius_norm(&c);
        let td = householder_tridiagonalize(&c).unwrap();
        let w = w.min(n - 1);
        let tt = band_to_tridiagonal(&reduce_to_band(&c, w).unwrap()).unwrap();
        for r in [&td, &tt] {
            let q = r.q.to_dense();
            let qn = to_na(&q);
            let rec = &qn * to_na(&r.t.materialize()) * qn.transpose();
            prop_assert!(fro(&(rec - &cn)) <= 1e-12 * cf);
            prop_assert!(orthogonality(&q) <= 1e-12);
            let tr: f64 = r.t.diag().iter().sum();
            prop_assert!((tr - c.trace()).abs() <= 10.0 * n as f64 * f64::EPSILON * cf);
        }
    }

    #[test]
    fn subset_eigs_match_oracle(n in 1usize..60, frac in 0.0f64..1.0, seed in any::<u64>(), largest in any::<bool>()) {
        let t = SymTridiagonal::new(random_vec(n, seed), random_vec(n - 1, seed ^ 9)).unwrap();
        let s = 1 + ((n - 1) as f64 * frac) as usize;
        let which = if largest { Which::Largest } else { Which::Smallest };
        let r = tridiagonal_eigs(&t, s, which).unwrap();
        let full = oracle_eigenvalues(&DenseSymmetric::from_dense(&t.materialize(), Uplo::Upper).unwrap());
        let want = if largest { &full[n - s..] } else { &full[..s] };
        let tf = frobenius_norm(&t).max(f64::MIN_POSITIVE);
        for (g, w) in r.values.iter().zip(want) {
            prop_assert!((g - w).abs() <= 1e-12 * tf);
        }
        prop_assert!(r.values.windows(2).all(|p| p[0] <= p[1]));
        prop_assert!(orthogonality(&r.vectors) <= 1e-11);
    }

    #[test]
    fn lanczos_identity_survives_restarts(n in 20usize..80, seed in any::<u64>()) {
        let c = random_symmetric(n, seed);
        let op = SpectralOperator::Explicit(&c);
        let m = 12;
        let mut st = LanczosState::new(n, m, seed).unwrap();
        extend_factorization(&op, &mut st, m).unwrap();
        for _ in 0..3 {
            let info = check_convergence(&st, 0.0).unwrap();
            prop_assert!(info.residual_estimates.iter().all(|e| *e >= 0.0));
            implicit_restart(&mut st, &info.values[..4]).unwrap();
            prop_assert!(factorization_residual(&op, &st).unwrap() <= 1e-11 * st.scale());
            prop_assert!(basis_orthogonality(&st) <= 1e-12);
            extend_factorization(&op, &mut st, m).unwrap();
            prop_assert!(factorization_residual(&op, &st).unwrap() <= 1e-11 * st.scale());
        }
        prop_assert_eq!(st.matvec_count(), st.step_count());
    }

    #[test]
    fn cost_model_shape(n in 1usize..20000, s_frac in 0.0f64..1.0, m in 1usize..500, w in 1usize..64,
                        matvecs in 0usize..100000, restarts in 0usize..1000) {
        let s = 1 + ((n - 1) as f64 * s_frac) as usize;
        let p = CostParams { n, s, m, w, matvecs, restarts };
        let nf = n as f64;
        let sf = s as f64;
        for v in Variant::ALL {
            let r = cost_model(&p, v);
            prop_assert!(r.stages.values().all(|x| *x >= 0.0));
            prop_assert_eq!(r.stages.keys().copied().collect::<Vec<_>>(), v.stage_keys());
        }
        let td = cost_model(&p, Variant::Td);
        let tt = cost_model(&p, Variant::Tt);
        let bucket = 7.0 * nf.powi(3) / 3.0 + 2.0 * nf * nf * sf;
        prop_assert!((tt.tt_back_transform_bucket() - bucket).abs() <= 1e-12 * bucket);
        let td_part = td.get(StageKey::Td1) + td.get(StageKey::Td3);
        let tt_part = tt.get(StageKey::Tt1) + tt.get(StageKey::Tt2) + tt.get(StageKey::Tt4);
        if s < n {
            prop_assert!(td_part < tt_part);
        }
        let ke = cost_model(&p, Variant::Ke).apply_flops().unwrap();
        let ki = cost_model(&p, Variant::Ki).apply_flops().unwrap();
        prop_assert_eq!(ki, 2.0 * ke);
    }
}
