mod common;

use common::*;
use gsyeig_core::pipeline::linear_spectrum;
use gsyeig_core::{
    accuracy_metrics, cost_model, eigen_pair_with_spectrum, solve_gsyeig, CostParams, SolverConfig,
    StageKey, Variant, Which,
};

fn planted(n: usize) -> Vec<f64> {
    linear_spectrum(n, 1.0, 10.0)
}

#[test]
fn identity_b_gives_planted_spectrum() {
    let p: Vec<f64> = (1..=10).map(f64::from).collect();
    let (a, _) = eigen_pair_with_spectrum(10, &p, 1.0, 3).unwrap();
    assert!(max_rel_err(&oracle_eigenvalues(&a), &p) <= 1e-13);
}

#[test]
fn generator_spectrum_matches_oracle() {
    let p = planted(40);
    let (a, b) = eigen_pair_with_spectrum(40, &p, 1e4, 5).unwrap();
    assert!(max_rel_err(&oracle_generalized(&a, &b), &p) <= 1e-10);
    let eb = oracle_eigenvalues(&b);
    assert!((eb[39] / eb[0] / 1e4 - 1.0).abs() < 1e-8);
}

#[test]
fn planted_n120_all_variants() {
    let n = 120;
    let p = planted(n);
    let (a, b) = eigen_pair_with_spectrum(n, &p, 1e4, 11).unwrap();
    for v in Variant::ALL {
        let r = solve_gsyeig(&a, &b, &SolverConfig::new(v, 6)).unwrap();
        assert!(max_rel_err(&r.eigenvalues, &p[..6]) <= 1e-9, "{v}");
    }
}

#[test]
fn planted_n80_s5() {
    let p = planted(80);
    let (a, b) = eigen_pair_with_spectrum(80, &p, 1e2, 12).unwrap();
    for v in Variant::ALL {
        let r = solve_gsyeig(&a, &b, &SolverConfig::new(v, 5)).unwrap();
        assert!(max_rel_err(&r.eigenvalues, &p[..5]) <= 1e-9, "{v}");
    }
}

#[test]
fn inverse_mode_reproduces_direct_mode() {
    let n = 120;
    let p = planted(n);
    let (a, b) = eigen_pair_with_spectrum(n, &p, 1e4, 13).unwrap();
    for v in Variant::ALL {
        let direct = solve_gsyeig(&a, &b, &SolverConfig::new(v, 6)).unwrap();
        let cfg = SolverConfig::new(v, 6).which(Which::Largest).inverted(true);
        let inv = solve_gsyeig(&a, &b, &cfg).unwrap();
        assert!(
            max_rel_err(&inv.eigenvalues, &direct.eigenvalues) <= 1e-9,
            "{v}"
        );
        assert!(subspace_angle_b(&inv, &direct, &b) <= 1e-6, "{v}");
        let mu = inv.diagnostics.inverted_values.as_ref().unwrap();
        for (l, m) in inv.eigenvalues.iter().zip(mu) {
            assert_eq!(*l, 1.0 / m);
        }
        let acc = accuracy_metrics(&a, &b, &inv).unwrap();
        assert!(acc.orth <= 1e-12 && acc.resid <= 1e-12, "{v} {acc:?}");
    }
}

/// Columnwise direction agreement between two B-orthonormal solutions.
fn subspace_angle_b(
    x: &gsyeig_core::EigenResult,
    y: &gsyeig_core::EigenResult,
    b: &gsyeig_core::DenseSymmetric,
) -> f64 {
    let bn = sym_to_na(b);
    let xn = to_na(&x.x);
    let yn = to_na(&y.x);
    let g = xn.transpose() * bn * yn;
    (0..g.ncols())
        .map(|j| g[(j, j)].abs().min(1.0).acos())
        .fold(0.0, f64::max)
}

#[test]
fn desk_scale_accuracy_n200() {
    let n = 200;
    let p = planted(n);
    for cond in [1.0, 1e2, 1e4] {
        let (a, b) = eigen_pair_with_spectrum(n, &p, cond, 14).unwrap();
        for v in Variant::ALL {
            let r = solve_gsyeig(&a, &b, &SolverConfig::new(v, 10)).unwrap();
            let acc = accuracy_metrics(&a, &b, &r).unwrap();
            assert!(acc.resid <= 1e-13, "{v} cond={cond} {acc:?}");
            assert!(acc.orth <= 1e-13, "{v} cond={cond} {acc:?}");
        }
    }
}

#[test]
fn cross_variant_agreement() {
    let n = 100;
    let a = random_symmetric(n, 15);
    let b = random_spd(n, 16);
    let results: Vec<_> = Variant::ALL
        .iter()
        .map(|v| solve_gsyeig(&a, &b, &SolverConfig::new(*v, 4)).unwrap())
        .collect();
    for r in &results[1..] {
        assert!(
            max_rel_err(&r.eigenvalues, &results[0].eigenvalues) <= 1e-9,
            "{}",
            r.variant
        );
        assert!(
            subspace_angle_b(r, &results[0], &b) <= 1e-6,
            "{}",
            r.variant
        );
    }
}

#[test]
fn stage_keys_and_flops_follow_variant() {
    let p = planted(60);
    let (a, b) = eigen_pair_with_spectrum(60, &p, 10.0, 17).unwrap();
    for v in Variant::ALL {
        let r = solve_gsyeig(&a, &b, &SolverConfig::new(v, 3)).unwrap();
        assert_eq!(r.stage_timings.keys().collect::<Vec<_>>(), v.stage_keys());
        assert_eq!(
            r.stage_flops.keys().copied().collect::<Vec<_>>(),
            v.stage_keys()
        );
        let d = &r.diagnostics;
        let params = CostParams {
            n: 60,
            s: 3,
            m: d.m.unwrap_or(23),
            w: d.w.unwrap_or(32),
            matvecs: d.matvecs,
            restarts: d.restarts,
        };
        assert_eq!(r.stage_flops, cost_model(&params, v).stages);
        let n2 = 3600.0;
        match v {
            Variant::Ke => assert_eq!(r.stage_flops[&StageKey::Ke1], 2.0 * n2 * d.matvecs as f64),
            Variant::Ki => {
                let apply: f64 = [StageKey::Ki1, StageKey::Ki2, StageKey::Ki3]
                    .iter()
                    .map(|k| r.stage_flops[k])
                    .sum();
                assert_eq!(apply, 4.0 * n2 * d.matvecs as f64);
            }
            _ => assert_eq!(d.matvecs, 0),
        }
    }
}

#[test]
fn ke_ki_agree() {
    let p = planted(100);
    for seed in 0..3 {
        let (a, b) = eigen_pair_with_spectrum(100, &p, 1e3, 200 + seed).unwrap();
        let ke = solve_gsyeig(&a, &b, &SolverConfig::new(Variant::Ke, 5).seed(seed)).unwrap();
        let ki = solve_gsyeig(&a, &b, &SolverConfig::new(Variant::Ki, 5).seed(seed)).unwrap();
        assert!(max_rel_err(&ke.eigenvalues, &ki.eigenvalues) <= 1e-9);
    }
}

#[test]
fn largest_mode_descending() {
    let p = planted(50);
    let (a, b) = eigen_pair_with_spectrum(50, &p, 1e2, 18).unwrap();
    for v in Variant::ALL {
        let r = solve_gsyeig(&a, &b, &SolverConfig::new(v, 3).which(Which::Largest)).unwrap();
        let want = [p[49], p[48], p[47]];
        assert!(max_rel_err(&r.eigenvalues, &want) <= 1e-9, "{v}");
    }
}
