use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use gsyeig_benches::{bench_pencil, S, SIZES};
use gsyeig_core::stdform::{cholesky, reduce_to_standard};
use gsyeig_core::tridiag::{band_to_tridiagonal, householder_tridiagonalize, reduce_to_band};
use gsyeig_core::{solve_gsyeig, SolverConfig, Variant};

fn standard_form(c: &mut Criterion) {
    let mut g = c.benchmark_group("standard_form");
    for n in SIZES {
        let (a, b) = bench_pencil(n);
        g.throughput(Throughput::Elements(n as u64));
        g.bench_with_input(BenchmarkId::new("cholesky", n), &b, |bch, b| {
            bch.iter(|| cholesky(b).unwrap())
        });
        let f = cholesky(&b).unwrap();
        g.bench_with_input(BenchmarkId::new("reduce", n), &a, |bch, a| {
            bch.iter(|| reduce_to_standard(a, &f).unwrap())
        });
    }
    g.finish();
}

fn tridiagonalization(c: &mut Criterion) {
    let mut g = c.benchmark_group("tridiagonalization");
    g.sample_size(20);
    for n in SIZES {
        let (a, b) = bench_pencil(n);
        let cmat = reduce_to_standard(&a, &cholesky(&b).unwrap()).unwrap();
        g.bench_with_input(BenchmarkId::new("householder", n), &cmat, |bch, c| {
            bch.iter(|| householder_tridiagonalize(c).unwrap())
        });
        let w = 16.min(n - 1);
        g.bench_with_input(BenchmarkId::new("two_stage", n), &cmat, |bch, c| {
            bch.iter(|| band_to_tridiagonal(&reduce_to_band(c, w).unwrap()).unwrap())
        });
    }
    g.finish();
}

fn end_to_end(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve");
    g.sample_size(10);
    for n in SIZES {
        let (a, b) = bench_pencil(n);
        for v in Variant::ALL {
            let cfg = SolverConfig::new(v, S).bandwidth(16.min(n - 1));
            g.bench_with_input(BenchmarkId::new(v.as_str(), n), &cfg, |bch, cfg| {
                bch.iter(|| solve_gsyeig(&a, &b, cfg).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, standard_form, tridiagonalization, end_to_end);
criterion_main!(benches);
