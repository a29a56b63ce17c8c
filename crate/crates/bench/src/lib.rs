//! Shared inputs for the stage benchmarks in `benches/`.

use gsyeig_core::{eigen_pair_with_spectrum, DenseSymmetric, SpectrumRecipe};

/// Benchmark sizes: small enough for a quick criterion run.
pub const SIZES: [usize; 3] = [64, 128, 256];

/// Eigenpair count used for the subset stages.
pub const S: usize = 8;

/// Graded-spectrum pencil with cond(B) = 1e4.
pub fn bench_pencil(n: usize) -> (DenseSymmetric, DenseSymmetric) {
    let spectrum = SpectrumRecipe::Graded.generate(n, 1.0, 10.0);
    eigen_pair_with_spectrum(n, &spectrum, 1e4, n as u64).expect("valid synthetic pencil")
}
