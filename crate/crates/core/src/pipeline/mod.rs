//! End-to-end drivers for the four variants, the flop-cost model, accuracy
//! metrics, and a planted-spectrum pencil generator.

mod cost;
mod solve;
mod synth;

pub use cost::{cost_model, gs2_symmetric, gs2_two_solve, CostParams, CostReport};
pub use solve::{
    accuracy_metrics, solve_gsyeig, Accuracy, EigenResult, SolveDiagnostics, SolverConfig,
};
pub use synth::{eigen_pair_with_spectrum, linear_spectrum, random_orthogonal, SpectrumRecipe};
