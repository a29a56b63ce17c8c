//! Benchmark specification and runner.

use std::collections::BTreeMap;
use std::path::PathBuf;

use gsyeig_core::{
    accuracy_metrics, eigen_pair_with_spectrum, solve_gsyeig, Accuracy, DenseSymmetric,
    SolveDiagnostics, SolverConfig, SpectrumRecipe, StageKey, Variant,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mtx::{load_matrix_market_pair, MtxError};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("invalid benchmark spec: {0}")]
    Invalid(String),
    #[error(transparent)]
    Input(#[from] MtxError),
    #[error("synthetic input: {0}")]
    Synthetic(#[from] gsyeig_core::Error),
}

/// Planted-spectrum pencil description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub n: usize,
    pub spectrum: SpectrumRecipe,
    pub lo: f64,
    pub hi: f64,
    pub cond_b: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn new(n: usize, cond_b: f64, seed: u64) -> Self {
        Self {
            n,
            spectrum: SpectrumRecipe::default(),
            lo: 1.0,
            hi: 10.0,
            cond_b,
            seed,
        }
    }

    pub fn generate(&self) -> Result<(DenseSymmetric, DenseSymmetric), gsyeig_core::Error> {
        let planted = self.spectrum.generate(self.n, self.lo, self.hi);
        eigen_pair_with_spectrum(self.n, &planted, self.cond_b, self.seed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputSource {
    MatrixMarket { a: PathBuf, b: PathBuf },
    Synthetic(SyntheticSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSpec {
    pub input: InputSource,
    pub variants: Vec<Variant>,
    pub s_values: Vec<usize>,
    pub reps: usize,
    /// Untimed solve before the measured ones for each (variant, s).
    pub warmup: bool,
    /// Solver settings; `variant` and `s` are overridden per row.
    pub solver: SolverConfig,
}

impl BenchSpec {
    pub fn new(input: InputSource, variants: Vec<Variant>, s_values: Vec<usize>) -> Self {
        Self {
            input,
            variants,
            s_values,
            reps: 3,
            warmup: true,
            solver: SolverConfig::new(Variant::Td, 1),
        }
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if self.variants.is_empty() {
            return Err(SpecError::Invalid(
                "at least one variant is required".into(),
            ));
        }
        if self.s_values.is_empty() {
            return Err(SpecError::Invalid(
                "at least one s value is required".into(),
            ));
        }
        if self.reps == 0 {
            return Err(SpecError::Invalid("repetitions must be at least 1".into()));
        }
        if self.s_values.contains(&0) {
            return Err(SpecError::Invalid("s values must be positive".into()));
        }
        if let InputSource::Synthetic(syn) = &self.input {
            if syn.n == 0 {
                return Err(SpecError::Invalid("n must be positive".into()));
            }
            if let Some(s) = self.s_values.iter().find(|s| **s > syn.n) {
                return Err(SpecError::Invalid(format!("s = {s} exceeds n = {}", syn.n)));
            }
        }
        Ok(())
    }
}

/// Host and build facts recorded with every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Environment {
    pub precision: String,
    pub cores: usize,
    pub version: String,
    pub os: String,
    pub arch: String,
}

impl Environment {
    pub fn capture() -> Self {
        Self {
            precision: "f64".into(),
            cores: std::thread::available_parallelism().map_or(1, |n| n.get()),
            version: env!("CARGO_PKG_VERSION").into(),
            os: std::env::consts::OS.into(),
            arch: std::env::consts::ARCH.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub seconds: f64,
    pub flops: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "message", rename_all = "lowercase")]
pub enum RunStatus {
    Ok,
    Failed(String),
}

impl RunStatus {
    pub fn is_ok(&self) -> bool {
        matches!(self, RunStatus::Ok)
    }

    pub fn label(&self) -> String {
        match self {
            RunStatus::Ok => "ok".into(),
            RunStatus::Failed(msg) => format!("failed: {msg}"),
        }
    }
}

/// One timed solve, or the median over repetitions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub status: RunStatus,
    pub stages: BTreeMap<StageKey, StageRecord>,
    pub accuracy: Option<Accuracy>,
    pub diagnostics: Option<SolveDiagnostics>,
    pub eigenvalues: Vec<f64>,
}

impl RunRecord {
    fn failed(msg: String) -> Self {
        Self {
            status: RunStatus::Failed(msg),
            stages: BTreeMap::new(),
            accuracy: None,
            diagnostics: None,
            eigenvalues: Vec::new(),
        }
    }

    pub fn total_seconds(&self) -> f64 {
        self.stages.values().map(|s| s.seconds).sum()
    }

    pub fn total_flops(&self) -> f64 {
        self.stages.values().map(|s| s.flops).sum()
    }
}

/// All runs for one (variant, s).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub runs: Vec<RunRecord>,
    /// Per-stage median seconds; present when there is more than one run.
    pub median: Option<RunRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub environment: Environment,
    pub input: InputSource,
    pub n: usize,
    pub results: BTreeMap<Variant, BTreeMap<usize, SweepPoint>>,
}

/// Which repetition a flattened row comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepLabel {
    /// 1-based.
    Run(usize),
    Median,
}

impl std::fmt::Display for RepLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RepLabel::Run(i) => write!(f, "{i}"),
            RepLabel::Median => f.write_str("median"),
        }
    }
}

impl BenchReport {
    /// Rows in (variant, s, repetition) order, medians last within each point.
    pub fn rows(&self) -> impl Iterator<Item = (Variant, usize, RepLabel, &RunRecord)> + '_ {
        self.results.iter().flat_map(|(v, by_s)| {
            by_s.iter().flat_map(move |(s, point)| {
                point
                    .runs
                    .iter()
                    .enumerate()
                    .map(move |(i, r)| (*v, *s, RepLabel::Run(i + 1), r))
                    .chain(
                        point
                            .median
                            .iter()
                            .map(move |r| (*v, *s, RepLabel::Median, r)),
                    )
            })
        })
    }

    pub fn all_ok(&self) -> bool {
        self.rows().all(|(_, _, _, r)| r.status.is_ok())
    }

    /// Copy with every timing set to zero, for comparing deterministic columns.
    pub fn without_timings(&self) -> Self {
        let mut out = self.clone();
        for by_s in out.results.values_mut() {
            for point in by_s.values_mut() {
                for run in point.runs.iter_mut().chain(point.median.iter_mut()) {
                    run.stages.values_mut().for_each(|st| st.seconds = 0.0);
                }
            }
        }
        out.environment.cores = 0;
        out
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let k = values.len();
    if k % 2 == 1 {
        values[k / 2]
    } else {
        0.5 * (values[k / 2 - 1] + values[k / 2])
    }
}

fn median_record(runs: &[RunRecord]) -> RunRecord {
    if let Some(bad) = runs.iter().find(|r| !r.status.is_ok()) {
        return RunRecord::failed(match &bad.status {
            RunStatus::Failed(m) => m.clone(),
            RunStatus::Ok => unreachable!(),
        });
    }
    let first = &runs[0];
    let stages = first
        .stages
        .iter()
        .map(|(key, rec)| {
            let mut secs: Vec<f64> = runs.iter().map(|r| r.stages[key].seconds).collect();
            (
                *key,
                StageRecord {
                    seconds: median(&mut secs),
                    flops: rec.flops,
                },
            )
        })
        .collect();
    RunRecord {
        status: RunStatus::Ok,
        stages,
        accuracy: first.accuracy,
        diagnostics: first.diagnostics.clone(),
        eigenvalues: first.eigenvalues.clone(),
    }
}

fn run_once(a: &DenseSymmetric, b: &DenseSymmetric, cfg: &SolverConfig) -> RunRecord {
    let result = match solve_gsyeig(a, b, cfg) {
        Ok(r) => r,
        Err(e) => return RunRecord::failed(e.to_string()),
    };
    let accuracy = match accuracy_metrics(a, b, &result) {
        Ok(acc) => acc,
        Err(e) => return RunRecord::failed(e.to_string()),
    };
    let stages = result
        .stage_timings
        .iter()
        .map(|(key, seconds)| {
            (
                key,
                StageRecord {
                    seconds,
                    flops: result.stage_flops.get(&key).copied().unwrap_or(0.0),
                },
            )
        })
        .collect();
    RunRecord {
        status: RunStatus::Ok,
        stages,
        accuracy: Some(accuracy),
        diagnostics: Some(result.diagnostics),
        eigenvalues: result.eigenvalues,
    }
}

fn load_input(input: &InputSource) -> Result<(DenseSymmetric, DenseSymmetric), SpecError> {
    match input {
        InputSource::MatrixMarket { a, b } => Ok(load_matrix_market_pair(a, b)?),
        InputSource::Synthetic(syn) => Ok(syn.generate()?),
    }
}

/// Runs every (variant, s) point of `spec`, one solve at a time.
///
/// Input and spec problems abort with an error; solver failures are recorded
/// in the affected row.
pub fn run_bench(spec: &BenchSpec) -> Result<BenchReport, SpecError> {
    spec.validate()?;
    let (a, b) = load_input(&spec.input)?;
    run_bench_on(spec, &a, &b)
}

/// As [`run_bench`] on an already loaded pencil.
pub fn run_bench_on(
    spec: &BenchSpec,
    a: &DenseSymmetric,
    b: &DenseSymmetric,
) -> Result<BenchReport, SpecError> {
    spec.validate()?;
    let n = a.n();
    if b.n() != n {
        return Err(SpecError::Input(MtxError::ShapeMismatch { a: n, b: b.n() }));
    }
    if let Some(s) = spec.s_values.iter().find(|s| **s > n) {
        return Err(SpecError::Invalid(format!("s = {s} exceeds n = {n}")));
    }
    let mut results: BTreeMap<Variant, BTreeMap<usize, SweepPoint>> = BTreeMap::new();
    for &variant in &spec.variants {
        for &s in &spec.s_values {
            let cfg = SolverConfig {
                variant,
                s,
                ..spec.solver.clone()
            };
            if spec.warmup {
                let _ = solve_gsyeig(a, b, &cfg);
            }
            let runs: Vec<RunRecord> = (0..spec.reps).map(|_| run_once(a, b, &cfg)).collect();
            let median = (runs.len() > 1).then(|| median_record(&runs));
            results
                .entry(variant)
                .or_default()
                .insert(s, SweepPoint { runs, median });
        }
    }
    Ok(BenchReport {
        environment: Environment::capture(),
        input: spec.input.clone(),
        n,
        results,
    })
}
