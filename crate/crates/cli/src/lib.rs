//! Benchmark harness for the generalized eigensolvers: Matrix Market I/O,
//! synthetic inputs, per-stage timing sweeps and CSV/JSON reports.

pub mod harness;
pub mod mtx;
pub mod report;

pub use harness::{
    run_bench, run_bench_on, BenchReport, BenchSpec, Environment, InputSource, RepLabel, RunRecord,
    RunStatus, SpecError, StageRecord, SweepPoint, SyntheticSpec,
};
pub use mtx::{
    load_matrix_market, load_matrix_market_pair, save_matrix_market, write_matrix_market, MtxError,
    MtxFormat,
};
pub use report::{emit_report, read_json, write_csv, write_json, ReportFormat};
