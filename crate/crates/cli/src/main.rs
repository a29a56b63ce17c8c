use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gsyeig_cli::mtx::{load_matrix_market_pair, save_matrix_market, write_dense_array, MtxFormat};
use gsyeig_cli::{
    emit_report, run_bench, BenchSpec, InputSource, ReportFormat, SpecError, SyntheticSpec,
};
use gsyeig_core::lanczos::DEFAULT_MAX_RESTARTS;
use gsyeig_core::tridiag::DEFAULT_SEMIBANDWIDTH;
use gsyeig_core::{
    accuracy_metrics, cost_model, solve_gsyeig, CostParams, SolverConfig, SpectrumRecipe, StageKey,
    Variant, Which,
};

const EXIT_ROW_FAILURE: u8 = 1;
const EXIT_SPEC_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "gsyeig-bench",
    version,
    about = "Generalized symmetric-definite eigensolver benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time every stage of the selected variants over a sweep of s.
    Run(RunArgs),
    /// Solve one pencil read from Matrix Market files.
    Solve(SolveArgs),
    /// Evaluate the flop-cost model.
    Cost(CostArgs),
    /// Write a synthetic planted-spectrum pencil as Matrix Market files.
    Generate(GenerateArgs),
}

/// Subspace size: `auto` or an integer.
#[derive(Clone, Copy, Debug)]
struct SubspaceSize(Option<usize>);

fn parse_subspace(s: &str) -> Result<SubspaceSize, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(SubspaceSize(None));
    }
    s.parse::<usize>()
        .map(|m| SubspaceSize(Some(m)))
        .map_err(|_| format!("expected 'auto' or a positive integer, got '{s}'"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum WhichArg {
    Smallest,
    Largest,
}

impl From<WhichArg> for Which {
    fn from(w: WhichArg) -> Self {
        match w {
            WhichArg::Smallest => Which::Smallest,
            WhichArg::Largest => Which::Largest,
        }
    }
}

#[derive(Args, Clone)]
struct SolverArgs {
    /// Which end of the spectrum to compute.
    #[arg(long, value_enum, default_value = "smallest")]
    which: WhichArg,
    /// Solve B X = A X M instead and report eigenvalues as 1/M.
    #[arg(long)]
    invert: bool,
    /// Semibandwidth for variant tt.
    #[arg(long, default_value_t = DEFAULT_SEMIBANDWIDTH)]
    w: usize,
    /// Krylov subspace size for ke/ki.
    #[arg(long, default_value = "auto", value_parser = parse_subspace)]
    m: SubspaceSize,
    /// Relative convergence tolerance (0 means machine epsilon).
    #[arg(long, default_value_t = 0.0)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_RESTARTS)]
    max_restarts: usize,
    /// Seed for the synthetic pencil and the Lanczos start vector.
    #[arg(long, env = "GSYEIG_SEED", default_value_t = 42)]
    seed: u64,
}

impl SolverArgs {
    fn config(&self, variant: Variant, s: usize) -> SolverConfig {
        SolverConfig::new(variant, s)
            .which(self.which.into())
            .inverted(self.invert)
            .bandwidth(self.w)
            .subspace(self.m.0)
            .tol(self.tol)
            .seed(self.seed)
            .max_restarts(self.max_restarts)
    }
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated variants (td, tt, ke, ki) or 'all'.
    #[arg(long, default_value = "all", value_parser = parse_variants)]
    variant: VariantList,
    /// Dimension of the synthetic pencil.
    #[arg(long, default_value_t = 256)]
    n: usize,
    /// Comma-separated eigenpair counts.
    #[arg(long, value_delimiter = ',', default_value = "8")]
    s: Vec<usize>,
    /// Condition number of the synthetic B.
    #[arg(long, default_value_t = 1e4)]
    cond_b: f64,
    /// Shape of the planted spectrum.
    #[arg(long, default_value = "graded")]
    spectrum: SpectrumRecipe,
    /// Read A from this Matrix Market file instead of generating a pencil.
    #[arg(long, requires = "b")]
    a: Option<PathBuf>,
    #[arg(long, requires = "a")]
    b: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    /// Skip the untimed warmup solve.
    #[arg(long)]
    no_warmup: bool,
    #[arg(long, default_value = "csv")]
    format: ReportFormat,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long, default_value = "td")]
    variant: Variant,
    #[arg(long)]
    s: usize,
    /// Write the eigenvectors here as a dense Matrix Market array.
    #[arg(long)]
    vectors: Option<PathBuf>,
    /// Print the result as JSON.
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct CostArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: usize,
    /// Comma-separated variants or 'all'.
    #[arg(long, default_value = "all", value_parser = parse_variants)]
    variant: VariantList,
    #[arg(long, default_value = "auto", value_parser = parse_subspace)]
    m: SubspaceSize,
    #[arg(long, default_value_t = DEFAULT_SEMIBANDWIDTH)]
    w: usize,
    /// Operator applications (defaults to m, one Lanczos cycle).
    #[arg(long)]
    matvecs: Option<usize>,
    #[arg(long, default_value_t = 0)]
    restarts: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1e4)]
    cond_b: f64,
    #[arg(long, default_value = "graded")]
    spectrum: SpectrumRecipe,
    #[arg(long, default_value_t = 1.0)]
    lo: f64,
    #[arg(long, default_value_t = 10.0)]
    hi: f64,
    #[arg(long, env = "GSYEIG_SEED", default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Write coordinate instead of array format.
    #[arg(long)]
    coordinate: bool,
}

#[derive(Clone, Debug)]
struct VariantList(Vec<Variant>);

fn parse_variants(s: &str) -> Result<VariantList, String> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(VariantList(Variant::ALL.to_vec()));
    }
    let mut out = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let v: Variant = part.parse()?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    if out.is_empty() {
        return Err("no variants given".into());
    }
    Ok(VariantList(out))
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Distinguishes spec errors (exit 2) from row failures (exit 1).
enum Outcome {
    Success,
    RowFailure,
}

fn run(args: RunArgs) -> Result<Outcome> {
    let input = match (args.a, args.b) {
        (Some(a), Some(b)) => InputSource::MatrixMarket { a, b },
        _ => InputSource::Synthetic(SyntheticSpec {
            spectrum: args.spectrum,
            ..SyntheticSpec::new(args.n, args.cond_b, args.solver.seed)
        }),
    };
    let mut spec = BenchSpec::new(input, args.variant.0, args.s);
    spec.reps = args.reps;
    spec.warmup = !args.no_warmup;
    spec.solver = args.solver.config(Variant::Td, 1);
    let report = run_bench(&spec)?;
    let mut out = output(args.out.as_ref())?;
    emit_report(&report, args.format, &mut out).context("writing report")?;
    out.flush()?;
    let failed = report.rows().filter(|r| !r.3.status.is_ok()).count();
    if let Some(p) = &args.out {
        eprintln!("wrote {} rows to {}", report.rows().count(), p.display());
    }
    if failed > 0 {
        eprintln!("{failed} row(s) failed");
        return Ok(Outcome::RowFailure);
    }
    Ok(Outcome::Success)
}

fn solve(args: SolveArgs) -> Result<Outcome> {
    let (a, b) = load_matrix_market_pair(&args.a, &args.b).map_err(SpecError::from)?;
    let cfg = args.solver.config(args.variant, args.s);
    let result = match solve_gsyeig(&a, &b, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("solve failed: {e}");
            return Ok(Outcome::RowFailure);
        }
    };
    let acc = accuracy_metrics(&a, &b, &result)?;
    if let Some(p) = &args.vectors {
        let mut w = BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        );
        write_dense_array(&mut w, &result.x)?;
        w.flush()?;
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if args.json {
        let doc = serde_json::json!({
            "variant": result.variant,
            "eigenvalues": result.eigenvalues,
            "accuracy": acc,
            "diagnostics": result.diagnostics,
            "stages": result
                .stage_timings
                .iter()
                .map(|(k, secs)| (k.as_str().to_string(), serde_json::json!({"seconds": secs, "flops": result.stage_flops[&k]})))
                .collect::<serde_json::Map<_, _>>(),
        });
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out)?;
    } else {
        writeln!(out, "variant {} n {} s {}", result.variant, a.n(), args.s)?;
        for (i, lam) in result.eigenvalues.iter().enumerate() {
            writeln!(out, "lambda[{i}] = {lam:.17e}")?;
        }
        writeln!(out, "orth  = {:.3e}", acc.orth)?;
        writeln!(out, "resid = {:.3e}", acc.resid)?;
        let d = &result.diagnostics;
        if args.variant.is_krylov() {
            writeln!(
                out,
                "matvecs {} restarts {} m {}",
                d.matvecs,
                d.restarts,
                d.m.unwrap_or(0)
            )?;
        }
        for (k, secs) in result.stage_timings.iter() {
            writeln!(
                out,
                "{:<4} {secs:>12.6} s {:>14.4e} flops",
                k.as_str(),
                result.stage_flops[&k]
            )?;
        }
    }
    Ok(Outcome::Success)
}

fn cost(args: CostArgs) -> Result<Outcome> {
    if args.n == 0 || args.s == 0 || args.s > args.n {
        return Err(SpecError::Invalid(format!(
            "need 1 <= s <= n, got s = {} n = {}",
            args.s, args.n
        ))
        .into());
    }
    let mut params = CostParams::new(args.n, args.s);
    if let Some(m) = args.m.0 {
        params.m = m;
    }
    params.w = args.w;
    params.matvecs = args.matvecs.unwrap_or(params.m);
    params.restarts = args.restarts;
    let reports: Vec<_> = args
        .variant
        .0
        .iter()
        .map(|v| cost_model(&params, *v))
        .collect();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if args.json {
        serde_json::to_writer_pretty(&mut out, &reports)?;
        writeln!(out)?;
        return Ok(Outcome::Success);
    }
    writeln!(
        out,
        "n {} s {} m {} w {} matvecs {} restarts {}",
        params.n, params.s, params.m, params.w, params.matvecs, params.restarts
    )?;
    for r in &reports {
        writeln!(out, "{}", r.variant)?;
        for (k, flops) in &r.stages {
            writeln!(out, "  {:<4} {flops:>14.6e}", k.as_str())?;
        }
        writeln!(out, "  total {:>13.6e}", r.total())?;
        if r.variant == Variant::Tt {
            writeln!(
                out,
                "  back-transform bucket {:.6e}",
                r.tt_back_transform_bucket()
            )?;
        }
        if let Some(apply) = r.apply_flops() {
            writeln!(out, "  per apply {apply:.6e}")?;
        }
        debug_assert!(r.stages.keys().all(|k| StageKey::ALL.contains(k)));
    }
    Ok(Outcome::Success)
}

fn generate(args: GenerateArgs) -> Result<Outcome> {
    let syn = SyntheticSpec {
        n: args.n,
        spectrum: args.spectrum,
        lo: args.lo,
        hi: args.hi,
        cond_b: args.cond_b,
        seed: args.seed,
    };
    if args.n == 0 {
        return Err(SpecError::Invalid("n must be positive".into()).into());
    }
    let (a, b) = syn.generate().map_err(SpecError::from)?;
    let fmt = if args.coordinate {
        MtxFormat::Coordinate
    } else {
        MtxFormat::Array
    };
    save_matrix_market(&args.a, &a, fmt)?;
    save_matrix_market(&args.b, &b, fmt)?;
    Ok(Outcome::Success)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(a) => run(a),
        Command::Solve(a) => solve(a),
        Command::Cost(a) => cost(a),
        Command::Generate(a) => generate(a),
    };
    match outcome {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::RowFailure) => ExitCode::from(EXIT_ROW_FAILURE),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_SPEC_ERROR)
        }
    }
}
