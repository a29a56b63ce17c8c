//! CSV and JSON serialization of benchmark reports.

use std::io::{self, Write};
use std::str::FromStr;

use serde::Serialize;

use crate::harness::BenchReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

/// One CSV line: a single stage of a single run.
#[derive(Debug, Serialize)]
struct CsvLine<'a> {
    variant: &'a str,
    s: usize,
    rep: String,
    stage_key: &'a str,
    seconds: Option<f64>,
    flops: Option<f64>,
    status: String,
}

pub const CSV_HEADER: [&str; 7] = [
    "variant",
    "s",
    "rep",
    "stage_key",
    "seconds",
    "flops",
    "status",
];

/// One line per (variant, s, rep, stage). A failed run gets a single line
/// with empty stage columns.
pub fn write_csv(report: &BenchReport, w: impl Write) -> io::Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    out.write_record(CSV_HEADER)?;
    for (variant, s, rep, run) in report.rows() {
        let status = run.status.label();
        if run.stages.is_empty() {
            out.serialize(CsvLine {
                variant: variant.as_str(),
                s,
                rep: rep.to_string(),
                stage_key: "",
                seconds: None,
                flops: None,
                status,
            })?;
            continue;
        }
        for (key, st) in &run.stages {
            out.serialize(CsvLine {
                variant: variant.as_str(),
                s,
                rep: rep.to_string(),
                stage_key: key.as_str(),
                seconds: Some(st.seconds),
                flops: Some(st.flops),
                status: status.clone(),
            })?;
        }
    }
    out.flush()
}

/// Nested `variant → s → runs` document, pretty-printed.
pub fn write_json(report: &BenchReport, mut w: impl Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, report)?;
    writeln!(w)
}

pub fn read_json(r: impl io::Read) -> serde_json::Result<BenchReport> {
    serde_json::from_reader(r)
}

pub fn emit_report(report: &BenchReport, format: ReportFormat, w: impl Write) -> io::Result<()> {
    match format {
        ReportFormat::Csv => write_csv(report, w),
        ReportFormat::Json => write_json(report, w),
    }
}
