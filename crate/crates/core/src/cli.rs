//! The `rotodo` command line: `analyze`, `table`, `simulate` and `batch`.
//!
//! Exit codes: `analyze` returns 0 on success, 2 when the report is
//! inconclusive with certification errors and 1 on parse errors; `table`
//! returns 1 when any field fails; `simulate` returns 1 on I/O errors.

use crate::criteria::{
    classify, classify_odometer, render_csv_header, render_csv_row, render_json, render_markdown,
    ClassificationReport, ClassifyConfig,
};
use crate::error::{Error, Result};
use crate::golden::{compare, registry, FieldCheck};
use crate::maps::rational::{parse_pq, to_pq};
use crate::maps::{Permutation, RotatedOdometer};
use crate::sim::{
    self, default_depth, diffusion_from_trace, drift_from_trace, empirical_discrepancy,
    essential_value_scan, pooled_slope, random_starts, run_orbit, ScanCell,
};
use crate::spectral::roots::MAX_PRECISION;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

/// Environment variable supplying the default working precision.
pub const PRECISION_ENV: &str = "ROTODO_PRECISION_BITS";

#[derive(Parser, Debug)]
#[command(name = "rotodo", version, about = "Rotated odometers: renormalization, spectral criteria and exact simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify one system and render its report.
    Analyze(AnalyzeArgs),
    /// Recompute the reference example tables and compare field by field.
    Table(TableArgs),
    /// Run exact orbits and export traces, curves and summaries.
    Simulate(SimulateArgs),
    /// Classify every permutation of `q` symbols.
    Batch(BatchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Diffusion,
    Discrepancy,
    EssentialScan,
    Recurrence,
}

#[derive(Args, Debug, Clone)]
pub struct PrecisionArgs {
    /// Starting precision (bits) of certified numerics.
    #[arg(long, env = PRECISION_ENV, default_value_t = 256)]
    pub precision_bits: u32,
    /// Accept q a power of 2.
    #[arg(long)]
    pub allow_pow2: bool,
}

impl PrecisionArgs {
    fn config(&self, depth: Option<usize>) -> ClassifyConfig {
        ClassifyConfig {
            precision_bits: self.precision_bits.max(64),
            max_precision_bits: MAX_PRECISION.max(self.precision_bits),
            max_depth: depth,
            allow_pow2: self.allow_pow2,
        }
    }
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub q: usize,
    /// Cycle notation "(012)" / "(0,6,5)(1,4)" or one-line images "1 2 0".
    #[arg(long)]
    pub perm: String,
    /// Renormalization depth bound (default q!).
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub precision: PrecisionArgs,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Example id (e.g. 5.10) or `all`.
    #[arg(default_value = "all")]
    pub id: String,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub precision: PrecisionArgs,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub perm: String,
    #[arg(long, value_enum, default_value_t = Mode::Diffusion)]
    pub mode: Mode,
    /// Orbit length (R_max for discrepancy).
    #[arg(long, default_value_t = 100_000)]
    pub steps: usize,
    /// Discrepancy grid level k (kN ≤ 20) or scan level; defaults per mode.
    #[arg(long)]
    pub depth: Option<u32>,
    /// Seed of the random starting points.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Exact starting point "p/q"; overrides random sampling.
    #[arg(long)]
    pub x0: Option<String>,
    /// Number of random starting points.
    #[arg(long, default_value_t = 1)]
    pub starts: usize,
    /// Keep every n-th step in exported traces.
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    /// Directory receiving CSV/JSON artifacts.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub precision: PrecisionArgs,
}

#[derive(Args, Debug)]
pub struct BatchArgs {
    #[arg(long)]
    pub q: usize,
    /// Keep rows whose column equals the value, e.g. `covering=false`, `d=2`.
    #[arg(long)]
    pub filter: Vec<String>,
    /// Largest q enumerated without complaint.
    #[arg(long, default_value_t = 7)]
    pub max_q: usize,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub precision: PrecisionArgs,
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                1
            } else {
                0
            }
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Analyze(a) => cmd_analyze(&a),
        Command::Table(a) => cmd_table(&a),
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Batch(a) => cmd_batch(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error [{}]: {e}", e.code());
            1
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p)?);
            f.write_all(text.as_bytes())?;
            f.flush()?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

fn render_report(r: &ClassificationReport, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => render_json(r) + "\n",
        Format::Md => render_markdown(r),
        Format::Csv => csv_text(&render_csv_header(), &[render_csv_row(r)])?,
    })
}

pub fn cmd_analyze(a: &AnalyzeArgs) -> Result<i32> {
    let report = classify(a.q, &a.perm, &a.precision.config(a.depth))?;
    emit(a.out.as_deref(), &render_report(&report, a.format)?)?;
    Ok(if report.inconclusive_with_errors() { 2 } else { 0 })
}

/// All field checks for one example id or `all`, plus the registry self-test.
pub fn table_checks(id: &str, config: &ClassifyConfig) -> Result<Vec<FieldCheck>> {
    let reg = registry();
    let chosen: Vec<_> = reg.iter().filter(|g| id == "all" || g.id == id).collect();
    if chosen.is_empty() {
        let ids: Vec<&str> = reg.iter().map(|g| g.id).collect();
        return Err(Error::Parse(format!("unknown example {id:?}; known: {}", ids.join(", "))));
    }
    let mut checks = Vec::new();
    for g in chosen {
        checks.push(FieldCheck {
            example: g.id.into(),
            field: "registry".into(),
            pass: g.first_column_positive(),
            expected: "first column > 0".into(),
            actual: if g.first_column_positive() { "first column > 0" } else { "zero entry" }.into(),
            note: None,
        });
        match classify(g.q, g.perm, config) {
            Ok(r) => checks.extend(compare(g, &r)),
            Err(e) => checks.push(FieldCheck {
                example: g.id.into(),
                field: "classify".into(),
                pass: false,
                expected: "report".into(),
                actual: e.to_string(),
                note: None,
            }),
        }
    }
    Ok(checks)
}

pub fn cmd_table(a: &TableArgs) -> Result<i32> {
    let checks = table_checks(&a.id, &a.precision.config(None))?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&checks).map_err(|e| Error::Io(e.to_string()))? + "\n",
        Format::Csv => {
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|c| {
                    vec![
                        c.example.clone(),
                        c.field.clone(),
                        if c.pass { "PASS" } else { "FAIL" }.into(),
                        c.expected.clone(),
                        c.actual.clone(),
                        c.note.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            csv_text(&["example", "field", "result", "expected", "actual", "note"], &rows)?
        }
        Format::Md => {
            let mut s: String = checks.iter().map(|c| format!("{c}\n")).collect();
            s += &format!("{} of {} fields PASS\n", checks.len() - failed, checks.len());
            s
        }
    };
    emit(a.out.as_deref(), &text)?;
    Ok(i32::from(failed > 0))
}

fn starting_points(a: &SimulateArgs, q: usize) -> Result<Vec<crate::Rational>> {
    match &a.x0 {
        Some(s) => Ok(vec![parse_pq(s)?]),
        None => Ok(random_starts(q, a.seed, a.starts.max(1))),
    }
}

fn write_artifact(dir: Option<&Path>, name: &str, f: impl FnOnce(File) -> Result<()>) -> Result<()> {
    if let Some(dir) = dir {
        f(File::create(dir.join(name))?)?;
    }
    Ok(())
}

fn render_summary(v: &Value, format: Format) -> Result<String> {
    let flat: Vec<(String, String)> = match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| (k.clone(), v.as_str().map_or_else(|| v.to_string(), str::to_string)))
            .collect(),
        _ => vec![("value".into(), v.to_string())],
    };
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))? + "\n",
        Format::Csv => {
            let rows: Vec<Vec<String>> = flat.into_iter().map(|(k, v)| vec![k, v]).collect();
            csv_text(&["key", "value"], &rows)?
        }
        Format::Md => {
            let mut s = String::from("| key | value |\n|---|---|\n");
            for (k, v) in flat {
                s += &format!("| {k} | {v} |\n");
            }
            s
        }
    })
}

/// Run one simulation mode; returns the summary and writes artifacts to `dir`.
pub fn simulate(a: &SimulateArgs, dir: Option<&Path>) -> Result<Value> {
    let pi = Permutation::parse(a.q, &a.perm, a.precision.allow_pow2)?;
    let f = RotatedOdometer::new(pi);
    let starts = starting_points(a, a.q)?;
    let report = classify_odometer(&f, &a.precision.config(None)).ok();
    let mut summary = json!({
        "q": a.q,
        "pi": f.pi().to_cycle_string(),
        "mode": a.mode.to_possible_value().map(|v| v.get_name().to_string()),
        "steps": a.steps,
        "seed": a.seed,
        "starts": starts.iter().map(to_pq).collect::<Vec<_>>(),
        "tolerance_note": "slope windows and oscillation bounds are reporting conventions; the theorems are asymptotic",
    });
    let obj = summary.as_object_mut().expect("object");
    match a.mode {
        Mode::Diffusion => {
            let mut slopes = Vec::new();
            let mut series = Vec::new();
            for (i, x0) in starts.iter().enumerate() {
                let trace = run_orbit(&f, x0, a.steps)?;
                let est = diffusion_from_trace(&trace)
                    .with_ceiling(report.as_ref().and_then(|r| r.gamma0.value));
                write_artifact(dir, &format!("trace_{i}.csv"), |w| sim::export::write_trace_csv(&trace, w, a.stride))?;
                write_artifact(dir, &format!("diffusion_{i}.csv"), |w| sim::export::write_diffusion_csv(&est, w))?;
                write_artifact(dir, &format!("diffusion_{i}.json"), |mut w| {
                    Ok(w.write_all(sim::export::to_json(&est)?.as_bytes())?)
                })?;
                slopes.push(est.slope);
                series.push(est.series());
            }
            let (pooled, width) = pooled_slope(&series)?;
            obj.insert("slopes".into(), json!(slopes));
            obj.insert("pooled_slope".into(), json!(pooled));
            obj.insert("pooled_halfwidth".into(), json!(width));
            obj.insert("ceiling_gamma0".into(), json!(report.as_ref().and_then(|r| r.gamma0.value)));
        }
        Mode::Discrepancy => {
            let depth = a.depth.unwrap_or_else(|| default_depth(&f));
            let mut slopes = Vec::new();
            let mut series = Vec::new();
            for (i, x0) in starts.iter().enumerate() {
                let curve = empirical_discrepancy(&f, x0, a.steps, depth)?;
                write_artifact(dir, &format!("discrepancy_{i}.csv"), |w| sim::export::write_discrepancy_csv(&curve, w))?;
                write_artifact(dir, &format!("discrepancy_{i}.json"), |mut w| {
                    Ok(w.write_all(sim::export::to_json(&curve)?.as_bytes())?)
                })?;
                obj.insert("resolution".into(), json!(curve.resolution));
                slopes.push(curve.slope);
                series.push(curve.series());
            }
            let (pooled, width) = pooled_slope(&series)?;
            obj.insert("slopes".into(), json!(slopes));
            obj.insert("pooled_slope".into(), json!(pooled));
            obj.insert("pooled_halfwidth".into(), json!(width));
            obj.insert(
                "theoretical_exponent".into(),
                json!(report.as_ref().and_then(|r| r.discrepancy_exponent)),
            );
        }
        Mode::EssentialScan => {
            let level = a.depth.unwrap_or(1);
            let mut hist = std::collections::BTreeMap::<i64, u64>::new();
            let mut returns = 0;
            let mut all = Vec::new();
            for (i, x0) in starts.iter().enumerate() {
                let mut scan = essential_value_scan(&f, x0, a.steps, ScanCell::section(level))?;
                scan.verdict = report.as_ref().map(|r| r.essential_values.to_string());
                write_artifact(dir, &format!("scan_{i}.csv"), |w| sim::export::write_histogram_csv(&scan, w))?;
                for (v, c) in &scan.histogram {
                    *hist.entry(*v).or_default() += c;
                }
                returns += scan.returns;
                all.push(scan);
            }
            let gcd = all.iter().fold(0u64, |g, s| num_integer::Integer::gcd(&g, &s.gcd));
            write_artifact(dir, "scan.json", |mut w| Ok(w.write_all(sim::export::to_json(&all)?.as_bytes())?))?;
            obj.insert("label".into(), json!(sim::SCAN_LABEL));
            obj.insert("section_level".into(), json!(level));
            obj.insert("returns".into(), json!(returns));
            obj.insert("observed_gcd".into(), json!(gcd));
            obj.insert("support_size".into(), json!(hist.len()));
            obj.insert(
                "support_min_max".into(),
                json!([hist.keys().next().copied(), hist.keys().next_back().copied()]),
            );
            obj.insert("symbolic_verdict".into(), json!(report.as_ref().map(|r| r.essential_values.to_string())));
            obj.insert("symbolic_gcd_d".into(), json!(report.as_ref().map(|r| r.gcd_d)));
        }
        Mode::Recurrence => {
            let mut rows = Vec::new();
            for (i, x0) in starts.iter().enumerate() {
                let trace = run_orbit(&f, x0, a.steps)?;
                let drift = drift_from_trace(&trace);
                write_artifact(dir, &format!("trace_{i}.csv"), |w| sim::export::write_trace_csv(&trace, w, a.stride))?;
                write_artifact(dir, &format!("drift_{i}.csv"), |w| sim::export::write_drift_csv(&drift, w))?;
                rows.push(json!({
                    "zeros": trace.zero_returns.len(),
                    "zeros_first_half": trace.zeros_up_to(a.steps / 2),
                    "final_displacement": trace.final_displacement(),
                    "drift": drift.limit,
                    "last_decade_oscillation": drift.last_decade_oscillation,
                }));
            }
            obj.insert("runs".into(), json!(rows));
            obj.insert(
                "symbolic_minimal_recurrence".into(),
                json!(report.as_ref().map(|r| r.minimal_recurrence)),
            );
            obj.insert("symbolic_drift".into(), json!(report.as_ref().and_then(|r| r.minimal_drift)));
        }
    }
    if let Some(dir) = dir {
        let mut f = File::create(dir.join("summary.json"))?;
        f.write_all(serde_json::to_string_pretty(&summary).map_err(|e| Error::Io(e.to_string()))?.as_bytes())?;
    }
    Ok(summary)
}

pub fn cmd_simulate(a: &SimulateArgs) -> Result<i32> {
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir)?;
    }
    let summary = simulate(a, a.out.as_deref())?;
    emit(None, &render_summary(&summary, a.format)?)?;
    Ok(0)
}

/// All permutations of `0..q` in lexicographic order of one-line images.
pub fn all_permutations(q: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..q).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..q).rev().find(|&i| p[i - 1] < p[i]) else { return out };
        let j = (i..q).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// `key=value` filters on CSV columns; `d` abbreviates `gcd_d`, `measures` abbreviates `ergodic_measures`.
fn parse_filters(filters: &[String]) -> Result<Vec<(usize, String)>> {
    let header = render_csv_header();
    filters
        .iter()
        .map(|f| {
            let (k, v) = f
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("filter {f:?} is not key=value")))?;
            let key = match k.trim() {
                "d" => "gcd_d",
                "measures" => "ergodic_measures",
                other => other,
            };
            let col = header
                .iter()
                .position(|h| *h == key)
                .ok_or_else(|| Error::Parse(format!("unknown filter key {k:?}")))?;
            Ok((col, v.trim().to_string()))
        })
        .collect()
}

pub struct BatchRow {
    pub cells: Vec<String>,
    pub report: Option<ClassificationReport>,
}

/// Classify all permutations of `q` in parallel and apply the filters.
pub fn batch_rows(a: &BatchArgs) -> Result<Vec<BatchRow>> {
    if a.q > a.max_q {
        return Err(Error::InvalidArgument(format!(
            "q = {} exceeds the enumeration bound {} (raise --max-q)",
            a.q, a.max_q
        )));
    }
    if crate::maps::perm::is_power_of_two(a.q) && !a.precision.allow_pow2 {
        return Err(Error::PowerOfTwo(a.q));
    }
    let filters = parse_filters(&a.filter)?;
    let config = a.precision.config(a.depth);
    let width = render_csv_header().len();
    let rows: Vec<BatchRow> = all_permutations(a.q)
        .into_par_iter()
        .map(|images| {
            let pi = Permutation::with_pow2(images, true).expect("valid permutation");
            match classify_odometer(&RotatedOdometer::new(pi.clone()), &config) {
                Ok(r) => {
                    let mut cells = render_csv_row(&r);
                    cells.push("ok".into());
                    BatchRow { cells, report: Some(r) }
                }
                Err(e) => {
                    let mut cells = vec![String::new(); width];
                    cells[0] = a.q.to_string();
                    cells[1] = pi.to_cycle_string();
                    cells.push(e.code().into());
                    BatchRow { cells, report: None }
                }
            }
        })
        .collect();
    Ok(rows
        .into_iter()
        .filter(|r| filters.iter().all(|(c, v)| &r.cells[*c] == v))
        .collect())
}

pub fn cmd_batch(a: &BatchArgs) -> Result<i32> {
    let rows = batch_rows(a)?;
    let mut header = render_csv_header();
    header.push("status");
    let text = match a.format {
        Format::Csv => csv_text(&header, &rows.iter().map(|r| r.cells.clone()).collect::<Vec<_>>())?,
        Format::Json => {
            let reports: Vec<&ClassificationReport> = rows.iter().filter_map(|r| r.report.as_ref()).collect();
            serde_json::to_string_pretty(&reports).map_err(|e| Error::Io(e.to_string()))? + "\n"
        }
        Format::Md => {
            let mut s = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
            for r in &rows {
                s += &format!("| {} |\n", r.cells.join(" | "));
            }
            s
        }
    };
    emit(a.out.as_deref(), &text)?;
    Ok(0)
}
