mod output;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use hermitian_core::autgrp::{close_group, default_cap, parse_spec_labeled};
use hermitian_core::curve::{degree3_places, rational_places, DEFAULT_DEG3_BUDGET};
use hermitian_core::engine::{genus_of_quotient, Deg3Method, EngineOptions, GenusReport};
use hermitian_core::formulas::{run_case, Case, FormulaParams, Theorem, FAILED, TABLE_ROWS};
use hermitian_core::gf::{build_tower, FieldTower};
use hermitian_core::verify::{run_suites, Fault, VerifyOptions};
use hermitian_core::Error;

use output::{place_json, TableRecord};

#[derive(Parser)]
#[command(name = "hermitian", version, about = "Genera of quotients of the Hermitian function field")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the genus of one quotient.
    Genus(GenusArgs),
    /// Sweep named cases over q and m.
    Table(TableArgs),
    /// Run the property suites.
    Verify(VerifyArgs),
    /// List places of the curve as JSON.
    Places(PlacesArgs),
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    e: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Deg3Arg {
    FixedPoints,
    Enumerate,
}

#[derive(Args)]
struct EngineArgs {
    /// How degree-3 places are found.
    #[arg(long, value_enum, default_value = "fixed-points")]
    deg3: Deg3Arg,
    /// Largest |F_{q^6}| enumerated.
    #[arg(long, default_value_t = DEFAULT_DEG3_BUDGET)]
    deg3_budget: u128,
    /// Initial precision of local expansions.
    #[arg(long)]
    horizon: Option<usize>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenusArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Generator list, e.g. "eps(a), omega".
    #[arg(long)]
    spec: Option<String>,
    /// Named case, e.g. t3 or T2.iv.
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    m: Option<u64>,
    #[command(flatten)]
    engine: EngineArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct TableArgs {
    /// Comma-separated q values.
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<u64>,
    /// Comma-separated cases; all table rows by default.
    #[arg(long, value_delimiter = ',')]
    case: Vec<String>,
    /// Comma-separated m values; every admissible m by default.
    #[arg(long)]
    m: Option<String>,
    /// Write 0 in the runtime column.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    engine: EngineArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 200)]
    random_groups: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, hide = true)]
    inject_fault: bool,
    #[command(flatten)]
    engine: EngineArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct PlacesArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=3))]
    degree: u32,
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_DEG3_BUDGET)]
    deg3_budget: u128,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Engine(Error),
    Property(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Constraint { .. }
            | Error::UnknownCase(_)
            | Error::InvalidParameter(_)
            | Error::Field(_)
            | Error::HorizonTooSmall(_) => Failure::Usage(e.to_string()),
            _ => Failure::Engine(e),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

impl FieldArgs {
    fn tower(&self) -> CliResult<FieldTower> {
        let (p, e) = match (self.q, self.p, self.e) {
            (Some(q), None, None) => {
                hermitian_core::gf::split_prime_power(q).ok_or_else(|| Failure::Usage(format!("{q} is not a prime power")))?
            }
            (q, Some(p), Some(e)) => {
                if q.is_some_and(|q| p.checked_pow(e) != Some(q)) {
                    return Err(Failure::Usage("--q does not equal p^e".into()));
                }
                (p, e)
            }
            _ => return Err(Failure::Usage("give --q, or --p with --e".into())),
        };
        Ok(build_tower(p, e).map_err(Error::from)?)
    }
}

impl EngineArgs {
    fn options(&self) -> CliResult<EngineOptions> {
        if let Some(j) = self.jobs {
            rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build_global()
                .map_err(|e| Failure::Usage(e.to_string()))?;
        }
        let method = match self.deg3 {
            Deg3Arg::FixedPoints => Deg3Method::FixedPoints,
            Deg3Arg::Enumerate => Deg3Method::Enumerate,
        };
        Ok(EngineOptions { method, deg3_budget: self.deg3_budget, horizon: self.horizon })
    }
}

fn sink(path: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn default_m(case: Case, q: u64) -> Option<u64> {
    match case.theorem() {
        Theorem::Ex43 | Theorem::Ex44 => case.theorem().modulus(q).ok(),
        _ => None,
    }
}

fn cmd_genus(a: GenusArgs) -> CliResult<()> {
    let t = a.field.tower()?;
    let opts = a.engine.options()?;
    let started = Instant::now();
    let report: GenusReport = match (&a.spec, &a.case) {
        (Some(spec), None) => {
            let gens = parse_spec_labeled(spec, &t)?;
            let labels: Vec<String> = gens.iter().map(|g| g.text.clone()).collect();
            let auts: Vec<_> = gens.into_iter().map(|g| g.aut).collect();
            let g = close_group(&t, &auts, default_cap(t.q()))?;
            genus_of_quotient(&t, &g, &labels, &opts)?
        }
        (None, Some(name)) => {
            let case: Case = name.parse()?;
            let m = a
                .m
                .or_else(|| default_m(case, t.q()))
                .ok_or_else(|| Failure::Usage(format!("--m is required for {case}")))?;
            run_case(&t, &FormulaParams::new(case, t.q(), m)?, &opts)?
        }
        _ => return Err(Failure::Usage("give exactly one of --spec and --case".into())),
    };
    let ms = started.elapsed().as_millis();
    let mut w = sink(&a.out.out)?;
    match a.out.format {
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?,
        Format::Text => output::write_report_text(&mut w, &report)?,
        Format::Csv => {
            let rec = TableRecord::from_report(&report, a.case.as_deref().unwrap_or(""), a.m, ms);
            output::write_csv(&mut w, &[rec])?;
        }
    }
    w.flush()?;
    match &report.formula {
        Some(f) if f.status == FAILED => Err(Failure::Property(format!(
            "{}: expected {}, computed {}",
            f.name,
            f.expected.as_deref().unwrap_or("?"),
            report.genus
        ))),
        _ => Ok(()),
    }
}

fn parse_m_list(s: &str) -> CliResult<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Failure::Usage(format!("invalid m {x:?}"))))
        .collect()
}

fn cmd_table(a: TableArgs) -> CliResult<()> {
    let opts = a.engine.options()?;
    let cases: Vec<Case> = if a.case.is_empty() {
        TABLE_ROWS.iter().map(|r| Case::Row(*r)).collect()
    } else {
        a.case.iter().map(|c| c.parse()).collect::<Result<_, _>>()?
    };
    let m_filter = a.m.as_deref().map(parse_m_list).transpose()?;
    let mut towers = Vec::new();
    for &q in &a.q {
        towers.push(FieldArgs { q: Some(q), p: None, e: None }.tower()?);
    }
    let mut jobs = Vec::new();
    for (ci, &case) in cases.iter().enumerate() {
        for (ti, t) in towers.iter().enumerate() {
            for m in case.valid_ms(t.q()) {
                if m_filter.as_ref().is_none_or(|ms| ms.contains(&m)) {
                    jobs.push((ci, ti, m));
                }
            }
        }
    }
    let records: Vec<TableRecord> = jobs
        .par_iter()
        .map(|&(ci, ti, m)| {
            let t = &towers[ti];
            let started = Instant::now();
            let params = FormulaParams::new(cases[ci], t.q(), m)?;
            let r = run_case(t, &params, &opts)?;
            let ms = if a.no_timing { 0 } else { started.elapsed().as_millis() };
            Ok(TableRecord::from_report(&r, &cases[ci].to_string(), Some(m), ms))
        })
        .collect::<Result<_, Error>>()?;
    let mut w = sink(&a.out.out)?;
    match a.out.format {
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&records).expect("serializable"))?,
        Format::Csv => output::write_csv(&mut w, &records)?,
        Format::Text => output::write_table_text(&mut w, &records)?,
    }
    w.flush()?;
    let failed: Vec<_> = records.iter().filter(|r| r.status == FAILED).collect();
    match failed.first() {
        Some(r) => Err(Failure::Property(format!(
            "{} row(s) FAILED, first {} q = {} m = {}: expected {}, computed {}",
            failed.len(),
            r.case,
            r.q,
            r.m,
            r.expected,
            r.computed
        ))),
        None => Ok(()),
    }
}

fn cmd_verify(a: VerifyArgs) -> CliResult<()> {
    let t = a.field.tower()?;
    let engine = a.engine.options()?;
    let defaults = VerifyOptions::default();
    let opts = VerifyOptions {
        random_groups: a.random_groups,
        seed: a.seed.unwrap_or(defaults.seed),
        fault: a.inject_fault.then_some(Fault::FlipMatrixEntry),
        engine,
        ..defaults
    };
    let report = run_suites(&t, &opts)?;
    let mut w = sink(&a.out.out)?;
    match a.out.format {
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?,
        _ => {
            for s in &report.suites {
                let mark = if s.ok() { "pass" } else { "FAIL" };
                writeln!(w, "{mark} {:<16} {}/{}", s.name, s.passed, s.total)?;
            }
        }
    }
    w.flush()?;
    match report.suites.iter().find(|s| !s.ok()) {
        Some(s) => Err(Failure::Property(format!("{}: {}", s.name, s.failure.as_deref().unwrap_or("")))),
        None => Ok(()),
    }
}

fn cmd_places(a: PlacesArgs) -> CliResult<()> {
    let t = a.field.tower()?;
    let places = if a.degree == 1 {
        rational_places(&t)
    } else if a.degree == 3 {
        degree3_places(&t, a.deg3_budget)?.places(&t)
    } else {
        return Err(Failure::Usage("--degree must be 1 or 3".into()));
    };
    let n = a.limit.unwrap_or(places.len()).min(places.len());
    let json: Vec<_> = places[..n].iter().map(|p| place_json(&t, p)).collect();
    let mut w = sink(&a.out)?;
    writeln!(w, "{}", serde_json::to_string_pretty(&json).expect("serializable"))?;
    w.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Genus(a) => cmd_genus(a),
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Places(a) => cmd_places(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
