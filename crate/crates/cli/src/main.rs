use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hardy_core::catalog::{entry, StateKind};
use hardy_core::engine::{hardy_score, lhv_minimum, mes_nogo_check, sample_outcomes, MeasurementScenario, SettingPair};
use hardy_core::optimizer::{maximize_hardy, scan_approx, OptimizerConfig, ScanCsvWriter, ScanRow};
use hardy_core::qudit::CoefficientMatrix;
use hardy_core::tolerance::{LHV_DEFAULT_CAP, SCAN_DEFAULT_CAP};
use hardy_core::HardyError;
use serde::Serialize;

mod render;

#[derive(Parser, Debug)]
#[command(
    name = "hardy",
    version,
    about = "Hardy paradox for two qudits: scores, optima, scans and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Score a state under the constraint-constructed measurements.
    Score(StateArgs),
    /// Maximize the score over upper-triangular real states.
    Optimize(OptimizeArgs),
    /// Score the approximate family over a range of dimensions.
    Scan(ScanArgs),
    /// Minimum of the Bell functional over deterministic local strategies.
    Lhv(LhvArgs),
    /// Draw outcome counts for one setting pair.
    Sample(SampleArgs),
    /// Export a catalog state in the JSON state format.
    Catalog(StateArgs),
    /// Check that maximally entangled states never show the paradox.
    Nogo(NogoArgs),
}

#[derive(Debug, Clone)]
enum StateSpec {
    Kind(StateKind),
    File(PathBuf),
}

fn parse_state(s: &str) -> Result<StateSpec, String> {
    if let Some(path) = s.strip_prefix("file:") {
        if path.is_empty() {
            return Err("file: needs a path".into());
        }
        return Ok(StateSpec::File(PathBuf::from(path)));
    }
    s.parse()
        .map(StateSpec::Kind)
        .map_err(|_| format!("expected optimal, approx, mes or file:<path>, got {s:?}"))
}

#[derive(Args, Debug)]
struct StateArgs {
    /// Local dimension; taken from the file for file:<path> states.
    #[arg(long)]
    d: Option<usize>,

    /// optimal | approx | mes | file:<path>
    #[arg(long, value_parser = parse_state, default_value = "optimal")]
    state: StateSpec,

    #[arg(long, default_value_t = SCAN_DEFAULT_CAP)]
    max_d_cap: usize,
}

#[derive(Args, Debug)]
struct OptimizeArgs {
    #[arg(long)]
    d: usize,

    #[arg(long)]
    seed: u64,

    #[arg(long, default_value_t = 4)]
    restarts: usize,

    /// Step tolerance of the local search.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,

    #[arg(long, default_value_t = 40_000)]
    max_iterations: usize,

    /// Search only states symmetric under anti-diagonal reflection.
    #[arg(long)]
    symmetric: bool,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, requires = "to", conflicts_with = "d")]
    from: Option<usize>,

    #[arg(long, requires = "from")]
    to: Option<usize>,

    /// Explicit comma-separated dimensions.
    #[arg(long, value_delimiter = ',', required_unless_present = "from")]
    d: Vec<usize>,

    #[arg(long, default_value_t = SCAN_DEFAULT_CAP)]
    max_d_cap: usize,
}

#[derive(Args, Debug)]
struct LhvArgs {
    #[arg(long)]
    d: usize,

    #[arg(long, default_value_t = LHV_DEFAULT_CAP)]
    max_d_cap: usize,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    state: StateArgs,

    #[arg(long)]
    seed: u64,

    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,

    /// 11 | 12 | 21 | 22
    #[arg(long, default_value = "22")]
    pair: SettingPair,
}

#[derive(Args, Debug)]
struct NogoArgs {
    #[arg(long)]
    d: usize,

    #[arg(long)]
    seed: u64,

    #[arg(long, default_value_t = 100)]
    trials: usize,
}

#[derive(Debug)]
enum CliError {
    Domain(HardyError),
    Io(String),
    /// A check ran to completion and did not hold.
    Check {
        kind: &'static str,
        message: String,
    },
}

impl From<HardyError> for CliError {
    fn from(e: HardyError) -> Self {
        CliError::Domain(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: ErrorBody<'a>,
}

impl CliError {
    fn report(&self) -> ErrorReport<'_> {
        let (kind, message) = match self {
            CliError::Domain(e) => (e.kind(), e.to_string()),
            CliError::Io(m) => ("io", m.clone()),
            CliError::Check { kind, message } => (*kind, message.clone()),
        };
        ErrorReport {
            error: ErrorBody { kind, message },
        }
    }
}

type Out = Box<dyn Write>;

fn open_output(path: &Option<PathBuf>) -> Result<Out, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(out: &mut Out, value: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn load_state(args: &StateArgs) -> Result<(CoefficientMatrix, Option<StateKind>), CliError> {
    match &args.state {
        StateSpec::Kind(kind) => {
            let d = args
                .d
                .ok_or_else(|| HardyError::InvalidArgument(format!("--d is required for --state {kind}")))?;
            if d > args.max_d_cap {
                return Err(HardyError::ResourceCap { d, cap: args.max_d_cap }.into());
            }
            Ok((entry(*kind, d)?.state, Some(*kind)))
        }
        StateSpec::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let h = CoefficientMatrix::from_json(&text)?;
            if let Some(d) = args.d {
                if d != h.d() {
                    return Err(HardyError::DimensionMismatch {
                        expected: d,
                        found: h.d(),
                    }
                    .into());
                }
            }
            if h.d() > args.max_d_cap {
                return Err(HardyError::ResourceCap {
                    d: h.d(),
                    cap: args.max_d_cap,
                }
                .into());
            }
            Ok((h, None))
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format = cli.format;
    match cli.command {
        Command::Score(args) => {
            let (h, _) = load_state(&args)?;
            let report = hardy_score(&h)?;
            let mut out = open_output(&cli.output)?;
            match format {
                Format::Json => write_json(&mut out, &report)?,
                Format::Csv => render::report_csv(&mut out, &report, None)?,
                Format::Human => render::report_human(&mut out, &report)?,
            }
            out.flush()?;
        }
        Command::Optimize(args) => {
            let config = OptimizerConfig {
                symmetric: args.symmetric,
                restarts: args.restarts,
                max_iterations: args.max_iterations,
                step_tolerance: args.tol,
                seed: args.seed,
                ..OptimizerConfig::new(args.d)
            };
            let outcome = maximize_hardy(&config)?;
            let mut out = open_output(&cli.output)?;
            match format {
                Format::Json => write_json(&mut out, &outcome)?,
                Format::Csv => render::report_csv(&mut out, &outcome.report, Some(&outcome))?,
                Format::Human => {
                    render::report_human(&mut out, &outcome.report)?;
                    writeln!(
                        out,
                        "converged     {}\nbest restart  {} of {}\nevaluations   {}",
                        outcome.converged, outcome.best_restart, outcome.restarts, outcome.evaluations
                    )?;
                }
            }
            out.flush()?;
        }
        Command::Scan(args) => {
            let ds: Vec<usize> = match (args.from, args.to) {
                (Some(a), Some(b)) => (a..=b).collect(),
                _ => args.d.clone(),
            };
            if ds.is_empty() {
                return Err(HardyError::InvalidArgument("empty dimension range".into()).into());
            }
            let mut out = open_output(&cli.output)?;
            let outcome = match format {
                Format::Csv => {
                    let mut writer = ScanCsvWriter::new(&mut out)?;
                    scan_approx(&ds, args.max_d_cap, |row| {
                        writer.write_row(row).map_err(io::Error::other)
                    })?
                }
                Format::Human => {
                    writeln!(
                        out,
                        "{:>8}  {:>12}  {:>12}  {:>10}",
                        "d", "p_app", "concurrence", "time_s"
                    )?;
                    scan_approx(&ds, args.max_d_cap, |row: &ScanRow| {
                        render::scan_row_human(&mut out, row)
                    })?
                }
                Format::Json => {
                    let outcome = scan_approx(&ds, args.max_d_cap, |_| Ok(()))?;
                    write_json(&mut out, &outcome)?;
                    outcome
                }
            };
            out.flush()?;
            if let Some(d) = outcome.monotonicity_break {
                return Err(CliError::Check {
                    kind: "monotonicity",
                    message: format!("p_app does not increase at d = {d}"),
                });
            }
        }
        Command::Lhv(args) => {
            let result = lhv_minimum(args.d, args.max_d_cap)?;
            let mut out = open_output(&cli.output)?;
            match format {
                Format::Json => write_json(&mut out, &result)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut out);
                    w.write_record(["d", "minimum", "strategies_checked", "minimizers"])?;
                    w.write_record([
                        result.d.to_string(),
                        format!("{:?}", result.minimum),
                        result.strategies_checked.to_string(),
                        result.minimizers.len().to_string(),
                    ])?;
                    w.flush()?;
                }
                Format::Human => writeln!(
                    out,
                    "d = {}: minimum {} over {} strategies ({} minimizers)",
                    result.d,
                    result.minimum,
                    result.strategies_checked,
                    result.minimizers.len()
                )?,
            }
            out.flush()?;
        }
        Command::Sample(args) => {
            let (h, _) = load_state(&args.state)?;
            let scenario = MeasurementScenario::constructed(&h)?;
            let counts = sample_outcomes(&h, &scenario, args.pair, args.samples, args.seed)?;
            let mut out = open_output(&cli.output)?;
            match format {
                Format::Json => write_json(&mut out, &counts)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut out);
                    w.write_record(["m", "n", "count"])?;
                    for (m, row) in counts.counts.iter().enumerate() {
                        for (n, c) in row.iter().enumerate() {
                            w.write_record([m.to_string(), n.to_string(), c.to_string()])?;
                        }
                    }
                    w.flush()?;
                }
                Format::Human => render::counts_human(&mut out, &counts)?,
            }
            out.flush()?;
        }
        Command::Catalog(args) => {
            let (h, kind) = load_state(&args)?;
            let mut out = open_output(&cli.output)?;
            match format {
                Format::Json => writeln!(out, "{}", h.to_json())?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut out);
                    w.write_record(["i", "j", "re", "im"])?;
                    for i in 0..h.d() {
                        for (j, z) in h.row(i).iter().enumerate() {
                            w.write_record([
                                i.to_string(),
                                j.to_string(),
                                format!("{:?}", z.re),
                                format!("{:?}", z.im),
                            ])?;
                        }
                    }
                    w.flush()?;
                }
                Format::Human => {
                    if let Some(kind) = kind {
                        let e = entry(kind, h.d())?;
                        writeln!(out, "{kind} state, d = {}", h.d())?;
                        if let Some(p) = e.expected_score {
                            writeln!(out, "tabulated score        {p:.6}")?;
                        }
                        if let Some(c) = e.expected_concurrence {
                            writeln!(out, "tabulated concurrence  {c:.6}")?;
                        }
                    }
                    render::matrix_human(&mut out, &h)?;
                }
            }
            out.flush()?;
        }
        Command::Nogo(args) => {
            let report = mes_nogo_check(args.d, args.trials, args.seed)?;
            let mut out = open_output(&cli.output)?;
            match format {
                Format::Json => write_json(&mut out, &report)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut out);
                    w.write_record([
                        "d",
                        "trials",
                        "seed",
                        "max_score",
                        "max_residual",
                        "constructed_score",
                        "passed",
                    ])?;
                    w.write_record([
                        report.d.to_string(),
                        report.trials.to_string(),
                        report.seed.to_string(),
                        format!("{:?}", report.max_score),
                        format!("{:?}", report.max_residual),
                        format!("{:?}", report.constructed_score),
                        report.passed.to_string(),
                    ])?;
                    w.flush()?;
                }
                Format::Human => writeln!(
                    out,
                    "d = {}, {} trials: max P(A2<B2) = {:.3e}, max constraint = {:.3e}, constructed = {:.3e}, {}",
                    report.d,
                    report.trials,
                    report.max_score,
                    report.max_residual,
                    report.constructed_score,
                    if report.passed { "passed" } else { "FAILED" }
                )?,
            }
            out.flush()?;
            if !report.passed {
                return Err(CliError::Check {
                    kind: "nogo_violation",
                    message: format!("maximally entangled state reached P(A2<B2) = {:e}", report.max_score),
                });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let body = serde_json::to_string(&e.report()).expect("error report serializes");
            eprintln!("{body}");
            ExitCode::from(1)
        }
    }
}
