//! `wahba` command-line front end.
//!
//! Exit codes: 0 on success, 1 on bad input or solver failure, 2 when the
//! solution is not unique (`solve`) or the quartic has no real root (`roots`).

pub mod input;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;
use wahba::bench::{self, BenchOptions, BenchmarkReport, Execution, Weighting};
use wahba::{newton_iterate, quartic_roots, Error as SolveError, NewtonConfig, QuarticCoeffsd, SolverKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "wahba", version, about = "Closed-form Wahba attitude solver and Monte Carlo benchmark")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve Wahba's problem for an observation file.
    Solve {
        /// Observation file (line format or JSON); `-` reads stdin.
        input: PathBuf,
        /// Comma-separated solvers: analytic, quest, davenport.
        #[arg(long, default_value = "analytic,quest,davenport")]
        solvers: String,
        #[arg(long, value_enum, default_value_t = SolveFormat::Text)]
        format: SolveFormat,
    },
    /// Real roots of x⁴ + a x³ + b x² + c x + d.
    #[command(allow_negative_numbers = true)]
    Roots {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        /// Also run Newton's method and print every iterate.
        #[arg(long)]
        newton: bool,
        /// Newton starting point.
        #[arg(long, default_value_t = 1.0)]
        x0: f64,
        /// Newton relative step tolerance.
        #[arg(long, default_value_t = 1e-13)]
        tol: f64,
        #[arg(long, default_value_t = 100)]
        max_iterations: usize,
    },
    /// Monte Carlo error study over the twelve benchmark cases.
    Bench {
        /// Case id (1-12) or `all`.
        #[arg(long, default_value = "all")]
        case: String,
        #[arg(long, default_value_t = 4000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated solvers: analytic, quest, davenport.
        #[arg(long, default_value = "analytic,quest,davenport")]
        solvers: String,
        #[arg(long, value_enum, default_value_t = BenchFormat::Table)]
        format: BenchFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Observation weighting: equal or inverse-variance.
        #[arg(long, default_value = "equal")]
        weighting: String,
        /// Record solver wall time (makes the output machine dependent).
        #[arg(long)]
        timing: bool,
        /// Run trials on one thread.
        #[arg(long)]
        serial: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchFormat {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("{0}")]
    Input(#[from] input::InputError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn parse_solvers(list: &str) -> Result<Vec<SolverKind>, CliError> {
    let solvers = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<SolverKind>())
        .collect::<Result<Vec<_>, _>>()?;
    if solvers.is_empty() {
        return Err(CliError::Usage("solver list is empty".into()));
    }
    Ok(solvers)
}

fn parse_cases(spec: &str) -> Result<Vec<bench::BenchmarkCase>, CliError> {
    if spec.eq_ignore_ascii_case("all") {
        return Ok(bench::case_table());
    }
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<u8>()
                .ok()
                .and_then(bench::case_by_id)
                .ok_or_else(|| CliError::Usage(format!("unknown case `{s}` (expected 1-12 or `all`)")))
        })
        .collect()
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let read = if path.as_os_str() == "-" { io::read_to_string(io::stdin()) } else { fs::read_to_string(path) };
    read.map_err(|source| CliError::Read { path: path.display().to_string(), source })
}

fn fmt_vec(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:>22.15e}")).collect::<Vec<_>>().join(" ")
}

fn solve(input: &PathBuf, solvers: &str, format: SolveFormat, out: &mut dyn Write) -> Result<i32, CliError> {
    let solvers = parse_solvers(solvers)?;
    let set = input::parse_observations(&read_input(input)?)?;
    let mut status = EXIT_OK;
    let mut json = Vec::new();
    for kind in solvers {
        let report = match kind.solve(&set) {
            Ok(r) => r,
            Err(SolveError::DegenerateEigenvector { lambda_max, eigenvalue_gap }) => {
                status = EXIT_DEGENERATE;
                match format {
                    SolveFormat::Text => writeln!(
                        out,
                        "[{kind}] degenerate: lambda_max = {lambda_max:.17}, gap = {eigenvalue_gap:e}; attitude not unique"
                    )?,
                    SolveFormat::Json => json.push(serde_json::json!({
                        "solver": kind, "degenerate": true, "lambda_max": lambda_max, "eigenvalue_gap": eigenvalue_gap,
                    })),
                }
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        if report.ambiguous {
            status = EXIT_DEGENERATE;
        }
        let q = report.quaternion.to_vec4().0;
        match format {
            SolveFormat::Text => {
                let mut s = String::new();
                writeln!(s, "[{kind}]").unwrap();
                writeln!(s, "  lambda_max     {:.17}", report.lambda_max).unwrap();
                writeln!(s, "  quaternion     {}", fmt_vec(&q)).unwrap();
                for (i, row) in report.attitude.0.iter().enumerate() {
                    writeln!(s, "  {:<14} {}", if i == 0 { "attitude" } else { "" }, fmt_vec(row)).unwrap();
                }
                writeln!(s, "  loss           {:e}", report.loss).unwrap();
                writeln!(s, "  iterations     {}", report.iterations).unwrap();
                writeln!(s, "  gap            {:e}", report.eigenvalue_gap).unwrap();
                writeln!(s, "  ambiguous      {}", report.ambiguous).unwrap();
                writeln!(s, "  wall_time_ns   {}", report.wall_time.as_nanos()).unwrap();
                out.write_all(s.as_bytes())?;
            }
            SolveFormat::Json => json.push(serde_json::json!({
                "solver": kind,
                "lambda_max": report.lambda_max,
                "quaternion": q,
                "attitude": report.attitude.0,
                "loss": report.loss,
                "iterations": report.iterations,
                "eigenvalue_gap": report.eigenvalue_gap,
                "ambiguous": report.ambiguous,
                "wall_time_ns": report.wall_time.as_nanos() as u64,
            })),
        }
    }
    if format == SolveFormat::Json {
        serde_json::to_writer_pretty(&mut *out, &json)?;
        writeln!(out)?;
    }
    Ok(status)
}

fn roots(qc: QuarticCoeffsd, newton: Option<NewtonConfig<f64>>, out: &mut dyn Write) -> Result<i32, CliError> {
    if !qc.is_finite() {
        return Err(CliError::Usage("coefficients must be finite".into()));
    }
    let status = match quartic_roots(&qc) {
        Ok(rs) => {
            for r in &rs.roots {
                writeln!(out, "{r:.17}")?;
            }
            let pairs = rs.complex_pair.iter().filter(|&&c| c).count();
            if pairs > 0 {
                writeln!(out, "# {pairs} complex-conjugate pair(s) omitted")?;
            }
            EXIT_OK
        }
        Err(SolveError::NoRealRoot) => {
            writeln!(out, "no real roots")?;
            EXIT_DEGENERATE
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(cfg) = newton {
        writeln!(out, "# newton from x0 = {}", cfg.x0.unwrap_or(1.0))?;
        let mut trace = Vec::new();
        let (root, n) = newton_iterate(&qc, &cfg, |k, x| trace.push((k, x)))?;
        for (k, x) in trace {
            writeln!(out, "{k:>4} {x:.17}")?;
        }
        writeln!(out, "newton root {root:.17} after {n} iterations")?;
    }
    Ok(status)
}

fn write_table(report: &BenchmarkReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(
        out,
        "{:>4} {:<9} {:>6} {:>14} {:>14} {:>20} {:>5} {:>12} {:>14} {:>11}",
        "case",
        "solver",
        "trials",
        "mean_phi_deg",
        "std_phi_deg",
        "mean_lambda",
        "fail",
        "time_ns",
        "published_phi",
        "rel_dev"
    )?;
    for row in &report.rows {
        let s = &row.stats;
        let (published, dev) = match &row.published {
            Some(p) => (
                format!("{:.6e}", p.published_phi_deg),
                format!("{:+.2}%{}", p.rel_dev * 100.0, if p.flagged { " !" } else { "" }),
            ),
            None => ("-".into(), "-".into()),
        };
        writeln!(
            out,
            "{:>4} {:<9} {:>6} {:>14.6e} {:>14.6e} {:>20.17} {:>5} {:>12.1} {:>14} {:>11}",
            s.case,
            s.solver.name(),
            s.trials,
            s.mean_phi_deg,
            s.std_phi_deg,
            s.mean_lambda,
            s.failures,
            s.mean_time_ns,
            published,
            dev
        )?;
    }
    if report.timing.iter().any(|t| t.mean_time_ns > 0.0) {
        for t in &report.timing {
            writeln!(out, "# {} mean solve time {:.1} ns over {} solves", t.solver, t.mean_time_ns, t.solves)?;
        }
    }
    Ok(())
}

pub struct BenchArgs<'a> {
    pub case: &'a str,
    pub trials: usize,
    pub seed: u64,
    pub solvers: &'a str,
    pub weighting: &'a str,
    pub timing: bool,
    pub serial: bool,
}

pub fn bench_report(args: &BenchArgs) -> Result<BenchmarkReport, CliError> {
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let cases = parse_cases(args.case)?;
    let solvers = parse_solvers(args.solvers)?;
    let opts = BenchOptions {
        weighting: args.weighting.parse::<Weighting>()?,
        execution: if args.serial { Execution::Serial } else { Execution::Parallel },
        measure_time: args.timing,
    };
    Ok(bench::run_all(&cases, &solvers, args.trials, args.seed, &opts)?)
}

fn emit_report(report: &BenchmarkReport, format: BenchFormat, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        BenchFormat::Csv => bench::write_csv(report, out)?,
        BenchFormat::Json => {
            bench::write_json(report, &mut *out)?;
            writeln!(out)?;
        }
        BenchFormat::Table => write_table(report, out)?,
    }
    Ok(())
}

/// Executes a parsed command, writing results to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Solve { input, solvers, format } => solve(&input, &solvers, format, out),
        Command::Roots { a, b, c, d, newton, x0, tol, max_iterations } => {
            let cfg = newton.then_some(NewtonConfig { x0: Some(x0), tol, max_iterations });
            roots(QuarticCoeffsd::new(a, b, c, d), cfg, out)
        }
        Command::Bench { case, trials, seed, solvers, format, output, weighting, timing, serial } => {
            let report = bench_report(&BenchArgs {
                case: &case,
                trials,
                seed,
                solvers: &solvers,
                weighting: &weighting,
                timing,
                serial,
            })?;
            match output {
                Some(path) => {
                    let mut file = io::BufWriter::new(fs::File::create(&path)?);
                    emit_report(&report, format, &mut file)?;
                    file.flush()?;
                }
                None => emit_report(&report, format, out)?,
            }
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}
