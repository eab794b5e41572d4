//! Command-line front end for the `graeffe` root finder: solve
//! polynomial files, run the benchmark families with timings against the
//! independent oracle, and dump per-level Newton-diagram profiles for
//! plotting.

use clap::{Args, Parser, Subcommand, ValueEnum};
use graeffe::graeffe::{init_jet, tangent_graeffe_renorm};
use graeffe::diagram::strict_convex_hull;
use graeffe::oracle::{aberth_roots, match_rootsets};
use graeffe::poly::{gen_chebyshev, gen_kostlan, gen_perfidious, read_polynomial};
use graeffe::{solve, Complex, Error, Mode, Polynomial, SolveOptions, SolveReport, StopReason};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(
    name = "graeffe",
    version,
    about = "Polynomial root finder based on renormalized tangent Graeffe iteration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find all roots of a polynomial file.
    Solve(SolveArgs),
    /// Run the benchmark families; long-format CSV on stdout.
    Bench(BenchArgs),
    /// Dump per-level Newton-diagram radial profiles as CSV.
    Diagram(DiagramArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Input file: `d <degree> <real|complex>` header, then one
    /// coefficient per line, low to high (`re` or `re im`).
    input: PathBuf,
    /// Override the file's own real/complex declaration.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Hard cap on squaring levels.
    #[arg(long, default_value_t = 32)]
    max_level: u32,
    /// Relative between-level tolerance on the root vector.
    #[arg(long, default_value_t = 1e-12)]
    rtol: f64,
    /// Seed for the rotation angle.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Skip the final Newton polish.
    #[arg(long)]
    no_polish: bool,
    /// Report format.
    #[arg(long, value_enum, default_value = "json")]
    output: Format,
}

#[derive(Args)]
struct BenchArgs {
    /// Degrees for the random-polynomial suites (the fixed-root families
    /// keep their own degree lists).
    #[arg(long, value_delimiter = ',', default_values_t = vec![50usize, 100])]
    degrees: Vec<usize>,
}

#[derive(Args)]
struct DiagramArgs {
    /// Input file, same format as `solve`.
    input: PathBuf,
    /// Number of squaring levels to dump.
    #[arg(long, default_value_t = 8)]
    levels: u32,
}

#[derive(ValueEnum, Clone, Copy)]
enum ModeArg {
    Real,
    Complex,
}

#[derive(ValueEnum, Clone, Copy)]
enum Format {
    Json,
    Csv,
    Text,
}

/// The JSON report schema; field names and types are a stable contract.
#[derive(Serialize, Deserialize)]
struct JsonReport {
    roots: Vec<JsonRoot>,
    zero_multiplicity: usize,
    iterations: u32,
    backward_errors: Vec<f64>,
    stop_reason: String,
}

#[derive(Serialize, Deserialize)]
struct JsonRoot {
    re: f64,
    im: f64,
}

enum CliError {
    Io(PathBuf, std::io::Error),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    /// 2 for anything wrong with the input, 3 for numeric failures.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) => 2,
            CliError::Lib(
                Error::Parse { .. }
                | Error::InvalidOptions(_)
                | Error::ZeroPolynomial
                | Error::ConstantPolynomial,
            ) => 2,
            CliError::Lib(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Bench(args) => run_bench(args),
        Command::Diagram(args) => run_diagram(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn load(path: &Path) -> Result<(Polynomial, bool), CliError> {
    let content =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    Ok(read_polynomial(&content)?)
}

fn stop_reason_name(reason: StopReason) -> &'static str {
    match reason {
        StopReason::Converged => "converged",
        StopReason::MaxLevel => "max-level",
        StopReason::Saturated => "saturated",
    }
}

fn run_solve(args: &SolveArgs) -> Result<(), CliError> {
    let (p, file_real) = load(&args.input)?;
    let mode = match args.mode {
        Some(ModeArg::Real) => Mode::Real,
        Some(ModeArg::Complex) => Mode::Complex,
        None if file_real => Mode::Real,
        None => Mode::Complex,
    };
    if mode == Mode::Real && !p.is_real() {
        return Err(CliError::Lib(Error::InvalidOptions(
            "--mode real requires real coefficients".into(),
        )));
    }
    let mut opts = SolveOptions::new(mode);
    opts.max_level = args.max_level;
    opts.root_rtol = args.rtol;
    opts.seed = args.seed;
    opts.polish = !args.no_polish;
    let report = solve(&p, &opts)?;

    match args.output {
        Format::Json => {
            let out = JsonReport {
                roots: report
                    .roots
                    .iter()
                    .map(|z| JsonRoot { re: z.re, im: z.im })
                    .collect(),
                zero_multiplicity: report.zero_root_multiplicity,
                iterations: report.iterations_used,
                backward_errors: report.backward_errors.clone(),
                stop_reason: stop_reason_name(report.stop_reason).into(),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&out).expect("report serializes")
            );
        }
        Format::Csv => {
            println!("re,im,backward_error");
            for _ in 0..report.zero_root_multiplicity {
                println!("0,0,0");
            }
            for (z, be) in report.roots.iter().zip(&report.backward_errors) {
                println!("{:e},{:e},{:e}", z.re, z.im, be);
            }
        }
        Format::Text => print_text_report(&p, &report),
    }
    Ok(())
}

fn print_text_report(p: &Polynomial, report: &SolveReport) {
    println!(
        "degree {} ({}), {} after {} level(s), {} root(s) at zero",
        p.degree(),
        if p.is_real() { "real" } else { "complex" },
        stop_reason_name(report.stop_reason),
        report.iterations_used,
        report.zero_root_multiplicity,
    );
    for (z, be) in report.roots.iter().zip(&report.backward_errors) {
        println!("  {:+.16e}  {:+.16e}i   backward error {:.2e}", z.re, z.im, be);
    }
}

/// One benchmark cell: median-of-3 wall time plus an accuracy metric.
struct Cell {
    suite: &'static str,
    degree: usize,
    seed: u64,
    time_ms: f64,
    metric: &'static str,
    value: f64,
}

fn timed_solve(p: &Polynomial, opts: &SolveOptions) -> (Option<SolveReport>, f64) {
    let mut times: Vec<Duration> = Vec::with_capacity(3);
    let mut report = None;
    for _ in 0..3 {
        let t0 = Instant::now();
        report = solve(p, opts).ok();
        times.push(t0.elapsed());
        if report.is_none() {
            break;
        }
    }
    times.sort();
    (report, times[times.len() / 2].as_secs_f64() * 1e3)
}

fn run_bench(args: &BenchArgs) -> Result<(), CliError> {
    let mut cells: Vec<Cell> = Vec::new();

    for (suite, mode) in [("kostlan-real", Mode::Real), ("kostlan-complex", Mode::Complex)] {
        for &degree in &args.degrees {
            for seed in 0..10u64 {
                let p = gen_kostlan(degree, seed, mode == Mode::Real)?;
                let mut opts = SolveOptions::new(mode);
                opts.seed = seed;
                opts.max_level = 28;
                let (report, time_ms) = timed_solve(&p, &opts);
                let value = report
                    .and_then(|r| {
                        let oracle = aberth_roots(&p, 1e-13, 1000).ok()?;
                        match_rootsets(&r.roots, &oracle.roots).ok()
                    })
                    .unwrap_or(f64::NAN);
                cells.push(Cell { suite, degree, seed, time_ms, metric: "oracle_error", value });
            }
        }
    }

    for degree in [10usize, 15, 20] {
        let p = gen_perfidious(degree)?;
        let mut opts = SolveOptions::new(Mode::Real);
        opts.max_level = 32;
        let (report, time_ms) = timed_solve(&p, &opts);
        // Distance of every root to the nearest integer, as in the
        // classical presentations of this family.
        let value = report
            .map(|r| {
                r.roots
                    .iter()
                    .map(|z| (z - Complex::new(z.re.round(), 0.0)).norm())
                    .fold(0.0, f64::max)
            })
            .unwrap_or(f64::NAN);
        cells.push(Cell { suite: "perfidious", degree, seed: 0, time_ms, metric: "round_error", value });
    }

    for degree in [10usize, 15, 20, 25, 30, 35] {
        let p = gen_chebyshev(degree)?;
        let mut opts = SolveOptions::new(Mode::Real);
        opts.max_level = 34;
        let (report, time_ms) = timed_solve(&p, &opts);
        // Index-space error: map each root through the arccosine grid and
        // measure the distance to the nearest node index.
        let value = report
            .map(|r| {
                r.roots
                    .iter()
                    .map(|z| {
                        let m = (degree as f64 * z.re.clamp(-1.0, 1.0).acos()
                            - std::f64::consts::FRAC_PI_2)
                            / std::f64::consts::PI;
                        (m - m.round()).abs()
                    })
                    .fold(0.0, f64::max)
            })
            .unwrap_or(f64::NAN);
        cells.push(Cell { suite: "chebyshev", degree, seed: 0, time_ms, metric: "index_error", value });
    }

    println!("suite,degree,seed,metric,value");
    for cell in &cells {
        println!(
            "{},{},{},time_ms,{:e}",
            cell.suite, cell.degree, cell.seed, cell.time_ms
        );
        println!(
            "{},{},{},{},{:e}",
            cell.suite, cell.degree, cell.seed, cell.metric, cell.value
        );
    }

    // Doubling summary: median cell time at 2d over median cell time at d.
    let suites: Vec<&str> = {
        let mut s: Vec<&str> = cells.iter().map(|c| c.suite).collect();
        s.dedup();
        s
    };
    for suite in suites {
        let mut degrees: Vec<usize> = cells
            .iter()
            .filter(|c| c.suite == suite)
            .map(|c| c.degree)
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        let median_time = |d: usize| -> f64 {
            let mut t: Vec<f64> = cells
                .iter()
                .filter(|c| c.suite == suite && c.degree == d)
                .map(|c| c.time_ms)
                .collect();
            t.sort_by(|a, b| a.partial_cmp(b).expect("times are finite"));
            t[t.len() / 2]
        };
        for &d in &degrees {
            if degrees.contains(&(2 * d)) {
                println!(
                    "# scaling {suite}: time(d={})/time(d={d}) = {:.2}",
                    2 * d,
                    median_time(2 * d) / median_time(d)
                );
            }
        }
    }
    Ok(())
}

fn run_diagram(args: &DiagramArgs) -> Result<(), CliError> {
    let (p, _) = load(&args.input)?;
    let (q, _zeros) = p.deflate_zero_roots();
    if q.degree() == 0 {
        return Err(CliError::Lib(Error::ConstantPolynomial));
    }
    let mut jet = init_jet(&q);
    println!("N,i,r,is_corner");
    for _ in 0..args.levels {
        jet = tangent_graeffe_renorm(&jet);
        let r = jet.radials();
        let diagram = strict_convex_hull(jet.level, &r, 2.0)?;
        let mut is_corner = vec![false; r.len()];
        for &corner in &diagram.corners {
            is_corner[corner] = true;
        }
        for (i, ri) in r.iter().enumerate() {
            // `+ 0.0` folds negative zero so exact-unit coefficients
            // print as plain `0e0`.
            println!("{},{i},{:e},{}", jet.level, ri + 0.0, u8::from(is_corner[i]));
        }
    }
    Ok(())
}
