use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use expclass::class::operator_gauge;
use expclass::commands::{bound_resolvent, bound_spectral};
use expclass::gallery::{
    make_convolution_diagonal, make_cyclic, make_interleaved_sum, make_shift, make_weyl_sharpness, BlockSchedule,
};
use expclass::io::{read_json, read_matrix, write_json};
use expclass::linalg::ComplexMatrix;
use expclass::report::Status;
use expclass::sequence::{gauge_of_sequence, monotone_arrangement, ClassParams, DecaySequence, Direction};
use expclass::suite::{run_suite, DEFAULT_BUDGET};
use expclass::Result;

/// Exit code for a report with at least one failed inequality.
const EXIT_FAIL: u8 = 1;
/// Exit code for invalid input or a computation error.
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "expclass", version, about = "Bounds for operators with exponentially decaying singular values")]
struct Cli {
    /// Suppress the human-readable summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a self-validating property suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the resolvent norm with its bound on a grid around the spectrum.
    BoundResolvent {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        alpha: f64,
        /// Grid size as `NX,NY`.
        #[arg(long, value_parser = parse_grid, default_value = "40,40")]
        grid: (usize, usize),
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the Hausdorff distance of two spectra with the spectral-distance bound.
    BoundSpectral {
        #[arg(long)]
        matrix_a: PathBuf,
        #[arg(long)]
        matrix_b: PathBuf,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a gallery matrix.
    Gallery {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Dimension; for `weyl`, the largest admissible dimension of the block schedule.
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Cyclic weights; defaults to `e^{−a n^α}`, `n = 1..=dim`.
        #[arg(long, value_delimiter = ',')]
        taus: Option<Vec<f64>>,
        /// Weyl block ends `N_1 < N_2 < …`; defaults to `round(exp(n²))`.
        #[arg(long, value_delimiter = ',')]
        block_ends: Option<Vec<usize>>,
        /// Interleaved-sum rates `a_1, …, a_K`.
        #[arg(long, value_delimiter = ',', default_value = "1,1")]
        rates: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monotone arrangement of several sequences.
    Arrange {
        #[arg(long, value_delimiter = ',', required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gauge `|x|_{a,α}` of a sequence or of a matrix's singular values.
    Gauge {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        alpha: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Shift,
    Cyclic,
    Weyl,
    Interleave,
    Convolution,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Inc,
    Dec,
}

fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected NX,NY, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("invalid grid size `{t}`: {e}"));
    Ok((parse(x)?, parse(y)?))
}

/// Writes to `out`, or pretty JSON on stdout.
fn emit<T: Serialize>(out: Option<&Path>, value: &T) -> Result<()> {
    match out {
        Some(path) => write_json(path, value),
        None => {
            let text = serde_json::to_string_pretty(value)?;
            match writeln!(std::io::stdout().lock(), "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn status_code(status: Status) -> u8 {
    match status {
        Status::Pass => 0,
        Status::Fail => EXIT_FAIL,
    }
}

#[derive(Serialize)]
struct GaugeOutput {
    input: String,
    params: ClassParams,
    gauge: f64,
}

fn gallery_matrix(
    kind: Kind,
    dim: usize,
    p: ClassParams,
    taus: Option<Vec<f64>>,
    block_ends: Option<Vec<usize>>,
    rates: &[f64],
) -> Result<ComplexMatrix> {
    match kind {
        Kind::Shift => make_shift(p, dim),
        Kind::Cyclic => make_cyclic(&taus.unwrap_or_else(|| (1..=dim).map(|n| p.weight(n)).collect())),
        Kind::Weyl => {
            let schedule = match block_ends {
                Some(ends) => BlockSchedule::new(ends)?,
                None => BlockSchedule::super_exponential(dim)?,
            };
            make_weyl_sharpness(p, &schedule)
        }
        Kind::Interleave => Ok(make_interleaved_sum(rates, p.alpha(), dim)?.1),
        Kind::Convolution => make_convolution_diagonal(p.a(), dim),
    }
}

fn run(cli: Cli) -> Result<u8> {
    let quiet = cli.quiet;
    let say = |msg: String| {
        if !quiet {
            eprintln!("{msg}");
        }
    };
    match cli.command {
        Command::Verify { suite, seed, budget, out } => {
            let report = run_suite(&suite, seed, budget)?;
            emit(out.as_deref(), &report)?;
            let s = report.summary;
            say(format!("suite {suite} seed {seed}: {} checks, {} passed, {} failed", s.total, s.passed, s.failed));
            for f in report.failures() {
                say(format!("  FAIL {}: lhs {:e} rhs {:e}", f.name, f.lhs, f.rhs));
            }
            Ok(if report.all_passed() { 0 } else { EXIT_FAIL })
        }
        Command::BoundResolvent { matrix, a, alpha, grid, out } => {
            let m = read_matrix(&matrix)?;
            let report = bound_resolvent(&m, ClassParams::new(a, alpha)?, grid.0, grid.1)?;
            emit(out.as_deref(), &report)?;
            say(format!(
                "resolvent: {} points evaluated, {} failed, max ratio {:.6e}",
                report.evaluated, report.failed, report.max_ratio
            ));
            Ok(status_code(report.status))
        }
        Command::BoundSpectral { matrix_a, matrix_b, a, alpha, out } => {
            let report =
                bound_spectral(&read_matrix(&matrix_a)?, &read_matrix(&matrix_b)?, ClassParams::new(a, alpha)?)?;
            emit(out.as_deref(), &report)?;
            say(format!(
                "spectral distance: hausdorff {:.6e} <= bound {:.6e} (normE {:.6e}, m {:.6e})",
                report.exact_hdist, report.bound, report.norm_e, report.m
            ));
            Ok(status_code(report.status))
        }
        Command::Gallery { kind, dim, a, alpha, taus, block_ends, rates, out } => {
            let m = gallery_matrix(kind, dim, ClassParams::new(a, alpha)?, taus, block_ends, &rates)?;
            emit(out.as_deref(), &m)?;
            say(format!("gallery matrix {}x{}", m.rows(), m.cols()));
            Ok(0)
        }
        Command::Arrange { inputs, direction, out } => {
            let seqs: Vec<DecaySequence> = inputs.iter().map(read_json).collect::<Result<_>>()?;
            let direction = match direction {
                DirectionArg::Inc => Direction::Increasing,
                DirectionArg::Dec => Direction::Decreasing,
            };
            let result = monotone_arrangement(&seqs, direction)?;
            emit(out.as_deref(), &result)?;
            say(format!("arranged {} entries from {} sequences", result.values.len(), seqs.len()));
            Ok(0)
        }
        Command::Gauge { input, a, alpha } => {
            let p = ClassParams::new(a, alpha)?;
            let text = std::fs::read_to_string(&input)?;
            let value: serde_json::Value = serde_json::from_str(&text)?;
            let (kind, gauge) = if value.is_array() {
                ("sequence", gauge_of_sequence(&serde_json::from_value::<DecaySequence>(value)?, p)?)
            } else {
                ("matrix", operator_gauge(&serde_json::from_value::<ComplexMatrix>(value)?, p)?.gauge)
            };
            emit(None, &GaugeOutput { input: kind.to_string(), params: p, gauge })?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
