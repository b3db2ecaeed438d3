//! Command-line definitions and dispatch.

use std::fs;
use std::io::{self, Write};
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use envelope_core::{discrete_legendre, involution_check};
use serde::Serialize;

use crate::config::Settings;
use crate::csv_io::{conjugate_csv, envelope_csv, read_sampled};
use crate::error::{CliError, CliResult, EXIT_CHECK_FAILED};
use crate::payload::{
    classify_op, default_p_range, dual_op, sample_range, solve_op, tangents_op, EquationRequest,
    MAX_SAMPLES,
};
use crate::svg::{render, FamilyRange, PlotKind, PlotSpec};

#[derive(Debug, Parser)]
#[command(
    name = "envelope",
    version,
    about = "Solve x^n - p x + q = 0 with the envelope of the lines q = x p - x^n"
)]
pub struct Cli {
    #[command(flatten)]
    pub settings: Settings,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the real roots with multiplicities and residuals.
    #[command(allow_negative_numbers = true)]
    Solve(EquationArgs),

    /// Print the number of real roots and the regime of (p, q).
    #[command(allow_negative_numbers = true)]
    Classify(EquationArgs),

    /// Print the tangents to the envelope through (p, q).
    #[command(allow_negative_numbers = true)]
    Tangents(EquationArgs),

    /// Print the dual line of (p, q) and the dual points of its tangents.
    #[command(allow_negative_numbers = true)]
    Dual(EquationArgs),

    /// Write an SVG figure.
    #[command(allow_negative_numbers = true)]
    Plot(PlotArgs),

    /// Write sampled envelope branches as CSV.
    #[command(name = "envelope-csv", allow_negative_numbers = true)]
    EnvelopeCsv(EnvelopeCsvArgs),

    /// Discrete Legendre transform of a sampled function given as CSV.
    #[command(allow_negative_numbers = true)]
    Legendre(LegendreArgs),

    /// Serve the JSON API and the explorer bundle.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct EquationArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub q: f64,
}

impl EquationArgs {
    fn request(&self) -> EquationRequest {
        EquationRequest::new(self.n, self.p, self.q)
    }
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    #[arg(long, value_enum, default_value = "line-family")]
    pub kind: PlotKind,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    /// Horizontal range as `lo,hi`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "-5,5")]
    pub x_range: (f64, f64),
    /// Vertical range as `lo,hi`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "-5,5")]
    pub y_range: (f64, f64),
    #[arg(long)]
    pub width: Option<u32>,
    #[arg(long, default_value_t = 480)]
    pub height: u32,
    /// Family parameters `lo,hi` for the line-family plot.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "-2,2")]
    pub family: (f64, f64),
    #[arg(long, default_value_t = 0.25)]
    pub family_step: f64,
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EnvelopeCsvArgs {
    #[arg(long)]
    pub n: u32,
    /// Range of p as `lo,hi`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub p_range: Option<(f64, f64)>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct LegendreArgs {
    /// Input CSV with a header row and two columns `x,f`; `-` reads stdin.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Slopes as `lo:hi:step`; defaults to the secant-slope range of the input.
    #[arg(long, value_parser = parse_slopes, allow_hyphen_values = true)]
    pub slopes: Option<SlopeGrid>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Also transform back and report the deviation from the input.
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = 5e-2)]
    pub check_tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ServeArgs {
    #[arg(long, env = "ENVELOPE_BIND", default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
    pub bind: IpAddr,
    #[arg(long, env = "ENVELOPE_PORT", default_value_t = 8080)]
    pub port: u16,
    /// Directory with the explorer bundle, served under `/`.
    #[arg(long, env = "ENVELOPE_STATIC_DIR")]
    pub static_dir: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `lo,hi`, got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

/// Slopes from a `lo:hi:step` flag.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeGrid(pub Vec<f64>);

fn parse_slopes(s: &str) -> Result<SlopeGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts[..] else {
        return Err(format!("expected `lo:hi:step`, got {s:?}"));
    };
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
    if !(lo <= hi && step > 0.0 && step.is_finite()) {
        return Err(format!("bad slope grid {s:?}"));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > MAX_SAMPLES {
        return Err(format!(
            "{count} slopes requested, at most {MAX_SAMPLES} allowed"
        ));
    }
    Ok(SlopeGrid(
        (0..count).map(|i| lo + step * i as f64).collect(),
    ))
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn print_json(stdout: &mut dyn Write, value: &impl Serialize) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("payloads serialize");
    writeln!(stdout, "{text}")?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct CheckReport {
    max_deviation: f64,
    passed: bool,
}

/// Runs one command and returns the process exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<i32> {
    let settings = cli.settings;
    match cli.command {
        Command::Solve(a) => print_json(stdout, &solve_op(&a.request(), &settings)?)?,
        Command::Classify(a) => print_json(stdout, &classify_op(&a.request(), &settings)?)?,
        Command::Tangents(a) => print_json(stdout, &tangents_op(&a.request(), &settings)?)?,
        Command::Dual(a) => print_json(stdout, &dual_op(&a.request(), &settings)?)?,
        Command::Plot(a) => {
            let mut spec = PlotSpec::new(a.kind, a.n);
            spec.params = match (a.p, a.q) {
                (Some(p), Some(q)) => Some((p, q)),
                (None, None) => None,
                _ => return Err(CliError::InvalidArgument("give both --p and --q".into())),
            };
            spec.x_range = a.x_range;
            spec.y_range = a.y_range;
            spec.samples = settings.samples;
            spec.width = a.width.unwrap_or(spec.width);
            spec.height = a.height;
            spec.family = FamilyRange {
                lo: a.family.0,
                hi: a.family.1,
                step: a.family_step,
            };
            emit(a.out.as_deref(), stdout, &render(&spec, &settings)?)?;
        }
        Command::EnvelopeCsv(a) => {
            let range = a.p_range.unwrap_or_else(|| default_p_range(a.n));
            emit(
                a.out.as_deref(),
                stdout,
                &envelope_csv(a.n, range, settings.samples)?,
            )?;
        }
        Command::Legendre(a) => {
            let f = if a.input.as_os_str() == "-" {
                read_sampled(io::stdin().lock())?
            } else {
                let file = fs::File::open(&a.input).map_err(|e| CliError::io(&a.input, e))?;
                read_sampled(file)?
            };
            let slopes = match a.slopes {
                Some(SlopeGrid(s)) => s,
                None => {
                    let d = f.slope_domain();
                    let count = if d.width() > 0.0 { settings.samples } else { 1 };
                    sample_range((d.lo, d.hi), count)?
                }
            };
            let conj = discrete_legendre(&f, &slopes)?;
            emit(a.out.as_deref(), stdout, &conjugate_csv(&conj))?;
            if a.check {
                let r = involution_check(&f, a.check_tol)?;
                let report = CheckReport {
                    max_deviation: r.max_deviation,
                    passed: r.passed,
                };
                writeln!(
                    stderr,
                    "{}",
                    serde_json::to_string(&report).expect("report serializes")
                )?;
                if !r.passed {
                    return Ok(EXIT_CHECK_FAILED);
                }
            }
        }
        Command::Serve(a) => {
            let runtime = tokio::runtime::Runtime::new()?;
            let addr = SocketAddr::new(a.bind, a.port);
            runtime.block_on(crate::api::serve(addr, settings, a.static_dir))?;
        }
    }
    Ok(0)
}
