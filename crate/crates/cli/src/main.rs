//! Command-line front end: compute sharp errors, sweep parameters, and
//! run the verification suites.
//!
//! Exit codes: 0 on success, 1 on usage errors (bad flags, unparsable
//! specs, invalid parameters), 2 on computation failures (unreachable
//! truncation targets, failed convexity preconditions, quadrature
//! non-convergence) and on failed verification suites.

// Grid guards use `!(b > a)` on purpose: the negation rejects NaN bounds.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;
mod verify;

use clap::{Args, Parser, Subcommand};
use fourlag::{
    pointwise_error_general, poisson_pointwise, poisson_uniform, sobolev_pointwise,
    sobolev_uniform, uniform_error_convex, validate_multipliers, Error as CoreError, ErrorResult,
    MultiplierSet, Preset, PsiSequence,
};
use output::{write_out, JsonMap};
use serde::Deserialize;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fourlag",
    about = "Sharp worst-case errors of trigonometric interpolation and Fourier-Lagrange linear methods on convolution classes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one pointwise or uniform worst-case error.
    Error(ErrorArgs),
    /// Emit plot-ready CSV over a grid of x values or of orders n.
    Sweep(SweepArgs),
    /// Run the self-verification suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Kernel coefficient family: `geometric:q=<real>` or `power:r=<real>`.
    #[arg(long)]
    psi: String,
    /// Method row: `interp`, `zero`, or `custom:<path>` to a JSON file
    /// {"lambda": [...], "mu": [...]}.
    #[arg(long, default_value = "interp")]
    method: String,
    /// Truncation / quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output format for scalar results.
    #[arg(long, value_parser = ["json", "csv"], default_value = "json")]
    format: String,
    /// Seed for randomized paths; the error and sweep computations are
    /// deterministic and ignore it.
    #[arg(long, default_value_t = 42)]
    #[allow(dead_code)]
    seed: u64,
    /// Write output to this path instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ErrorArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Interpolation order (2n+1 nodes).
    #[arg(long)]
    n: u32,
    /// Evaluation point for the pointwise error.
    #[arg(long, conflicts_with = "uniform")]
    x: Option<f64>,
    /// Compute the uniform (sup over x) error instead of a pointwise one.
    #[arg(long, default_value_t = false)]
    uniform: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Order for an x-sweep.
    #[arg(long, conflicts_with_all = ["n_from", "n_to"])]
    n: Option<u32>,
    #[arg(long, requires_all = ["x_to", "points"])]
    x_from: Option<f64>,
    #[arg(long)]
    x_to: Option<f64>,
    /// Number of grid points (≥ 2), endpoints included.
    #[arg(long)]
    points: Option<u64>,
    /// First order of an n-sweep.
    #[arg(long, requires = "n_to", conflicts_with_all = ["x_from", "x_to", "points"])]
    n_from: Option<u32>,
    /// Last order of an n-sweep (inclusive).
    #[arg(long)]
    n_to: Option<u32>,
    /// Fixed evaluation point for a pointwise n-sweep.
    #[arg(long, conflicts_with = "uniform")]
    x: Option<f64>,
    /// Sweep the uniform error (n-sweeps only).
    #[arg(long, default_value_t = false)]
    uniform: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run.
    #[arg(long, value_parser = ["all", "aliasing", "duality", "crossform"], default_value = "all")]
    suite: String,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Write the JSON report to this path instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

/// A usage problem (exit 1) or a computation failure (exit 2).
pub(crate) enum CliError {
    Usage(String),
    Computation(String),
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::Truncation { .. }
            | CoreError::QuadratureNonConvergence { .. }
            | CoreError::ConvexityNotEstablished { .. }
            | CoreError::DegenerateKernel => CliError::Computation(err.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            // Help and version requests are not errors.
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                let _ = err.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("{err}");
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Error(args) => cmd_error(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => verify::cmd_verify(&args.suite, args.seed, args.out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[derive(Deserialize)]
struct MultiplierFile {
    lambda: Vec<f64>,
    mu: Vec<f64>,
}

/// Parsed method row: a preset or a custom row (validated once n is known).
enum MethodSpec {
    Interp,
    Zero,
    Custom(MultiplierFile),
}

impl MethodSpec {
    fn parse(spec: &str) -> Result<Self, CliError> {
        match spec {
            "interp" => Ok(MethodSpec::Interp),
            "zero" => Ok(MethodSpec::Zero),
            other => {
                let path = other.strip_prefix("custom:").ok_or_else(|| {
                    CliError::Usage(format!(
                        "cannot parse method spec {other:?}: expected interp, zero, or custom:<path>"
                    ))
                })?;
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Usage(format!("cannot read multiplier file {path}: {e}"))
                })?;
                let file: MultiplierFile = serde_json::from_str(&text).map_err(|e| {
                    CliError::Usage(format!("cannot parse multiplier file {path}: {e}"))
                })?;
                Ok(MethodSpec::Custom(file))
            }
        }
    }

    fn build(&self, n: u32) -> Result<MultiplierSet, CliError> {
        let mults = match self {
            MethodSpec::Interp => fourlag::preset_row(Preset::Interp, n)?,
            MethodSpec::Zero => fourlag::preset_row(Preset::Zero, n)?,
            MethodSpec::Custom(file) => validate_multipliers(&file.lambda, &file.mu, n)?,
        };
        Ok(mults)
    }

    fn is_interp(&self) -> bool {
        matches!(self, MethodSpec::Interp)
    }
}

fn parse_psi(spec: &str) -> Result<PsiSequence, CliError> {
    spec.parse::<PsiSequence>().map_err(CliError::from)
}

/// One evaluation with closed-form dispatch: under the interpolation
/// method the geometric family has an exact closed form and the power
/// family a quadrature form; everything else goes through the block
/// series.
fn evaluate(
    psi: &PsiSequence,
    method: &MethodSpec,
    mults: &MultiplierSet,
    n: u32,
    x: Option<f64>,
    uniform: bool,
    tol: f64,
) -> Result<ErrorResult, CliError> {
    if uniform {
        if !method.is_interp() {
            return Err(CliError::Usage(
                "uniform errors are only defined here for --method interp".to_string(),
            ));
        }
        if let Some(q) = psi.as_geometric() {
            let value = poisson_uniform(q, n)?;
            return Ok(ErrorResult {
                value,
                truncation_bound: 0.0,
                terms_used: 0,
            });
        }
        if let Some(r) = psi.as_power() {
            return Ok(sobolev_uniform(r, n, tol)?);
        }
        return Ok(uniform_error_convex(psi, n, tol)?);
    }
    let x = x.ok_or_else(|| {
        CliError::Usage("a pointwise error needs --x (or pass --uniform)".to_string())
    })?;
    if method.is_interp() {
        if let Some(q) = psi.as_geometric() {
            let value = poisson_pointwise(q, n, x)?;
            return Ok(ErrorResult {
                value,
                truncation_bound: 0.0,
                terms_used: 0,
            });
        }
        if let Some(r) = psi.as_power() {
            return Ok(sobolev_pointwise(r, n, x, tol)?);
        }
    }
    Ok(pointwise_error_general(psi, mults, x, tol)?)
}

fn cmd_error(args: ErrorArgs) -> Result<(), CliError> {
    let psi = parse_psi(&args.common.psi)?;
    let method = MethodSpec::parse(&args.common.method)?;
    let mults = method.build(args.n)?;
    let result = evaluate(
        &psi,
        &method,
        &mults,
        args.n,
        args.x,
        args.uniform,
        args.common.tol,
    )?;

    let text = match args.common.format.as_str() {
        "csv" => {
            format!(
                "value,truncation_bound,terms_used\n{},{},{}\n",
                output::fmt12(result.value),
                output::fmt12(result.truncation_bound),
                result.terms_used
            )
        }
        _ => {
            let mut params = JsonMap::new();
            params.push_str("psi", &args.common.psi);
            params.push_str("method", &args.common.method);
            params.push_int("n", args.n as i64);
            match args.x {
                Some(x) if !args.uniform => params.push_f64("x", x),
                _ => params.push_bool("uniform", args.uniform),
            }
            params.push_f64("tol", args.common.tol);

            let mut map = JsonMap::new();
            map.push_f64("value", result.value);
            map.push_f64("truncation_bound", result.truncation_bound);
            map.push_int("terms_used", result.terms_used as i64);
            map.push_raw("params", &params.finish());
            map.finish() + "\n"
        }
    };
    write_out(args.common.out.as_deref(), &text).map_err(CliError::Usage)
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let psi = parse_psi(&args.common.psi)?;
    let method = MethodSpec::parse(&args.common.method)?;

    let mut csv = String::new();
    if let (Some(x_from), Some(x_to), Some(points)) = (args.x_from, args.x_to, args.points) {
        let n = args
            .n
            .ok_or_else(|| CliError::Usage("an x-sweep needs --n".to_string()))?;
        if args.uniform {
            return Err(CliError::Usage(
                "the uniform error has no x dependence; drop --uniform or sweep over n".to_string(),
            ));
        }
        if points < 2 {
            return Err(CliError::Usage(format!(
                "a sweep needs at least 2 points, got {points}"
            )));
        }
        if !(x_to > x_from) {
            return Err(CliError::Usage(format!(
                "empty or inverted grid: [{x_from}, {x_to}]"
            )));
        }
        let mults = method.build(n)?;
        csv.push_str("x,value,truncation_bound\n");
        let step = (x_to - x_from) / (points - 1) as f64;
        for i in 0..points {
            let x = if i == points - 1 {
                x_to
            } else {
                x_from + i as f64 * step
            };
            let r = evaluate(&psi, &method, &mults, n, Some(x), false, args.common.tol)?;
            csv.push_str(&format!(
                "{},{},{}\n",
                output::fmt12(x),
                output::fmt12(r.value),
                output::fmt12(r.truncation_bound)
            ));
        }
    } else if let (Some(n_from), Some(n_to)) = (args.n_from, args.n_to) {
        if n_from == 0 {
            return Err(CliError::Usage("n must be at least 1".to_string()));
        }
        if n_to < n_from {
            return Err(CliError::Usage(format!(
                "empty or inverted order range: [{n_from}, {n_to}]"
            )));
        }
        if !args.uniform && args.x.is_none() {
            return Err(CliError::Usage(
                "an n-sweep needs --uniform or a fixed --x".to_string(),
            ));
        }
        csv.push_str("n,value,truncation_bound\n");
        for n in n_from..=n_to {
            let mults = method.build(n)?;
            let r = evaluate(
                &psi,
                &method,
                &mults,
                n,
                args.x,
                args.uniform,
                args.common.tol,
            )?;
            csv.push_str(&format!(
                "{n},{},{}\n",
                output::fmt12(r.value),
                output::fmt12(r.truncation_bound)
            ));
        }
    } else {
        return Err(CliError::Usage(
            "a sweep needs either --x-from/--x-to/--points or --n-from/--n-to".to_string(),
        ));
    }
    write_out(args.common.out.as_deref(), &csv).map_err(CliError::Usage)
}
