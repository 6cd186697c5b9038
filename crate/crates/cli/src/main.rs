//! Command-line front end: single evaluations, CSV tables and error curves,
//! coefficient dumps and a self-test.
//!
//! Exit status is 0 on success, 1 on a usage error (reported before any
//! computation) and 2 on a numeric failure.

mod commands;
mod grid;
mod selftest;

use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

use legendre_uniform::legendre::{FunctionKind, DEFAULT_TERMS};
use legendre_uniform::lgcoeff::DEFAULT_S_MAX;
use legendre_uniform::mapping::LegendreParams;
use legendre_uniform::numerics::DEFAULT_WORKING_DIGITS;
use legendre_uniform::PrecisionCtx;

use crate::grid::Grid;

#[derive(Parser, Debug)]
#[command(name = "legendre-uniform", version, about = "Legendre and Ferrers functions of large degree")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Evaluate one function on a grid, as CSV.
    Table(TableArgs),
    /// Ω_n against the series oracle on a grid of t in [0, 1), as CSV.
    ErrorCurve(CurveArgs),
    /// Dump the generated coefficients E_s, λ_s, e_s, ẽ_s.
    Coeffs(CoeffsArgs),
    /// Run the built-in consistency checks.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("order").required(true).args(["alpha", "mu"])))]
struct OrderArgs {
    /// Degree ν.
    #[arg(long)]
    nu: f64,
    /// Scaled order α = μ/(ν+1/2).
    #[arg(long)]
    alpha: Option<f64>,
    /// Order μ.
    #[arg(long)]
    mu: Option<f64>,
}

#[derive(Args, Debug)]
struct NumArgs {
    /// Number of retained terms n.
    #[arg(long, default_value_t = DEFAULT_TERMS)]
    terms: usize,
    /// Working precision in decimal digits (oracle precision is 16 more).
    #[arg(long, default_value_t = DEFAULT_WORKING_DIGITS)]
    precision: u32,
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// ferrersP, ferrersQ, Pcut or Qbold.
    #[arg(long = "fn", value_parser = parse_kind)]
    function: FunctionKind,
    #[command(flatten)]
    order: OrderArgs,
    /// Evaluation point (t in [0, 1) for Ferrers functions, x > 1 otherwise).
    #[arg(long, alias = "x", allow_negative_numbers = true)]
    t: f64,
    #[command(flatten)]
    num: NumArgs,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long = "fn", value_parser = parse_kind)]
    function: FunctionKind,
    #[command(flatten)]
    order: OrderArgs,
    /// start:stop:step.
    #[arg(long)]
    grid: Grid,
    #[command(flatten)]
    num: NumArgs,
    /// Output file; standard output if omitted.
    #[arg(long, short)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[command(flatten)]
    order: OrderArgs,
    /// start:stop:step within [0, 1).
    #[arg(long)]
    grid: Grid,
    #[command(flatten)]
    num: NumArgs,
    #[arg(long, short)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("coeff_order").required(true).args(["alpha", "mu"])))]
struct CoeffsArgs {
    #[arg(long)]
    alpha: Option<f64>,
    /// Order μ; needs --nu.
    #[arg(long, requires = "nu")]
    mu: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    /// Highest coefficient index.
    #[arg(long, default_value_t = DEFAULT_S_MAX)]
    smax: usize,
    #[arg(long, default_value_t = DEFAULT_WORKING_DIGITS)]
    precision: u32,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Coefficient identities only.
    #[arg(long)]
    quick: bool,
    /// Working precision in digits. Not validated, so that failure modes at
    /// insufficient precision can be exercised.
    #[arg(long)]
    precision: Option<u32>,
}

fn parse_kind(s: &str) -> Result<FunctionKind, String> {
    FunctionKind::parse(s).ok_or_else(|| {
        let names: Vec<&str> = FunctionKind::ALL.iter().map(|k| k.name()).collect();
        format!("unknown function '{s}', expected one of {}", names.join(", "))
    })
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numeric(legendre_uniform::Error),
    Io(std::io::Error),
}

impl From<legendre_uniform::Error> for Failure {
    fn from(e: legendre_uniform::Error) -> Self {
        Failure::Numeric(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl OrderArgs {
    fn params(&self) -> Result<LegendreParams, Failure> {
        let p = match (self.alpha, self.mu) {
            (Some(a), None) => LegendreParams::from_alpha(self.nu, a),
            (None, Some(m)) => LegendreParams::from_mu(self.nu, m),
            _ => return Err(Failure::Usage("exactly one of --alpha and --mu is required".into())),
        };
        p.map_err(|e| Failure::Usage(e.to_string()))
    }
}

impl NumArgs {
    fn ctx(&self) -> Result<PrecisionCtx, Failure> {
        PrecisionCtx::with_working(self.precision).map_err(|e| Failure::Usage(e.to_string()))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Eval(a) => commands::eval(a.function, &a.order.params()?, a.t, a.num.terms, a.num.ctx()?),
        Command::Table(a) => {
            let params = a.order.params()?;
            let ctx = a.num.ctx()?;
            let points = a.grid.points_for(a.function.on_cut())?;
            commands::table(a.function, &params, &points, a.num.terms, ctx, a.output.as_deref())
        }
        Command::ErrorCurve(a) => {
            let params = a.order.params()?;
            let ctx = a.num.ctx()?;
            let points = a.grid.points_for(false)?;
            commands::error_curve(&params, &points, a.num.terms, ctx, a.output.as_deref())
        }
        Command::Coeffs(a) => {
            let ctx = PrecisionCtx::with_working(a.precision).map_err(|e| Failure::Usage(e.to_string()))?;
            let alpha = match (a.alpha, a.mu, a.nu) {
                (Some(al), None, _) => al,
                (None, Some(m), Some(n)) => LegendreParams::from_mu(n, m)
                    .map_err(|e| Failure::Usage(e.to_string()))?
                    .alpha_f64(),
                _ => return Err(Failure::Usage("give --alpha, or --mu with --nu".into())),
            };
            commands::coeffs(alpha, a.smax, ctx)
        }
        Command::Selftest(a) => {
            let ctx = match a.precision {
                Some(d) => PrecisionCtx::unchecked(d, d + 16),
                None => PrecisionCtx::default(),
            };
            selftest::run(ctx, a.quick)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("error [{}]: {e}", e.stage());
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error [output]: {e}");
            ExitCode::from(2)
        }
    }
}
