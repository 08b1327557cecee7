//! Command-line front end: `simpcert eval` and `simpcert sweep`.
//!
//! [`run`] takes the argument list and output streams so the binary and the
//! end-to-end tests share one code path.

mod output;
mod sweep;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use simpcert::certify::{certify, BoundReport, CertifyParams, TheoremId};
use simpcert::convexity::{DEFAULT_GRID_N, DEFAULT_TOL};
use simpcert::expr::ParseError;
use simpcert::hspec::{HSpec, HSpecError};
use simpcert::{FunctionModel, Interval};

pub use output::{exact_float, sig6};
pub use sweep::Axis;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_CERTIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "simpcert",
    version,
    about = "Certify Simpson-rule error bounds for a function on an interval",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one or more bounds and compare them with the true error.
    Eval(CommonArgs),
    /// Vary one parameter and tabulate the bounds as CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Function of x, e.g. "x^4" or "sin(x)*exp(-x)".
    #[arg(long = "f", allow_hyphen_values = true)]
    pub f: String,
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    /// Weight h(t): t, 1, 1/t, power (uses --s) or an expression in t.
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Theorem id (Classical, A, B, C, T2_1, T2_2, T2_3, T3_1, T3_2) or "all";
    /// repeatable.
    #[arg(long = "theorem", required = true)]
    pub theorems: Vec<String>,
    /// Override the sampled sup |f''''| of the classical bound.
    #[arg(long)]
    pub sup_f4: Option<f64>,
    /// Domain cap b*: (alpha,m) theorems then require [a, b] inside [0, b*].
    #[arg(long)]
    pub b_star: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_GRID_N)]
    pub grid_n: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum)]
    pub axis: Axis,
    #[arg(long)]
    pub from: Option<f64>,
    #[arg(long)]
    pub to: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
    /// Explicit comma-separated axis values; overrides --from/--to/--step.
    #[arg(long, value_delimiter = ',')]
    pub values: Option<Vec<f64>>,
}

/// Validated inputs shared by both subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub f: FunctionModel,
    pub iv: Interval,
    pub theorems: Vec<TheoremId>,
    pub params: CertifyParams,
}

/// `source` with a caret under byte `offset`.
fn point_at(source: &str, offset: usize) -> String {
    let col = source[..offset.min(source.len())].chars().count();
    format!("  {source}\n  {}^", " ".repeat(col))
}

fn describe_parse_error(flag: &str, source: &str, e: &ParseError) -> String {
    match e.offset() {
        Some(off) => format!("{flag}: {e}\n{}", point_at(source, off)),
        None => format!("{flag}: {e}"),
    }
}

fn expand_theorems(
    raw: &[String],
    params: &CertifyParams,
    errors: &mut Vec<String>,
) -> Vec<TheoremId> {
    let mut out = Vec::new();
    for name in raw {
        if name.eq_ignore_ascii_case("all") {
            // every theorem whose parameters were supplied
            for id in TheoremId::ALL {
                let has_all = id.required().iter().all(|&p| params.supplies(p));
                let q_ok = !id.needs_q_above_one() || params.q.is_some_and(|q| q > 1.0);
                if has_all && q_ok && !out.contains(&id) {
                    out.push(id);
                }
            }
            continue;
        }
        match name.parse::<TheoremId>() {
            Ok(id) if !out.contains(&id) => out.push(id),
            Ok(_) => {}
            Err(e) => errors.push(format!("--theorem: {e}")),
        }
    }
    out
}

impl RunConfig {
    /// Parses and validates everything, returning every problem at once.
    pub fn from_args(args: &CommonArgs) -> Result<RunConfig, Vec<String>> {
        let mut errors = Vec::new();
        let f = FunctionModel::parse(&args.f, "x")
            .map_err(|e| errors.push(describe_parse_error("--f", &args.f, &e)))
            .ok();
        let iv = Interval::new(args.a, args.b)
            .map_err(|e| errors.push(format!("--a/--b: {e}")))
            .ok();
        let h = match &args.h {
            None => None,
            Some(src) => match HSpec::parse(src, args.s) {
                Ok(h) => Some(h),
                Err(HSpecError::Parse(e)) => {
                    errors.push(describe_parse_error("--h", src, &e));
                    None
                }
                Err(e) => {
                    errors.push(format!("--h: {e}"));
                    None
                }
            },
        };
        let params = CertifyParams {
            h,
            s: args.s,
            q: args.q,
            m: args.m,
            alpha: args.alpha,
            sup_f4: args.sup_f4,
            b_star: args.b_star,
            grid_n: args.grid_n,
            tol: args.tol,
        };
        let theorems = expand_theorems(&args.theorems, &params, &mut errors);
        if theorems.is_empty() && errors.is_empty() {
            errors.push("--theorem: no theorem selected".to_string());
        }
        if let Some(iv) = iv {
            for &id in &theorems {
                errors.extend(params.problems(id, iv).iter().map(ToString::to_string));
            }
        }
        match (f, iv) {
            (Some(f), Some(iv)) if errors.is_empty() => Ok(RunConfig {
                f: f.with_domain_hint(iv),
                iv,
                theorems,
                params,
            }),
            _ => Err(errors),
        }
    }

    /// One report per theorem, computed in parallel, returned in request order.
    pub fn evaluate(&self, params: &CertifyParams) -> Result<Vec<BoundReport>, String> {
        self.theorems
            .par_iter()
            .map(|&id| certify(&self.f, self.iv, id, params).map_err(|e| format!("{id}: {e}")))
            .collect()
    }
}

fn exit_status(reports: &[BoundReport]) -> i32 {
    if reports.iter().all(|r| r.status.is_success()) {
        EXIT_OK
    } else {
        EXIT_NOT_CERTIFIED
    }
}

fn open_sink<'a>(
    path: &Option<PathBuf>,
    stdout: &'a mut dyn Write,
) -> io::Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(stdout),
    })
}

fn report_errors(stderr: &mut dyn Write, errors: &[String]) -> i32 {
    for e in errors {
        let _ = writeln!(stderr, "error: {e}");
    }
    EXIT_USAGE
}

fn run_eval(args: &CommonArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let config = match RunConfig::from_args(args) {
        Ok(c) => c,
        Err(errors) => return report_errors(stderr, &errors),
    };
    let reports = match config.evaluate(&config.params) {
        Ok(r) => r,
        Err(e) => return report_errors(stderr, &[e]),
    };
    let text = match args.format {
        Format::Table => output::table(&config, &reports),
        Format::Json => output::json(&config, &reports),
        Format::Csv => output::csv(&reports),
    };
    let written = open_sink(&args.out, stdout).and_then(|mut w| w.write_all(text.as_bytes()));
    if let Err(e) = written {
        return report_errors(stderr, &[format!("cannot write report: {e}")]);
    }
    for r in &reports {
        if !r.status.is_success() {
            let _ = writeln!(stderr, "{}: {}", r.theorem, r.status);
        }
    }
    exit_status(&reports)
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match &cli.command {
        Command::Eval(args) => run_eval(args, stdout, stderr),
        Command::Sweep(args) => sweep::run_sweep(args, stdout, stderr),
    }
}
