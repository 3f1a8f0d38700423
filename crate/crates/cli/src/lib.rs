//! The `itereq` command line.
//!
//! Subcommands `roots`, `reduce`, `recurrence`, `verify` and `boros` each
//! produce one [`Report`]. With `--json` reports are printed as JSON (one
//! object per line in batch mode); otherwise as text. When `--coeffs` is
//! omitted, `roots`, `reduce` and `verify` read one coefficient list per
//! line from standard input.
//!
//! Exit codes: 0 success, 2 usage error, 3 numerical failure.

pub mod report;
pub mod text;

use std::ffi::OsString;
use std::io::{BufRead, Write};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use itereq_core::lab::{Family, DEFAULT_GRID};
use itereq_core::{Interval, ToleranceConfig};

pub use report::Report;
use report::VerifyTarget;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numerical(String),
    /// Per-line failures in batch mode, already written to stderr.
    #[error("{failed} of {total} inputs failed")]
    Batch {
        failed: usize,
        total: usize,
        code: i32,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Batch { code, .. } => *code,
        }
    }
}

impl From<itereq_core::Error> for CliError {
    fn from(e: itereq_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub tolerances: ToleranceConfig,
    pub output_format: OutputFormat,
    pub grid_size: usize,
    /// Verification tolerance.
    pub tol: f64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.grid_size < 3 {
            return Err(CliError::Usage(format!(
                "--grid must be at least 3, got {}",
                self.grid_size
            )));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(CliError::Usage(format!(
                "--tol must be positive, got {}",
                self.tol
            )));
        }
        self.tolerances.validate()?;
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "itereq",
    version,
    about = "Polynomial-like iterative functional equations"
)]
pub struct Cli {
    /// Print reports as JSON
    #[arg(long, global = true)]
    pub json: bool,
    /// Verification tolerance
    #[arg(long, global = true, default_value = "1e-9")]
    pub tol: f64,
    /// Number of grid points for verification
    #[arg(long, global = true, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct EquationArgs {
    /// Ascending coefficients a_0,a_1,...,a_N; read from stdin when omitted
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// Divide the coefficients by the leading one
    #[arg(long)]
    pub monic: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic roots with multiplicities
    Roots(EquationArgs),
    /// Applicable order reductions
    Reduce {
        #[command(flatten)]
        eq: EquationArgs,
        /// Domain of the unknown function
        #[arg(long, default_value = "(-inf,inf)", allow_hyphen_values = true)]
        domain: String,
    },
    /// Closed-form solution of the recurrence against direct iteration
    Recurrence {
        #[command(flatten)]
        eq: EquationArgs,
        /// Initial values x_0,...,x_{N-1}
        #[arg(long, allow_hyphen_values = true)]
        init: String,
        /// Last index to compute
        #[arg(long, default_value_t = 30)]
        terms: usize,
    },
    /// Check a candidate `affine:r,c` or `power:c,rho` against an equation
    Verify {
        #[command(flatten)]
        eq: EquationArgs,
        /// Check f^n(x) = f(x)^n / x^(n-1) instead of an iterative equation
        #[arg(long, conflicts_with = "coeffs")]
        boros: Option<usize>,
        /// `affine:r,c` for r x + c, or `power:c,rho` for c x^rho
        #[arg(long, allow_hyphen_values = true)]
        candidate: String,
        /// Domain of the candidate (default: the real line, or (0,inf) for
        /// power maps)
        #[arg(long, allow_hyphen_values = true)]
        domain: Option<String>,
    },
    /// Classify and verify the solutions of f^n(x) = f(x)^n / x^(n-1)
    Boros {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "(0,inf)")]
        interval: String,
    },
}

/// Comma- or whitespace-separated reals.
pub fn parse_reals(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("malformed number `{t}`")))
        })
        .collect()
}

pub fn parse_coeffs(s: &str, monic: bool) -> Result<Vec<f64>, CliError> {
    let mut c = parse_reals(s)?;
    if c.len() < 2 {
        return Err(CliError::Usage(format!(
            "need at least two coefficients, got {}",
            c.len()
        )));
    }
    if monic {
        let lead = *c.last().expect("nonempty");
        if lead == 0.0 {
            return Err(CliError::Usage("leading coefficient is zero".into()));
        }
        c.iter_mut().for_each(|v| *v /= lead);
    }
    Ok(c)
}

pub fn parse_interval(s: &str) -> Result<Interval, CliError> {
    s.parse::<Interval>()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn emit(out: &mut dyn Write, report: &Report, cfg: &RunConfig, batch: bool) -> std::io::Result<()> {
    match cfg.output_format {
        OutputFormat::Json if batch => writeln!(out, "{}", serde_json::to_string(report)?),
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(report)?),
        OutputFormat::Text if batch => writeln!(out, "{}", text::render(report)),
        OutputFormat::Text => write!(out, "{}", text::render(report)),
    }
}

/// Coefficient lists from `--coeffs` or, failing that, from stdin lines.
fn coefficient_lists(
    args: &EquationArgs,
    stdin: &mut dyn BufRead,
) -> Result<Vec<Result<Vec<f64>, CliError>>, CliError> {
    if let Some(s) = &args.coeffs {
        return Ok(vec![parse_coeffs(s, args.monic)]);
    }
    let mut lists = Vec::new();
    for line in stdin.lines() {
        let line = line.map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        lists.push(parse_coeffs(trimmed, args.monic));
    }
    if lists.is_empty() {
        return Err(CliError::Usage(
            "no coefficients given: use --coeffs or pipe one list per line".into(),
        ));
    }
    Ok(lists)
}

fn execute(
    command: &Command,
    cfg: &RunConfig,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let tolerances = &cfg.tolerances;
    let per_equation = |eq: &EquationArgs,
                        stdin: &mut dyn BufRead,
                        out: &mut dyn Write,
                        err: &mut dyn Write,
                        build: &dyn Fn(Vec<f64>) -> Result<Report, CliError>|
     -> Result<(), CliError> {
        let lists = coefficient_lists(eq, stdin)?;
        let batch = eq.coeffs.is_none();
        if !batch {
            let report = lists.into_iter().next().expect("one list")?;
            return emit(out, &build(report)?, cfg, false)
                .map_err(|e| CliError::Usage(format!("writing output: {e}")));
        }
        let total = lists.len();
        let (mut failed, mut code) = (0, EXIT_OK);
        for (i, list) in lists.into_iter().enumerate() {
            match list.and_then(build) {
                Ok(report) => emit(out, &report, cfg, true)
                    .map_err(|e| CliError::Usage(format!("writing output: {e}")))?,
                Err(e) => {
                    let _ = writeln!(err, "error: input {}: {e}", i + 1);
                    failed += 1;
                    code = code.max(e.exit_code());
                }
            }
        }
        if failed == 0 {
            Ok(())
        } else {
            Err(CliError::Batch {
                failed,
                total,
                code,
            })
        }
    };

    match command {
        Command::Roots(eq) => per_equation(eq, stdin, out, err, &|c| {
            Ok(Report::Roots(report::roots_report(&c, tolerances)?))
        }),
        Command::Reduce { eq, domain } => {
            let domain = parse_interval(domain)?;
            per_equation(eq, stdin, out, err, &|c| {
                Ok(Report::Reduce(report::reduce_report(
                    &c, domain, tolerances,
                )?))
            })
        }
        Command::Recurrence { eq, init, terms } => {
            let coeffs = parse_coeffs(
                eq.coeffs
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("recurrence needs --coeffs".into()))?,
                eq.monic,
            )?;
            let init = parse_reals(init)?;
            let r = report::recurrence_report(&coeffs, &init, *terms, tolerances)?;
            emit(out, &Report::Recurrence(r), cfg, false)
                .map_err(|e| CliError::Usage(format!("writing output: {e}")))
        }
        Command::Verify {
            eq,
            boros,
            candidate,
            domain,
        } => {
            let family: Family = candidate
                .parse()
                .map_err(|e: itereq_core::Error| CliError::Usage(e.to_string()))?;
            let domain = match domain {
                Some(d) => parse_interval(d)?,
                None if matches!(family, Family::Power { .. }) || boros.is_some() => {
                    Interval::positive_half_line()
                }
                None => Interval::real_line(),
            };
            if let Some(n) = boros {
                let r = report::verify_report(
                    VerifyTarget::Boros { n: *n },
                    family,
                    domain,
                    cfg.grid_size,
                    cfg.tol,
                )?;
                return emit(out, &Report::Verify(r), cfg, false)
                    .map_err(|e| CliError::Usage(format!("writing output: {e}")));
            }
            per_equation(eq, stdin, out, err, &|c| {
                Ok(Report::Verify(report::verify_report(
                    VerifyTarget::Iterative { coeffs: c },
                    family,
                    domain,
                    cfg.grid_size,
                    cfg.tol,
                )?))
            })
        }
        Command::Boros { n, interval } => {
            let interval = parse_interval(interval)?;
            let r = report::boros_report(*n, interval, tolerances, cfg.grid_size, cfg.tol)?;
            emit(out, &Report::Boros(r), cfg, false)
                .map_err(|e| CliError::Usage(format!("writing output: {e}")))
        }
    }
}

/// Parses `args` and runs the command; returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let cfg = RunConfig {
        tolerances: ToleranceConfig::default(),
        output_format: if cli.json {
            OutputFormat::Json
        } else {
            OutputFormat::Text
        },
        grid_size: cli.grid,
        tol: cli.tol,
    };
    let result = cfg
        .validate()
        .and_then(|()| execute(&cli.command, &cfg, stdin, out, err));
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
