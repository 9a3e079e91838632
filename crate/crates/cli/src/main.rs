//! Command-line front end for the derivative/Volterra chaos suites.
//!
//! Exit codes: 0 every check passed, 1 some check failed, 2 usage or
//! configuration error, 3 capacity or approximation error.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use derivchaos::experiments::{run_suites, serialize_reports, Format, SuiteConfig};
use derivchaos::{Error, C64};

const EXIT_FAILED_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

#[derive(Parser)]
#[command(name = "derivchaos", version, about = "Chaos certificates for D^n and the Volterra operator on [a,b]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Table of ||D^n e_k|| / ||e_k|| against the closed form
    Norms(Flags),
    /// Eigenfunction residuals and eigenspace ranks of D^n
    Eigen(Flags),
    /// Growth sequence ||A^j f||^(1/j) for A = D^n or V^n
    Growth(Flags),
    /// Right-inverse and growth hypotheses on polynomials
    Criterion(Flags),
    /// A periodic point of D^n near a polynomial
    Periodic(Flags),
    /// One vector whose orbit visits every target
    Shadow(Flags),
    /// Ratio of the graph norm to the sum-of-derivatives norm
    Normequiv(Flags),
    /// Runs the suite(s) described by --config
    Suite(Flags),
}

impl Command {
    fn split(self) -> (Option<&'static str>, Flags) {
        match self {
            Command::Norms(f) => (Some("norm-table"), f),
            Command::Eigen(f) => (Some("eigen"), f),
            Command::Growth(f) => (Some("growth"), f),
            Command::Criterion(f) => (Some("criterion"), f),
            Command::Periodic(f) => (Some("periodic"), f),
            Command::Shadow(f) => (Some("shadow"), f),
            Command::Normequiv(f) => (Some("norm-equivalence"), f),
            Command::Suite(f) => (None, f),
        }
    }
}

/// Every flag overrides the config-file value of the same key.
#[derive(Args, Default)]
struct Flags {
    /// JSON suite config (one object or an array)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Left endpoint [default: 0]
    #[arg(long = "a", allow_negative_numbers = true)]
    a: Option<f64>,
    /// Right endpoint [default: 1]
    #[arg(long = "b", allow_negative_numbers = true)]
    b: Option<f64>,
    /// Operator order [default: 1]
    #[arg(long = "n")]
    n: Option<usize>,
    /// sup or lp [default: sup]
    #[arg(long)]
    norm: Option<String>,
    /// Exponent for lp [default: 2]
    #[arg(long = "p")]
    p: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Polynomial as comma-separated coefficients of 1, x, x^2, ...
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
    /// Semicolon-separated polynomials, e.g. "1;0,1"
    #[arg(long, allow_hyphen_values = true)]
    targets: Option<String>,
    /// Eigenvalue such as 3+4i; repeatable
    #[arg(long, allow_hyphen_values = true)]
    lambda: Vec<String>,
    /// b (Volterra power) or d (derivative power)
    #[arg(long)]
    op: Option<String>,
    #[arg(long)]
    period: Option<usize>,
    #[arg(long)]
    truncation: Option<usize>,
    /// Number of random polynomials
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    max_degree: Option<usize>,
    /// Record wall-clock durations (reports are then not reproducible)
    #[arg(long)]
    timing: bool,
    /// json or csv
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output file [default: standard output]
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_poly(s: &str) -> Result<Vec<f64>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad polynomial coefficient {t:?} in {s:?}")))
        })
        .collect()
}

fn parse_lambda(s: &str) -> Result<[f64; 2], Error> {
    let z = C64::from_str(s.trim()).map_err(|_| Error::Config(format!("bad eigenvalue {s:?}")))?;
    Ok([z.re, z.im])
}

impl Flags {
    fn apply(&self, cfg: &mut SuiteConfig) -> Result<(), Error> {
        macro_rules! set {
            ($($flag:ident => $field:ident),*) => {
                $(if let Some(v) = &self.$flag { cfg.$field = v.clone(); })*
            };
        }
        set!(a => a, b => b, n => n, norm => norm, p => p, eps => epsilon, kmax => k_max,
             nmax => n_max, seed => seed, op => operator, max_degree => max_degree);
        if let Some(v) = self.period {
            cfg.period = Some(v);
        }
        if let Some(v) = self.truncation {
            cfg.truncation = Some(v);
        }
        if let Some(v) = self.samples {
            cfg.samples = Some(v);
        }
        if let Some(p) = &self.poly {
            cfg.poly = Some(parse_poly(p)?);
        }
        if let Some(t) = &self.targets {
            cfg.targets = Some(t.split(';').map(parse_poly).collect::<Result<_, _>>()?);
        }
        if !self.lambda.is_empty() {
            cfg.lambdas = Some(self.lambda.iter().map(|s| parse_lambda(s)).collect::<Result<_, _>>()?);
        }
        if self.timing {
            cfg.timing = true;
        }
        Ok(())
    }
}

fn configs(suite: Option<&str>, flags: &Flags) -> Result<Vec<SuiteConfig>, Error> {
    let mut list = match &flags.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            SuiteConfig::list_from_json(&text)?
        }
        None if suite.is_none() => {
            return Err(Error::Config("the suite subcommand requires --config".into()))
        }
        None => vec![SuiteConfig::default()],
    };
    for cfg in &mut list {
        if let Some(s) = suite {
            cfg.suite = s.into();
        }
        flags.apply(cfg)?;
    }
    Ok(list)
}

fn run(cli: Cli) -> Result<bool, Error> {
    let (suite, flags) = cli.command.split();
    let format = Format::from_str(&flags.format)?;
    let list = configs(suite, &flags)?;
    let reports = run_suites(&list).into_iter().collect::<Result<Vec<_>, _>>()?;
    let bytes = serialize_reports(&reports, format);
    match &flags.out {
        Some(path) => fs::write(path, &bytes)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?,
        None => io::stdout()
            .write_all(&bytes)
            .map_err(|e| Error::Config(format!("cannot write output: {e}")))?,
    }
    for report in &reports {
        for row in report.failures() {
            eprintln!("FAIL {} {}: measured {:e}", report.suite, row.name, row.measured);
        }
    }
    Ok(reports.iter().all(|r| r.all_pass()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED_CHECK),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_capacity() { EXIT_CAPACITY } else { EXIT_USAGE })
        }
    }
}
