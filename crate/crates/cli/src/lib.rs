//! Command-line front end for `smoothmin`: argument and config-file parsing
//! plus the `hmin`, `figure1` and `verify` commands.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use thiserror::Error;

use smoothmin::asympt::{compression_curves, n_grid, EtaChoice};
use smoothmin::dist::iid_product;
use smoothmin::io::{format_sig, parse_distribution};
use smoothmin::psme::{build_certificate, solve_qp, solve_qp_distribution};
use smoothmin::verify::{run_suite, Suite};
use smoothmin::{Distribution, SortedSpectrum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_DELTA: f64 = 0.9;
pub const DEFAULT_EPS: f64 = 0.1;
pub const DEFAULT_N_MIN: usize = 50;
pub const DEFAULT_N_MAX: usize = 1000;
pub const DEFAULT_N_STEP: usize = 50;
pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("config file: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Compute(#[from] smoothmin::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => EXIT_USAGE,
            CliError::Io { .. } | CliError::Compute(_) => EXIT_FAILURE,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(name = "smoothmin", version, about = "Partially smoothed min-entropy and compression bounds")]
pub struct Cli {
    /// TOML file with per-command defaults; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate -H_min (= log2 f) for a distribution or its i.i.d. power.
    Hmin(HminArgs),
    /// Write the qubit compression bound curves as CSV or DAT.
    Figure1(Figure1Args),
    /// Run the randomized verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Default)]
pub struct HminArgs {
    /// Comma-separated probabilities, e.g. 0.9,0.1.
    #[arg(long, conflicts_with = "delta")]
    pub dist: Option<String>,
    /// Qubit shorthand for the distribution (delta, 1 - delta).
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Number of i.i.d. copies.
    #[arg(long)]
    pub n: Option<usize>,
    /// Build and check the semidefinite-program certificate.
    #[arg(long)]
    pub certify: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Dat,
}

#[derive(Debug, Args, Default)]
pub struct Figure1Args {
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub n_step: Option<usize>,
    /// Fixed eta for the information-spectrum converse (default: optimized).
    #[arg(long)]
    pub eta: Option<f64>,
    /// Output path (default: stdout).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Output format (default: from the file extension, else csv).
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Args, Default)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub hmin: HminConfig,
    #[serde(default)]
    pub figure1: Figure1Config,
    #[serde(default)]
    pub verify: VerifyConfig,
}

#[derive(Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HminConfig {
    pub dist: Option<String>,
    pub delta: Option<f64>,
    pub eps: Option<f64>,
    pub n: Option<usize>,
    pub certify: Option<bool>,
}

#[derive(Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Figure1Config {
    pub delta: Option<f64>,
    pub eps: Option<f64>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub n_step: Option<usize>,
    pub eta: Option<f64>,
    pub output: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub suite: Option<String>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
}

/// Parses a TOML config file body.
pub fn parse_config(text: &str) -> Result<ConfigFile, CliError> {
    toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
}

pub fn load_config(path: &Path) -> Result<ConfigFile, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_config(&text)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Explicit(Distribution),
    Qubit(f64),
}

impl Source {
    pub fn distribution(&self) -> Result<Distribution, CliError> {
        match self {
            Source::Explicit(p) => Ok(p.clone()),
            Source::Qubit(delta) => {
                Distribution::qubit(*delta).map_err(|e| usage(format!("--delta: {e}")))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HminRun {
    pub source: Source,
    pub eps: f64,
    pub n: usize,
    pub certify: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure1Run {
    pub delta: f64,
    pub eps: f64,
    pub grid: Vec<usize>,
    pub eta: EtaChoice,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRun {
    pub suites: Vec<Suite>,
    pub trials: usize,
    pub seed: u64,
}

fn check_eps(flag: &str, eps: f64) -> Result<f64, CliError> {
    if eps > 0.0 && eps < 1.0 {
        Ok(eps)
    } else {
        Err(usage(format!("{flag} must lie in (0, 1), got {eps}")))
    }
}

impl HminRun {
    pub fn resolve(args: &HminArgs, config: &HminConfig) -> Result<Self, CliError> {
        let source = match (&args.dist, args.delta) {
            (Some(d), _) => Source::Explicit(parse_distribution(d).map_err(|e| usage(format!("--dist: {e}")))?),
            (None, Some(delta)) => Source::Qubit(delta),
            (None, None) => match (&config.dist, config.delta) {
                (Some(_), Some(_)) => return Err(usage("config sets both `dist` and `delta`")),
                (Some(d), None) => {
                    Source::Explicit(parse_distribution(d).map_err(|e| usage(format!("config `dist`: {e}")))?)
                }
                (None, Some(delta)) => Source::Qubit(delta),
                (None, None) => return Err(usage("one of --dist or --delta is required")),
            },
        };
        if let Source::Qubit(delta) = source {
            if !(delta > 0.0 && delta < 1.0) {
                return Err(usage(format!("--delta must lie in (0, 1), got {delta}")));
            }
        }
        let eps = args.eps.or(config.eps).ok_or_else(|| usage("--eps is required"))?;
        let n = args.n.or(config.n).unwrap_or(1);
        if n == 0 {
            return Err(usage("--n must be at least 1"));
        }
        Ok(HminRun { source, eps: check_eps("--eps", eps)?, n, certify: args.certify || config.certify.unwrap_or(false) })
    }
}

impl Figure1Run {
    pub fn resolve(args: &Figure1Args, config: &Figure1Config) -> Result<Self, CliError> {
        let delta = args.delta.or(config.delta).unwrap_or(DEFAULT_DELTA);
        if !(delta > 0.0 && delta < 1.0) {
            return Err(usage(format!("--delta must lie in (0, 1), got {delta}")));
        }
        let eps = check_eps("--eps", args.eps.or(config.eps).unwrap_or(DEFAULT_EPS))?;
        let grid = n_grid(
            args.n_min.or(config.n_min).unwrap_or(DEFAULT_N_MIN),
            args.n_max.or(config.n_max).unwrap_or(DEFAULT_N_MAX),
            args.n_step.or(config.n_step).unwrap_or(DEFAULT_N_STEP),
        )
        .map_err(|e| usage(format!("--n-min/--n-max/--n-step: {e}")))?;
        let eta = match args.eta.or(config.eta) {
            None => EtaChoice::Optimize,
            Some(e) if e > 0.0 && e < 1.0 - eps => EtaChoice::Fixed(e),
            Some(e) => return Err(usage(format!("--eta must lie in (0, 1 - eps), got {e}"))),
        };
        let output = args.output.clone().or_else(|| config.output.clone());
        let format = args.format.or(config.format).unwrap_or_else(|| match &output {
            Some(p) if p.extension().is_some_and(|e| e == "dat") => OutputFormat::Dat,
            _ => OutputFormat::Csv,
        });
        Ok(Figure1Run { delta, eps, grid, eta, output, format })
    }
}

impl VerifyRun {
    pub fn resolve(args: &VerifyArgs, config: &VerifyConfig) -> Result<Self, CliError> {
        let suite = args.suite.as_deref().or(config.suite.as_deref()).unwrap_or("all");
        let suites = if suite == "all" {
            Suite::ALL.to_vec()
        } else {
            vec![suite.parse::<Suite>().map_err(|e| usage(format!("--suite: {e}")))?]
        };
        let trials = args.trials.or(config.trials).unwrap_or(DEFAULT_TRIALS);
        if trials == 0 {
            return Err(usage("--trials must be at least 1"));
        }
        Ok(VerifyRun { suites, trials, seed: args.seed.or(config.seed).unwrap_or(DEFAULT_SEED) })
    }
}

/// Report lines for `hmin`.
pub fn cmd_hmin(run: &HminRun) -> Result<String, CliError> {
    let p = run.source.distribution()?;
    let spec = if run.n == 1 {
        SortedSpectrum::from_distribution(&p)
    } else {
        SortedSpectrum::from_ensemble(&iid_product(&p, run.n)?)?
    };
    let sol = solve_qp(&spec, run.eps)?;
    let log2_f = sol.log2_f.log2();
    let mut out = String::new();
    out.push_str(&format!("neg_hmin {}\n", format_sig(log2_f, 12)));
    out.push_str(&format!("hmin {}\n", format_sig(-log2_f, 12)));
    out.push_str(&format!("rate {}\n", format_sig(log2_f / run.n as f64, 12)));
    out.push_str(&format!("log2_a_star {}\n", format_sig(sol.log2_half_a + 1.0, 12)));
    out.push_str(&format!("a_star {}\n", format_sig(sol.a_star(), 12)));
    out.push_str(&format!("achieved_overlap {}\n", format_sig(sol.achieved_overlap, 12)));
    if run.certify {
        let flat = if run.n == 1 { p } else { p.flat_power(run.n)? };
        let flat_sol = solve_qp_distribution(&flat, run.eps)?;
        let cert = build_certificate(&flat, run.eps, &flat_sol)?;
        out.push_str(&format!("primal_value {}\n", format_sig(cert.primal_value, 12)));
        out.push_str(&format!("dual_value {}\n", format_sig(cert.dual_value, 12)));
        out.push_str(&format!("relative_gap {:.3e}\n", cert.relative_gap()));
        out.push_str(&format!("dual_max_eigenvalue {:.3e}\n", cert.dual_max_eigenvalue));
        out.push_str(&format!("worst_violation {:.3e}\n", cert.worst_violation()));
    }
    Ok(out)
}

/// Curve file contents for `figure1`.
pub fn cmd_figure1(run: &Figure1Run) -> Result<String, CliError> {
    let curves = compression_curves(run.delta, run.eps, &run.grid, &run.eta)?;
    Ok(match run.format {
        OutputFormat::Csv => curves.to_csv(),
        OutputFormat::Dat => curves.to_dat(),
    })
}

/// Report text for `verify` and whether every suite passed.
pub fn cmd_verify(run: &VerifyRun) -> (String, bool) {
    let mut out = String::new();
    let mut all = true;
    for &suite in &run.suites {
        let report = run_suite(suite, run.trials, run.seed);
        all &= report.passed();
        out.push_str(&report.to_string());
    }
    out.push_str(if all { "verify: PASS\n" } else { "verify: FAIL\n" });
    (out, all)
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source }),
    }
}

/// Executes a parsed command line and returns the exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let config = match &cli.config {
        Some(path) => load_config(path)?,
        None => ConfigFile::default(),
    };
    match &cli.command {
        Command::Hmin(args) => {
            let text = cmd_hmin(&HminRun::resolve(args, &config.hmin)?)?;
            write_output(None, &text, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Figure1(args) => {
            let run = Figure1Run::resolve(args, &config.figure1)?;
            let text = cmd_figure1(&run)?;
            write_output(run.output.as_deref(), &text, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let (text, passed) = cmd_verify(&VerifyRun::resolve(args, &config.verify)?);
            write_output(None, &text, stdout)?;
            Ok(if passed { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}
