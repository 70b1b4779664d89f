//! `chainlab` — experiment runner for the harmonic-chain laboratory.
//!
//! Every subcommand reads its configuration from defaults, optionally a
//! JSON config file (`--config`), and finally command-line flags, in
//! increasing precedence. The run's report is printed as JSON on stdout;
//! CSV/JSON artifacts go to `--out-dir`.
//!
//! Exit codes: 0 all assertions passed; 1 an assertion failed; 2 usage or
//! configuration error; 3 internal numerical error.

mod artifacts;
mod commands;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use std::path::PathBuf;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad config, out-of-domain parameters → exit 2.
    Usage(String),
    /// Numerical or construction failure inside an experiment → exit 3.
    Numerical(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical error: {m}"),
        }
    }
}

impl From<chainlab::Error> for CliError {
    fn from(e: chainlab::Error) -> Self {
        match e {
            chainlab::Error::Domain(_) | chainlab::Error::Precondition(_) => {
                CliError::Usage(e.to_string())
            }
            chainlab::Error::Construction(_) | chainlab::Error::Internal(_) => {
                CliError::Numerical(e.to_string())
            }
        }
    }
}

#[derive(Parser)]
#[command(name = "chainlab", version, about = "Harmonic-chain numerical laboratory")]
struct Cli {
    /// JSON config file for the subcommand; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Directory for CSV/JSON artifacts
    #[arg(long, global = true, default_value = "artifacts")]
    out_dir: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate J_n(t) and cross-check it against the quadrature oracle
    Bessel(BesselArgs),
    /// Evolve initial data with the exact Bessel-kernel propagator
    Propagate(PropagateArgs),
    /// Cross-validate the propagator against velocity-Verlet integration
    Oracle(OracleArgs),
    /// Upper envelope and cos-norm growth experiments
    Bounds(BoundsArgs),
    /// Constructive sqrt(t) lower-bound experiments
    Adversarial(AdversarialArgs),
    /// Random initial data: covariance, normality, and sup growth
    Ensemble(EnsembleArgs),
    /// Limiting Gaussian process: covariance and the sup bound
    Gaussian(GaussianArgs),
    /// Full regression battery with deterministic artifacts
    Suite(SuiteArgs),
}

#[derive(Args)]
struct BesselArgs {
    /// Order n
    #[arg(long)]
    n: Option<i64>,
    /// Argument t
    #[arg(long)]
    t: Option<f64>,
    /// Skip the quadrature-oracle cross-check
    #[arg(long)]
    no_oracle: bool,
}

#[derive(Args)]
struct PropagateArgs {
    #[arg(long)]
    omega1: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    /// Per-site truncation tolerance
    #[arg(long)]
    eps: Option<f64>,
    /// Use a Kronecker delta at this site as initial data
    #[arg(long)]
    delta_site: Option<i64>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    omega1: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Elementwise agreement tolerance
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    omega1: Option<f64>,
    #[arg(long)]
    n_samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct AdversarialArgs {
    /// Target chain time T
    #[arg(long = "T")]
    target_time: Option<f64>,
    #[arg(long)]
    omega1: Option<f64>,
    /// Build a multi-scale sequence with this many bumps instead
    #[arg(long)]
    multiscale: Option<usize>,
}

#[derive(Args)]
struct EnsembleArgs {
    /// One of: covariance, normality, sup_growth
    #[arg(long)]
    mode: Option<String>,
    /// One of: rademacher, uniform_pm1, gaussian
    #[arg(long)]
    distribution: Option<String>,
    #[arg(long)]
    n_samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    omega1: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
}

#[derive(Args)]
struct GaussianArgs {
    /// Threshold a
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    n_points: Option<usize>,
    #[arg(long)]
    n_samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct SuiteArgs {}

/// Loads the subcommand's config document: defaults, then the file.
fn load_config<T: DeserializeOwned + Default>(path: &Option<PathBuf>) -> Result<T, CliError> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", p.display())))
        }
    }
}

fn init_threads() {
    if let Ok(v) = std::env::var("CHAINLAB_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn run(cli: Cli) -> Result<chainlab::ExperimentReport, CliError> {
    let out_dir = cli.out_dir.clone();
    match cli.command {
        Command::Bessel(a) => {
            let mut cfg: commands::BesselConfig = load_config(&cli.config)?;
            if let Some(n) = a.n {
                cfg.n = n;
            }
            if let Some(t) = a.t {
                cfg.t = t;
            }
            if a.no_oracle {
                cfg.oracle_check = false;
            }
            commands::bessel(&cfg)
        }
        Command::Propagate(a) => {
            let mut cfg: commands::PropagateConfig = load_config(&cli.config)?;
            if let Some(v) = a.omega1 {
                cfg.omega1 = v;
            }
            if let Some(v) = a.t {
                cfg.t = v;
            }
            if let Some(v) = a.eps {
                cfg.eps = v;
            }
            if let Some(site) = a.delta_site {
                cfg.q0 = chainlab::LatticeWindow::delta(site);
            }
            commands::propagate(&cfg, &out_dir)
        }
        Command::Oracle(a) => {
            let mut cfg: commands::OracleConfig = load_config(&cli.config)?;
            if let Some(v) = a.omega1 {
                cfg.omega1 = v;
            }
            if let Some(v) = a.t {
                cfg.t = v;
            }
            if let Some(v) = a.size {
                cfg.size = v;
            }
            if let Some(v) = a.dt {
                cfg.dt = v;
            }
            if let Some(v) = a.seed {
                cfg.seed = v;
            }
            if let Some(v) = a.tol {
                cfg.tol = v;
            }
            commands::oracle(&cfg, &out_dir)
        }
        Command::Bounds(a) => {
            let mut cfg: commands::BoundsConfig = load_config(&cli.config)?;
            if let Some(v) = a.omega1 {
                cfg.omega1 = v;
            }
            if let Some(v) = a.n_samples {
                cfg.n_samples = v;
            }
            if let Some(v) = a.seed {
                cfg.seed = v;
            }
            commands::bounds(&cfg, &out_dir)
        }
        Command::Adversarial(a) => {
            let mut cfg: commands::AdversarialConfig = load_config(&cli.config)?;
            if let Some(v) = a.target_time {
                cfg.target_time = v;
            }
            if let Some(v) = a.omega1 {
                cfg.omega1 = v;
            }
            if let Some(v) = a.multiscale {
                cfg.multiscale = Some(v);
            }
            commands::adversarial(&cfg, &out_dir)
        }
        Command::Ensemble(a) => {
            let mut cfg: commands::EnsembleConfig = load_config(&cli.config)?;
            if let Some(v) = a.mode {
                cfg.mode = v;
            }
            if let Some(v) = a.distribution {
                cfg.distribution = v;
            }
            if let Some(v) = a.n_samples {
                cfg.n_samples = v;
            }
            if let Some(v) = a.seed {
                cfg.seed = v;
            }
            if let Some(v) = a.omega1 {
                cfg.omega1 = v;
            }
            if let Some(v) = a.t {
                cfg.t = v;
            }
            commands::ensemble(&cfg, &out_dir)
        }
        Command::Gaussian(a) => {
            let mut cfg: commands::GaussianConfig = load_config(&cli.config)?;
            if let Some(v) = a.a {
                cfg.a = v;
            }
            if let Some(v) = a.delta {
                cfg.delta = v;
            }
            if let Some(v) = a.n_points {
                cfg.n_points = v;
            }
            if let Some(v) = a.n_samples {
                cfg.n_samples = v;
            }
            if let Some(v) = a.seed {
                cfg.seed = v;
            }
            commands::gaussian(&cfg, &out_dir)
        }
        Command::Suite(_) => {
            let cfg: commands::SuiteConfig = load_config(&cli.config)?;
            commands::suite(&cfg, &out_dir)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    init_threads();
    match run(cli) {
        Ok(report) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            std::process::exit(if report.passed() { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(match e {
                CliError::Usage(_) => 2,
                CliError::Numerical(_) => 3,
            });
        }
    }
}
