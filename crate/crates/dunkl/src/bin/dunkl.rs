//! Thin command-line front end over the verification suites.
//!
//! Three subcommands:
//!
//! * `describe` — print the resolved configuration and the statement each
//!   selected suite verifies, without computing anything;
//! * `run` — execute the selected suites and write `summary.txt`,
//!   `checks.csv`, `constants.csv`, and `report.toml` into the output
//!   directory;
//! * `report` — re-render the files of a previous run from its
//!   `report.toml`, without recomputing.
//!
//! Configuration comes from an optional TOML file (`--config`), with every
//! value overridable by a flag. Exit codes: 0 when every check passed, 1 for
//! usage or configuration errors, 2 when a numerical check failed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dunkl::config::RunConfig;
use dunkl::report::RunReport;
use dunkl::suites;
use dunkl::Error;

#[derive(Parser)]
#[command(
    name = "dunkl",
    version,
    about = "Verification runner for weighted kernels, transforms, translations and maximal operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the resolved configuration and planned suites without computing
    Describe(ConfigArgs),
    /// Execute the selected suites and write the report files
    Run(ConfigArgs),
    /// Re-render the report files of a previous run without recomputing
    Report {
        /// Directory holding the report.toml of a previous run
        #[arg(long, default_value = "dunkl-report")]
        dir: PathBuf,
    },
}

/// Config file plus per-field overrides. Every flag falls back to the file's
/// value, and the file's fields fall back to the documented defaults.
#[derive(Args)]
struct ConfigArgs {
    /// TOML configuration file; the flags below override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Multiplicity components (comma-separated); one value broadcasts
    #[arg(long, value_delimiter = ',')]
    kappa: Option<Vec<f64>>,
    /// Ambient dimension (1..=3)
    #[arg(long)]
    dim: Option<usize>,
    /// Nodes per axis (even, 8..=4096)
    #[arg(long)]
    grid_size: Option<usize>,
    /// Domain half-width L; the grid covers [-L, L]^dim
    #[arg(long)]
    half_width: Option<f64>,
    /// Dense quadrature order for kernel and product-measure integrals
    #[arg(long)]
    quadrature_order: Option<usize>,
    /// Smallest radius of the maximal-operator schedule
    #[arg(long)]
    radius_min: Option<f64>,
    /// Largest radius of the maximal-operator schedule
    #[arg(long)]
    radius_max: Option<f64>,
    /// Number of radii in the geometric schedule
    #[arg(long)]
    radius_count: Option<usize>,
    /// Gaussian mollification time for the spectral ball operator
    #[arg(long)]
    mollification: Option<f64>,
    /// Suites to run (comma-separated subset of the seven names)
    #[arg(long, value_delimiter = ',')]
    suites: Option<Vec<String>>,
    /// Directory receiving summary.txt, checks.csv, constants.csv, report.toml
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Seed for every randomized sweep
    #[arg(long)]
    seed: Option<u64>,
    /// Worker-thread cap for parallel sweeps (0 = one per core)
    #[arg(long)]
    workers: Option<usize>,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<RunConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_path(path)?,
            None => RunConfig::default(),
        };
        if let Some(v) = &self.kappa {
            cfg.kappa = v.clone();
        }
        if let Some(v) = self.dim {
            cfg.dim = v;
        }
        if let Some(v) = self.grid_size {
            cfg.grid_size = v;
        }
        if let Some(v) = self.half_width {
            cfg.half_width = v;
        }
        if let Some(v) = self.quadrature_order {
            cfg.quadrature_order = v;
        }
        if let Some(v) = self.radius_min {
            cfg.radius_min = v;
        }
        if let Some(v) = self.radius_max {
            cfg.radius_max = v;
        }
        if let Some(v) = self.radius_count {
            cfg.radius_count = v;
        }
        if let Some(v) = self.mollification {
            cfg.mollification = v;
        }
        if let Some(v) = &self.suites {
            cfg.suites = v.clone();
        }
        if let Some(v) = &self.output_dir {
            cfg.output_dir = v.clone();
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.workers {
            cfg.workers = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(classify(&e))
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Describe(args) => {
            let cfg = args.resolve()?;
            print!("{}", suites::describe(&cfg));
            Ok(ExitCode::SUCCESS)
        }
        Command::Run(args) => {
            let cfg = args.resolve()?;
            cfg.install_worker_cap();
            let report = suites::run_suites(&cfg)?;
            report.write_dir(&cfg.output_dir)?;
            print!("{}", report.summary_text());
            println!();
            println!("report files written to {}", cfg.output_dir.display());
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        Command::Report { dir } => {
            let report = RunReport::load_dir(&dir)?;
            report.write_dir(&dir)?;
            print!("{}", report.summary_text());
            Ok(ExitCode::from(report.exit_code() as u8))
        }
    }
}

/// Usage and configuration problems exit 1; numerical failures exit 2.
fn classify(e: &Error) -> u8 {
    match e {
        Error::Config(_)
        | Error::InvalidParameter { .. }
        | Error::InvalidMultiplicity(_)
        | Error::Io(_) => 1,
        _ => 2,
    }
}
