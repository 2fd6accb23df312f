use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wiener::config::{Command, ConfigError, Format, RunConfig, Settings, SEED_ENV};
use wiener::montecarlo::clt_experiment;
use wiener::report::ExperimentReport;
use wiener::suites;

const EXIT_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_ERROR: u8 = 3;

/// Exact Wiener-chaos computations and seeded Monte Carlo checks.
///
/// Exit status: 0 when every verdict passes, 1 when a verdict fails,
/// 2 for an invalid configuration, 3 for a computation or I/O error.
#[derive(Parser)]
#[command(name = "wiener", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Moments of 10 U + H3(V) and the root of its fourth cumulant
    Counterexample(Common),
    /// Fourth-cumulant decomposition, product formula and isometry on random kernels
    LemmaSuite(Common),
    /// Gamma mean, mixed-term inequality, contraction decay and Gaussian distances
    BoundsSuite(Common),
    /// Exact and simulated distances to the Gaussian along a block family
    Clt {
        #[command(flatten)]
        common: Common,
        /// dyadic_p2, mixed_p2_q3 or independent_blocks_M3
        #[arg(long)]
        family: Option<String>,
    },
    /// Positivity certificate for the fourth cumulant of a U + H5(V)
    Positivity(Common),
}

#[derive(Args)]
struct Common {
    /// JSON config file; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed (default: config file, then $WIENER_SEED, then 42)
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated, strictly increasing block counts
    #[arg(long, value_delimiter = ',')]
    n_grid: Option<Vec<usize>>,
    /// Monte Carlo sample size
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Report path (default: wiener-<command>.<format>)
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl Sub {
    fn split(self) -> (Command, Common, Option<String>) {
        match self {
            Sub::Counterexample(c) => (Command::Counterexample, c, None),
            Sub::LemmaSuite(c) => (Command::LemmaSuite, c, None),
            Sub::BoundsSuite(c) => (Command::BoundsSuite, c, None),
            Sub::Clt { common, family } => (Command::Clt, common, family),
            Sub::Positivity(c) => (Command::Positivity, c, None),
        }
    }
}

fn configure(sub: Sub) -> Result<RunConfig, ConfigError> {
    let (command, common, family) = sub.split();
    let file = match &common.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    let flags = Settings {
        command: None,
        seed: common.seed,
        n_grid: common.n_grid,
        samples: common.samples,
        output_path: common.output,
        format: common.format,
        family,
    };
    let env_seed = std::env::var(SEED_ENV).ok();
    RunConfig::resolve(command, flags, file, env_seed.as_deref())
}

fn execute(c: &RunConfig) -> Result<ExperimentReport, wiener::montecarlo::McError> {
    match c.command {
        Command::Counterexample => suites::counterexample(c.samples, c.seed),
        Command::LemmaSuite => suites::lemma_suite(c.seed),
        Command::BoundsSuite => suites::bounds_suite(c.seed, &c.n_grid),
        Command::Clt => clt_experiment(c.family, &c.n_grid, c.samples, c.seed),
        Command::Positivity => suites::positivity(),
    }
}

fn write(report: &ExperimentReport, c: &RunConfig) -> Result<(), String> {
    let file = File::create(&c.output_path).map_err(|e| e.to_string())?;
    let out = BufWriter::new(file);
    match c.format {
        Format::Csv => report.write_csv(out).map_err(|e| e.to_string()),
        Format::Json => report.write_json(out).map_err(|e| e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match configure(cli.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("wiener: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let report = match execute(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("wiener: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    print!("{}", report.summary_table());
    if let Err(e) = write(&report, &config) {
        eprintln!("wiener: cannot write {}: {e}", config.output_path.display());
        return ExitCode::from(EXIT_ERROR);
    }
    println!("report written to {}", config.output_path.display());
    let failures = report.failures();
    if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("wiener: {} verdict(s) failed: {}", failures.len(), failures.join(", "));
        ExitCode::from(EXIT_FAILED)
    }
}
