//! Scenario-driven front end: parses JSON configs, runs the requested checks
//! and writes `profile.csv`, `report.txt` and `report.json`.

mod catalog;
mod output;
mod runner;
mod scenario;
mod suites;

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::Parser;

pub use catalog::{bundled, find_bundled, list_examples, CatalogEntry};
pub use output::{profile_csv, render_text};
pub use runner::{execute, CheckOutcome, RunOutcome, ScenarioReport};
pub use scenario::{
    CheckSpec, ComponentSpec, GridSpec, PoleCase, Prepared, QuadratureConfig, RandomSuite, ScalarAtom, ScalarSpec,
    Scenario, TermSpec,
};
pub use suites::{random_pole_cases, random_vanishing_instances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl ConfigError {
    pub fn new(msg: impl Into<String>) -> Self {
        ConfigError(msg.into())
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunError {
    Config(String),
    Numeric(String),
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) | RunError::Io(_) => EXIT_CONFIG,
            RunError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(m) => write!(f, "config error: {m}"),
            RunError::Numeric(m) => write!(f, "numeric failure: {m}"),
            RunError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e.0)
    }
}

/// Command-line overrides applied on top of a scenario.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub grid_max: Option<f64>,
    pub quad_nodes: Option<usize>,
}

#[derive(Debug, Parser)]
#[command(name = "holocurve", version, about = "Verify value-distribution checks on polynomial maps C^p -> P^n")]
pub struct Args {
    /// Scenario JSON file, or the name of a bundled scenario.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, value_name = "DIR", default_value = "holocurve-out")]
    pub out: PathBuf,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, value_name = "N")]
    pub threads: Option<usize>,
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Largest radius of the grid.
    #[arg(long, value_name = "R")]
    pub grid_max: Option<f64>,
    /// Sphere quadrature nodes.
    #[arg(long, value_name = "N")]
    pub quad_nodes: Option<usize>,
    /// Machine-readable output on stdout.
    #[arg(long)]
    pub json: bool,
    /// List bundled scenarios.
    #[arg(long)]
    pub list: bool,
}

impl Args {
    pub fn overrides(&self) -> Overrides {
        Overrides { seed: self.seed, grid_max: self.grid_max, quad_nodes: self.quad_nodes }
    }
}

/// Reads a scenario from a file, falling back to the bundled catalog when
/// `path` does not exist but names a bundled scenario.
pub fn load_scenario(path: &Path) -> Result<Scenario, RunError> {
    if !path.exists() {
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
        if path.components().count() == 1 {
            if let Some(sc) = find_bundled(name) {
                return Ok(sc);
            }
        }
        return Err(RunError::Config(format!("cannot read {}: no such file or bundled scenario", path.display())));
    }
    let text = std::fs::read_to_string(path).map_err(|e| RunError::Config(format!("cannot read {}: {e}", path.display())))?;
    Ok(Scenario::from_json(&text)?)
}

/// Runs one scenario and writes its artifacts into `out`. Returns the exit
/// code; diagnostics go to standard error.
pub fn run(config: &Path, out: &Path, overrides: &Overrides, json: bool) -> i32 {
    match run_inner(config, out, overrides) {
        Ok(outcome) => {
            if json {
                print!("{}", outcome.json());
            } else {
                print!("{}", render_text(&outcome.report));
            }
            if outcome.report.passed {
                EXIT_OK
            } else {
                for c in outcome.report.checks.iter().filter(|c| !c.report.passed()) {
                    eprintln!("check '{}' failed", c.check);
                }
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            eprintln!("holocurve: {e}");
            e.exit_code()
        }
    }
}

fn run_inner(config: &Path, out: &Path, overrides: &Overrides) -> Result<RunOutcome, RunError> {
    let scenario = load_scenario(config)?;
    let prepared = scenario.prepare(overrides)?;
    let outcome = execute(&prepared)?;
    outcome.write(out)?;
    Ok(outcome)
}

/// Entry point for the binary: parses `argv` and returns the exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if args.list {
        print!("{}", list_examples(args.json));
        return EXIT_OK;
    }
    let Some(config) = args.config.clone() else {
        eprintln!("holocurve: --config PATH or --list is required");
        return EXIT_CONFIG;
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = args.threads {
        if t == 0 {
            eprintln!("holocurve: --threads must be at least 1");
            return EXIT_CONFIG;
        }
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("holocurve: cannot start worker pool: {e}");
            return EXIT_NUMERIC;
        }
    };
    let overrides = args.overrides();
    pool.install(|| run(&config, &args.out, &overrides, args.json))
}
