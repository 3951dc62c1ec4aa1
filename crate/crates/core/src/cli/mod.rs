//! The `scrollkit` batch harness: read a JSON config, run the selected
//! suites, write `report.json` and `summary.csv`.

pub mod config;
pub mod report;
pub mod suites;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{RunConfig, SuiteSpec, SUITE_NAMES};
pub use report::{Record, Report, SuiteReport, Verdict};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) | CliError::Io(_) => 2,
            CliError::Consistency(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "scrollkit", version, about = "Verification campaigns for canonical scrolls over prime fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the suites of a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Run only this suite.
        #[arg(long)]
        suite: Option<String>,
        /// Output directory; overrides the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Base seed; overrides the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Field modulus for every curve and cover; overrides the config.
        #[arg(long)]
        p: Option<u32>,
    },
}

/// Overrides applied on top of a config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub suite: Option<String>,
    pub seed: Option<u64>,
    pub p: Option<u32>,
}

/// Applies the overrides and runs every selected suite, in config order.
pub fn execute(mut cfg: RunConfig, ov: &Overrides) -> Result<Report, CliError> {
    if let Some(seed) = ov.seed {
        cfg.seed = seed;
    }
    if let Some(p) = ov.p {
        cfg.override_p(p);
    }
    if let Some(name) = &ov.suite {
        if !SUITE_NAMES.contains(&name.as_str()) {
            return Err(CliError::Schema(format!("unknown suite '{name}'; expected one of {}", SUITE_NAMES.join(", "))));
        }
        cfg.suites.retain(|s| s.name() == name);
        if cfg.suites.is_empty() {
            return Err(CliError::Schema(format!("the config has no '{name}' suite")));
        }
    }
    let resolved = config::resolve(&cfg)?;
    let reports = cfg
        .suites
        .iter()
        .map(|s| suites::run(s, &resolved, cfg.seed, cfg.k_max))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Report::new(cfg, reports))
}

/// Exit code for a parsed command line, printing diagnostics to stderr.
pub fn main_with(cli: Cli) -> i32 {
    let Command::Run { config, suite, out, seed, p } = cli.command;
    let result = (|| {
        let text = std::fs::read_to_string(&config).map_err(|e| CliError::Schema(format!("{}: {e}", config.display())))?;
        let cfg = RunConfig::parse(&text)?;
        let dir = out
            .or_else(|| cfg.out.as_ref().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("scrollkit-out"));
        let report = execute(cfg, &Overrides { suite, seed, p })?;
        report.write(&dir)?;
        Ok::<_, CliError>((report, dir))
    })();
    match result {
        Ok((report, dir)) => {
            let s = &report.summary;
            eprintln!("{} pass, {} fail, {} indeterminate; reports in {}", s.pass, s.fail, s.indeterminate, dir.display());
            i32::from(report.has_failures())
        }
        Err(e) => {
            eprintln!("scrollkit: {e}");
            e.exit_code()
        }
    }
}
