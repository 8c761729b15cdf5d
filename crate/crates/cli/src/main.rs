//! `thermalcloud`: run a named experiment from a structured-text config.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use thermalcloud_cli::config::{parse_config, DumpFields};

/// Scenario runner for the coupled kinetic / NLS spectral solvers.
#[derive(Parser, Debug)]
#[command(name = "thermalcloud", version, about)]
struct Cli {
    /// Path to the run configuration (key = value sections).
    config: PathBuf,

    /// Output directory for the manifest, CSV series, report, and snapshots.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Override the configured random seed.
    #[arg(long)]
    seed: Option<u64>,

    /// Run the scenario's acceptance checks and set the exit code from them.
    #[arg(long)]
    check: bool,

    /// Field snapshot policy: none, final, or every-<k> records.
    #[arg(long, value_parser = parse_dump)]
    dump_fields: Option<DumpFields>,
}

fn parse_dump(s: &str) -> Result<DumpFields, String> {
    DumpFields::parse(s).ok_or_else(|| format!("'{s}' is not none, final, or every-<k>"))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();

    let text = match std::fs::read_to_string(&cli.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.config.display());
            return ExitCode::from(1);
        }
    };
    let mut cfg = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(dump) = cli.dump_fields {
        cfg.dump_fields = dump;
    }

    match thermalcloud_cli::run(&cfg, &cli.out) {
        Ok(outcome) => {
            println!(
                "{}: {} checks, {}",
                cfg.scenario.name(),
                outcome.checks.len(),
                if outcome.all_pass { "all pass" } else { "FAILURES" }
            );
            println!("artifacts in {}", outcome.out_dir.display());
            if cli.check && !outcome.all_pass {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
