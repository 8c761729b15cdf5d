//! Scenario runner library: parse a configuration, execute the named
//! experiment, write the manifest / series / report artifacts, and return the
//! check records.

pub mod config;
pub mod output;
pub mod presets;
pub mod scenarios;

use std::path::{Path, PathBuf};

use thermalcloud_core::diagnostics::report::CheckRecord;
use thermalcloud_core::kinetic::make_weight;
use thermalcloud_core::Result;

use config::RunConfig;

/// Everything a finished run hands back.
pub struct RunOutcome {
    pub checks: Vec<CheckRecord>,
    pub out_dir: PathBuf,
    pub all_pass: bool,
}

/// Execute a validated configuration, writing artifacts under `out_dir`.
/// Deterministic for a fixed configuration and seed.
pub fn run(cfg: &RunConfig, out_dir: &Path) -> Result<RunOutcome> {
    output::ensure_dir(out_dir)?;
    // The weight only exists for grids the scenario actually builds; the
    // manifest reports its normalization when available.
    let weight = match crate::scenarios::execute_grid_probe(cfg) {
        Ok(grid) => make_weight(&grid, cfg.weight_epsilon).ok(),
        Err(_) => None,
    };
    output::write_manifest(cfg, weight.as_ref(), out_dir)?;
    let artifacts = scenarios::execute(cfg, out_dir)?;
    if let Some(series) = &artifacts.series {
        output::write_series(series, out_dir)?;
    }
    output::write_reports(&artifacts.checks, out_dir)?;
    let all_pass = artifacts.checks.iter().all(|c| c.pass);
    Ok(RunOutcome {
        checks: artifacts.checks,
        out_dir: out_dir.to_path_buf(),
        all_pass,
    })
}
