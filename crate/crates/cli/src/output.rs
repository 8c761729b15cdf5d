//! Artifact writers: run manifest, series CSV, reports, snapshots.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use thermalcloud_core::coupling::periodization_bound;
use thermalcloud_core::diagnostics::report::{render_report, write_report_csv, CheckRecord};
use thermalcloud_core::diagnostics::series::DiagnosticsSeries;
use thermalcloud_core::kinetic::{BoseEinsteinWeight, OperatorKind};
use thermalcloud_core::spectral::symbols::KernelKind;
use thermalcloud_core::Result;

use crate::config::RunConfig;

pub fn ensure_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path)?;
    Ok(())
}

fn operator_name(kind: OperatorKind) -> &'static str {
    match kind {
        OperatorKind::L1 => "l1",
        OperatorKind::L2 => "l2",
    }
}

fn kernel_name(kind: KernelKind) -> &'static str {
    match kind {
        KernelKind::Exponential => "exponential",
        KernelKind::Gaussian => "gaussian",
    }
}

/// Structured-text run manifest: scenario, grid, numerics, seeds, and the
/// reported discretization bounds.
pub fn write_manifest(cfg: &RunConfig, weight: Option<&BoseEinsteinWeight>, out: &Path) -> Result<PathBuf> {
    let mut text = String::new();
    text.push_str(&format!("scenario = \"{}\"\n", cfg.scenario.name()));
    text.push_str("\n[grid]\n");
    text.push_str(&format!("dim_r = {}\n", cfg.grid.dim_r));
    text.push_str(&format!("dim_p = {}\n", cfg.grid.dim_p));
    text.push_str(&format!("n_r = {}\n", cfg.grid.n_r));
    text.push_str(&format!("n_p = {}\n", cfg.grid.n_p));
    text.push_str(&format!("length_r = {:.17e}\n", cfg.grid.length_r));
    text.push_str(&format!("p_max = {:.17e}\n", cfg.grid.p_max));
    text.push_str("\n[kinetic]\n");
    text.push_str(&format!("operator = \"{}\"\n", operator_name(cfg.operator)));
    text.push_str(&format!("epsilon = {:.17e}\n", cfg.weight_epsilon));
    text.push_str(&format!("coupling_constant = {:.17e}\n", cfg.coupling_constant));
    text.push_str("\n[coupling]\n");
    text.push_str(&format!("kernel = \"{}\"\n", kernel_name(cfg.kernel)));
    text.push_str(&format!(
        "periodization_bound = {:.6e}\n",
        periodization_bound(cfg.kernel, cfg.grid.dim_r, cfg.grid.length_r)
    ));
    text.push_str("\n[time]\n");
    text.push_str(&format!("dt = {:.17e}\n", cfg.dt));
    text.push_str(&format!("t_end = {:.17e}\n", cfg.t_end));
    text.push_str(&format!("record_every = {}\n", cfg.record_every));
    text.push_str("\n[initial]\n");
    text.push_str(&format!("preset = \"{}\"\n", cfg.preset));
    text.push_str(&format!("amplitude = {:.17e}\n", cfg.amplitude));
    text.push_str(&format!("psi_amplitude = {:.17e}\n", cfg.psi_amplitude));
    text.push_str(&format!("m_f0 = {:.17e}\n", cfg.m_f0));
    text.push_str(&format!("seed = {}\n", cfg.seed));
    text.push_str("\n[diagnostics]\n");
    text.push_str(&format!("energy_delta = {:.17e}\n", cfg.energy_delta));
    text.push_str(&format!("small_data_delta = {:.17e}\n", cfg.small_data_delta));
    if let Some((lo, hi)) = cfg.fit_window {
        text.push_str(&format!("fit_window_lo = {lo:.17e}\nfit_window_hi = {hi:.17e}\n"));
    } else {
        text.push_str(&format!(
            "fit_transient_fraction = {:.17e}\n",
            cfg.fit_transient_fraction
        ));
    }
    if let Some(w) = weight {
        text.push_str("\n[weight]\n");
        text.push_str(&format!("c_e = {:.17e}\n", w.c_e()));
        text.push_str(&format!("truncation_bound = {:.6e}\n", w.truncation_bound()));
    }
    let path = out.join("manifest.txt");
    let mut fh = fs::File::create(&path)?;
    fh.write_all(text.as_bytes())?;
    Ok(path)
}

pub fn write_series(series: &DiagnosticsSeries, out: &Path) -> Result<PathBuf> {
    let path = out.join("series.csv");
    let mut buf = Vec::new();
    series.write_csv(&mut buf)?;
    fs::write(&path, buf)?;
    Ok(path)
}

/// Write report.csv and report.txt, echo the text to stdout.
pub fn write_reports(checks: &[CheckRecord], out: &Path) -> Result<()> {
    let mut buf = Vec::new();
    write_report_csv(checks, &mut buf)?;
    fs::write(out.join("report.csv"), buf)?;
    let text = render_report(checks);
    fs::write(out.join("report.txt"), &text)?;
    print!("{text}");
    Ok(())
}
