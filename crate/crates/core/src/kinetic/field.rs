//! The kinetic unknown `f(r, p)` and its binary snapshot format.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::kinetic::weight::BoseEinsteinWeight;
use crate::kinetic::{l_norm, mass};
use crate::spectral::grid::Grid;
use crate::{CoreError, Result};

/// Real-valued phase-space field on the tensor grid, stored row-major with the
/// spatial axes outer and the momentum axes inner.
#[derive(Debug, Clone)]
pub struct PhaseSpaceField {
    data: Vec<f64>,
    time: f64,
}

impl PhaseSpaceField {
    pub fn zeros(grid: &Grid) -> Self {
        Self {
            data: vec![0.0; grid.n_r_total() * grid.n_p_total()],
            time: 0.0,
        }
    }

    pub fn from_fn<F>(grid: &Grid, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> f64,
    {
        let np = grid.n_p_total();
        let mut data = Vec::with_capacity(grid.n_r_total() * np);
        for r in 0..grid.n_r_total() {
            for p in 0..np {
                data.push(f(r, p));
            }
        }
        Self { data, time: 0.0 }
    }

    /// Replicate a momentum profile over the torus (homogeneous data).
    pub fn from_profile(grid: &Grid, profile: &[f64]) -> Self {
        Self::from_fn(grid, |_, p| profile[p])
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn set_time(&mut self, t: f64) {
        self.time = t;
    }

    pub fn advance_time(&mut self, dt: f64) {
        self.time += dt;
    }

    #[inline]
    pub fn value(&self, n_p_total: usize, r_lin: usize, p_lin: usize) -> f64 {
        self.data[r_lin * n_p_total + p_lin]
    }

    /// Momentum row for a fixed spatial node.
    pub fn momentum_row(&self, n_p_total: usize, r_lin: usize) -> &[f64] {
        &self.data[r_lin * n_p_total..(r_lin + 1) * n_p_total]
    }

    pub fn momentum_row_mut(&mut self, n_p_total: usize, r_lin: usize) -> &mut [f64] {
        &mut self.data[r_lin * n_p_total..(r_lin + 1) * n_p_total]
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.data
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }

    /// Positivity diagnostic: fails when `min f < -1e-8 · max f`. Positivity is
    /// a property of the continuum equations, not of every scheme, so it is
    /// tracked rather than enforced.
    pub fn positivity_check(&self) -> Result<()> {
        let (lo, hi) = self.min_max();
        if lo < -1e-8 * hi.max(0.0) {
            Err(CoreError::Positivity { min_f: lo, max_f: hi })
        } else {
            Ok(())
        }
    }
}

/// Write the snapshot pair: a flat little-endian f64 array (spatial axes outer,
/// momentum axes inner) plus a structured-text sidecar with the grid metadata
/// and the integral diagnostics.
pub fn write_snapshot(
    grid: &Grid,
    weight: &BoseEinsteinWeight,
    field: &PhaseSpaceField,
    bin_path: &Path,
    meta_path: &Path,
) -> Result<()> {
    let mut bytes = Vec::with_capacity(field.data().len() * 8);
    for v in field.data() {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    fs::write(bin_path, bytes)?;

    let mut meta = String::new();
    meta.push_str("kind = \"phase_space_field\"\n");
    meta.push_str(&format!("dim_r = {}\n", grid.dim_r()));
    meta.push_str(&format!("dim_p = {}\n", grid.dim_p()));
    meta.push_str(&format!("n_r = {}\n", grid.n_r()));
    meta.push_str(&format!("n_p = {}\n", grid.n_p()));
    meta.push_str(&format!("length_r = {:.17e}\n", grid.length_r()));
    meta.push_str(&format!("p_max = {:.17e}\n", grid.p_max()));
    meta.push_str(&format!("p_shift = {:.17e}\n", grid.p_shift()));
    meta.push_str(&format!("dx = {:.17e}\n", grid.dx()));
    meta.push_str(&format!("dp = {:.17e}\n", grid.dp()));
    meta.push_str(&format!("time = {:.17e}\n", field.time()));
    meta.push_str(&format!("mass = {:.17e}\n", mass(grid, field)));
    meta.push_str(&format!("l_norm = {:.17e}\n", l_norm(grid, field, weight)));
    let mut fh = fs::File::create(meta_path)?;
    fh.write_all(meta.as_bytes())?;
    Ok(())
}

/// Read back a snapshot binary (test and tooling helper).
pub fn read_snapshot_values(bin_path: &Path) -> Result<Vec<f64>> {
    let bytes = fs::read(bin_path)?;
    if bytes.len() % 8 != 0 {
        return Err(CoreError::Dimension(format!(
            "snapshot length {} is not a multiple of 8",
            bytes.len()
        )));
    }
    Ok(bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect())
}
