//! Spatial Fourier transforms on the torus.
//!
//! The forward transform carries the integral convention: coefficients are the
//! plain DFT scaled by the spatial cell volume, so `f̂(ζ) ≈ ∫ f e^{-i r·ζ} dr`
//! and discrete multiplier symbols match their continuum counterparts without
//! mode-count factors. The matching inverse is `f(r) = (1/Vol) Σ_ζ f̂(ζ) e^{i r·ζ}`.

use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::spectral::grid::Grid;
use crate::C64;

/// Planned multi-dimensional FFT over the spatial axes of a [`Grid`].
pub struct SpatialFft {
    dim: usize,
    n: usize,
    total: usize,
    cell: f64,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl SpatialFft {
    pub fn new(grid: &Grid) -> Self {
        Self::with_size(grid.dim_r(), grid.n_r(), grid.cell_r())
    }

    /// Plan transforms for an arbitrary cubic lattice (used for padded grids).
    pub fn with_size(dim: usize, n: usize, cell: f64) -> Self {
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        Self {
            dim,
            n,
            total: n.pow(dim as u32),
            cell,
            fwd,
            inv,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Unnormalized forward DFT along every axis, in place.
    pub fn fft_raw(&self, data: &mut [C64]) {
        assert_eq!(data.len(), self.total, "field length does not match lattice");
        for axis in 0..self.dim {
            self.process_axis(data, axis, true);
        }
    }

    /// Unnormalized inverse DFT along every axis, in place (no 1/N factor).
    pub fn ifft_raw(&self, data: &mut [C64]) {
        assert_eq!(data.len(), self.total, "field length does not match lattice");
        for axis in 0..self.dim {
            self.process_axis(data, axis, false);
        }
    }

    /// Forward transform with the integral convention.
    pub fn forward(&self, field: &[C64]) -> Vec<C64> {
        let mut hat = field.to_vec();
        self.fft_raw(&mut hat);
        for v in hat.iter_mut() {
            *v *= self.cell;
        }
        hat
    }

    /// Inverse of [`SpatialFft::forward`].
    pub fn inverse(&self, hat: &[C64]) -> Vec<C64> {
        let mut field = hat.to_vec();
        self.ifft_raw(&mut field);
        let scale = 1.0 / (self.total as f64 * self.cell);
        for v in field.iter_mut() {
            *v *= scale;
        }
        field
    }

    /// Forward transform of a real field.
    pub fn forward_real(&self, field: &[f64]) -> Vec<C64> {
        let buf: Vec<C64> = field.iter().map(|&x| C64::new(x, 0.0)).collect();
        self.forward(&buf)
    }

    /// Inverse transform, keeping the real part (the caller asserts Hermitian data).
    pub fn inverse_real(&self, hat: &[C64]) -> Vec<f64> {
        self.inverse(hat).iter().map(|v| v.re).collect()
    }

    fn process_axis(&self, data: &mut [C64], axis: usize, forward: bool) {
        let plan = if forward { &self.fwd } else { &self.inv };
        let n = self.n;
        let stride = n.pow((self.dim - 1 - axis) as u32);
        let blocks = self.total / (n * stride);
        let mut line = vec![C64::new(0.0, 0.0); n];
        let mut scratch = vec![C64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        for b in 0..blocks {
            for s in 0..stride {
                let base = b * n * stride + s;
                for i in 0..n {
                    line[i] = data[base + i * stride];
                }
                plan.process_with_scratch(&mut line, &mut scratch);
                for i in 0..n {
                    data[base + i * stride] = line[i];
                }
            }
        }
    }
}

/// Discrete `L²` norm of a spatial field: `(Σ |f|² Δr)^{1/2}`.
pub fn l2_norm(grid: &Grid, field: &[C64]) -> f64 {
    (field.iter().map(|v| v.norm_sqr()).sum::<f64>() * grid.cell_r()).sqrt()
}

/// Discrete `L²` norm of a real spatial field.
pub fn l2_norm_real(grid: &Grid, field: &[f64]) -> f64 {
    (field.iter().map(|v| v * v).sum::<f64>() * grid.cell_r()).sqrt()
}

/// Spectral-side `L²` sum matching Parseval under the integral convention:
/// `(1/Vol) Σ_ζ |f̂(ζ)|²`.
pub fn l2_norm_hat(grid: &Grid, hat: &[C64]) -> f64 {
    (hat.iter().map(|v| v.norm_sqr()).sum::<f64>() / grid.volume_r()).sqrt()
}

/// Spatial mean of a complex field.
pub fn mean(field: &[C64]) -> C64 {
    field.iter().sum::<C64>() / field.len() as f64
}
