//! Tensor grid over a spatial torus and a truncated, shifted momentum box.

use crate::{CoreError, Result};

/// Discretization of the phase space: a periodic torus of period `length_r`
/// per spatial axis and the momentum box `[-p_max, p_max]` per momentum axis.
///
/// Momentum nodes are shifted off the lattice `-p_max + i·dp` by `p_shift`
/// (half a cell by default) so that no node lands on `p = 0`, where the
/// Bose–Einstein weight has its pole. Transport pairs the first `dim_r`
/// momentum components with the spatial frequencies, so `dim_p >= dim_r`
/// is required; the common case is `dim_p == dim_r`.
#[derive(Debug, Clone)]
pub struct Grid {
    dim_r: usize,
    dim_p: usize,
    n_r: usize,
    n_p: usize,
    length_r: f64,
    p_max: f64,
    p_shift: f64,
    dx: f64,
    dp: f64,
    freq_axis: Vec<f64>,
    x_axis: Vec<f64>,
    p_axis: Vec<f64>,
}

impl Grid {
    /// Build a grid with the default half-cell momentum shift.
    pub fn new(
        dim_r: usize,
        dim_p: usize,
        n_r: usize,
        n_p: usize,
        length_r: f64,
        p_max: f64,
    ) -> Result<Self> {
        let dp = 2.0 * p_max / n_p as f64;
        Self::with_p_shift(dim_r, dim_p, n_r, n_p, length_r, p_max, 0.5 * dp)
    }

    /// Build a grid with an explicit momentum shift.
    pub fn with_p_shift(
        dim_r: usize,
        dim_p: usize,
        n_r: usize,
        n_p: usize,
        length_r: f64,
        p_max: f64,
        p_shift: f64,
    ) -> Result<Self> {
        if !(1..=3).contains(&dim_r) || !(1..=3).contains(&dim_p) {
            return Err(CoreError::Grid(format!(
                "dimensions must lie in 1..=3, got dim_r = {dim_r}, dim_p = {dim_p}"
            )));
        }
        if dim_p < dim_r {
            return Err(CoreError::Grid(format!(
                "transport pairs the first dim_r momentum components; \
                 dim_p = {dim_p} < dim_r = {dim_r} is not representable"
            )));
        }
        if n_r < 2 || n_r % 2 != 0 || n_p < 2 || n_p % 2 != 0 {
            return Err(CoreError::Grid(format!(
                "mode counts must be positive even integers, got n_r = {n_r}, n_p = {n_p}"
            )));
        }
        if !(length_r > 0.0) || !(p_max > 0.0) {
            return Err(CoreError::Grid(format!(
                "length_r and p_max must be positive, got {length_r}, {p_max}"
            )));
        }
        let dx = length_r / n_r as f64;
        let dp = 2.0 * p_max / n_p as f64;
        let p_axis: Vec<f64> = (0..n_p)
            .map(|i| -p_max + i as f64 * dp + p_shift)
            .collect();
        let min_abs = p_axis.iter().fold(f64::INFINITY, |m, &p| m.min(p.abs()));
        if min_abs < 1e-12 * p_max {
            return Err(CoreError::Grid(format!(
                "p_shift = {p_shift} places a momentum node at p = 0"
            )));
        }
        let two_pi = std::f64::consts::TAU;
        let freq_axis: Vec<f64> = (0..n_r)
            .map(|m| two_pi / length_r * Self::signed_mode(m, n_r) as f64)
            .collect();
        let x_axis: Vec<f64> = (0..n_r).map(|j| j as f64 * dx).collect();
        Ok(Self {
            dim_r,
            dim_p,
            n_r,
            n_p,
            length_r,
            p_max,
            p_shift,
            dx,
            dp,
            freq_axis,
            x_axis,
            p_axis,
        })
    }

    /// Signed integer mode for FFT-ordered index `m` on an axis of `n` modes.
    pub fn signed_mode(m: usize, n: usize) -> i64 {
        if m <= n / 2 - 1 {
            m as i64
        } else {
            m as i64 - n as i64
        }
    }

    /// FFT-ordered index of signed mode `k`, or `None` if it is not retained.
    pub fn mode_index(k: i64, n: usize) -> Option<usize> {
        let half = n as i64 / 2;
        if k >= 0 && k < half {
            Some(k as usize)
        } else if k >= -half && k < 0 {
            Some((k + n as i64) as usize)
        } else {
            None
        }
    }

    pub fn dim_r(&self) -> usize {
        self.dim_r
    }

    pub fn dim_p(&self) -> usize {
        self.dim_p
    }

    pub fn n_r(&self) -> usize {
        self.n_r
    }

    pub fn n_p(&self) -> usize {
        self.n_p
    }

    pub fn length_r(&self) -> f64 {
        self.length_r
    }

    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    pub fn p_shift(&self) -> f64 {
        self.p_shift
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dp(&self) -> f64 {
        self.dp
    }

    /// Total spatial node count.
    pub fn n_r_total(&self) -> usize {
        self.n_r.pow(self.dim_r as u32)
    }

    /// Total momentum node count.
    pub fn n_p_total(&self) -> usize {
        self.n_p.pow(self.dim_p as u32)
    }

    /// Spatial cell volume `dx^dim_r`.
    pub fn cell_r(&self) -> f64 {
        self.dx.powi(self.dim_r as i32)
    }

    /// Momentum cell volume `dp^dim_p`.
    pub fn cell_p(&self) -> f64 {
        self.dp.powi(self.dim_p as i32)
    }

    /// Torus volume `length_r^dim_r`.
    pub fn volume_r(&self) -> f64 {
        self.length_r.powi(self.dim_r as i32)
    }

    /// Per-axis spatial frequencies in FFT order.
    pub fn freq_axis(&self) -> &[f64] {
        &self.freq_axis
    }

    /// Per-axis spatial coordinates.
    pub fn x_axis(&self) -> &[f64] {
        &self.x_axis
    }

    /// Per-axis momentum nodes.
    pub fn p_axis(&self) -> &[f64] {
        &self.p_axis
    }

    /// Decompose a spatial linear index (axis 0 outermost).
    pub fn r_multi(&self, mut lin: usize) -> [usize; 3] {
        let mut idx = [0usize; 3];
        for a in (0..self.dim_r).rev() {
            idx[a] = lin % self.n_r;
            lin /= self.n_r;
        }
        idx
    }

    /// Linearize a spatial multi-index.
    pub fn r_lin(&self, idx: &[usize]) -> usize {
        let mut lin = 0;
        for a in 0..self.dim_r {
            lin = lin * self.n_r + idx[a];
        }
        lin
    }

    /// Decompose a momentum linear index (axis 0 outermost).
    pub fn p_multi(&self, mut lin: usize) -> [usize; 3] {
        let mut idx = [0usize; 3];
        for a in (0..self.dim_p).rev() {
            idx[a] = lin % self.n_p;
            lin /= self.n_p;
        }
        idx
    }

    /// Linearize a momentum multi-index.
    pub fn p_lin(&self, idx: &[usize]) -> usize {
        let mut lin = 0;
        for a in 0..self.dim_p {
            lin = lin * self.n_p + idx[a];
        }
        lin
    }

    /// Momentum vector at a linear index, zero-padded to three components.
    pub fn p_vec(&self, lin: usize) -> [f64; 3] {
        let idx = self.p_multi(lin);
        let mut p = [0.0; 3];
        for a in 0..self.dim_p {
            p[a] = self.p_axis[idx[a]];
        }
        p
    }

    /// `|p|` at a momentum linear index.
    pub fn p_abs(&self, lin: usize) -> f64 {
        let p = self.p_vec(lin);
        (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
    }

    /// Frequency vector at a spatial linear index, zero-padded to three components.
    pub fn zeta_vec(&self, lin: usize) -> [f64; 3] {
        let idx = self.r_multi(lin);
        let mut z = [0.0; 3];
        for a in 0..self.dim_r {
            z[a] = self.freq_axis[idx[a]];
        }
        z
    }

    /// `|ζ|²` at a spatial linear index.
    pub fn zeta_abs2(&self, lin: usize) -> f64 {
        let z = self.zeta_vec(lin);
        z[0] * z[0] + z[1] * z[1] + z[2] * z[2]
    }

    /// Spatial position at a linear index, zero-padded to three components.
    pub fn x_vec(&self, lin: usize) -> [f64; 3] {
        let idx = self.r_multi(lin);
        let mut x = [0.0; 3];
        for a in 0..self.dim_r {
            x[a] = self.x_axis[idx[a]];
        }
        x
    }

    /// Signed torus coordinate in `[-L/2, L/2)` along `axis` at a linear index.
    pub fn x_signed(&self, lin: usize, axis: usize) -> f64 {
        let x = self.x_vec(lin)[axis];
        if x < 0.5 * self.length_r {
            x
        } else {
            x - self.length_r
        }
    }

    /// True if `other` shares the spatial lattice (dimension, modes, period).
    pub fn same_spatial_lattice(&self, other: &Grid) -> bool {
        self.dim_r == other.dim_r && self.n_r == other.n_r && self.length_r == other.length_r
    }
}
