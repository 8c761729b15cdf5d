//! The weighted-norm layer: `H¹`, the conjugated position weight `J`, the `X`
//! norm, and the instantaneous `S` integrand.

use crate::spectral::fft::SpatialFft;
use crate::spectral::grid::Grid;
use crate::spectral::symbols::SymbolTable;
use crate::C64;

/// Spectral `H¹` norm: `((1/Vol) Σ (1 + |ζ|²) |f̂|²)^{1/2}`.
pub fn h1_norm(grid: &Grid, fft: &SpatialFft, field: &[C64]) -> f64 {
    let hat = fft.forward(field);
    let mut acc = 0.0;
    for (lin, h) in hat.iter().enumerate() {
        acc += (1.0 + grid.zeta_abs2(lin)) * h.norm_sqr();
    }
    (acc / grid.volume_r()).sqrt()
}

/// Discrete `L⁶` norm.
pub fn l6_norm(grid: &Grid, field: &[C64]) -> f64 {
    (field
        .iter()
        .map(|v| v.norm_sqr().powi(3))
        .sum::<f64>()
        * grid.cell_r())
    .powf(1.0 / 6.0)
}

/// `J f = e^{-itH} (r · e^{+itH} f)` along one spatial axis, with `r` the
/// signed torus coordinate in `[-L/2, L/2)`. The sawtooth seam makes this a
/// diagnostic rather than an evolution operator; tests keep fields away from
/// the seam.
pub fn j_weight(
    grid: &Grid,
    fft: &SpatialFft,
    table: &SymbolTable,
    field: &[C64],
    t: f64,
    axis: usize,
) -> Vec<C64> {
    let n = grid.n_r_total();
    let scale = 1.0 / n as f64;
    let mut buf = field.to_vec();
    // e^{+itH}
    fft.fft_raw(&mut buf);
    for (lin, v) in buf.iter_mut().enumerate() {
        *v *= C64::new(0.0, t * table.h()[lin]).exp() * scale;
    }
    fft.ifft_raw(&mut buf);
    // multiply by the signed coordinate
    for (lin, v) in buf.iter_mut().enumerate() {
        *v *= grid.x_signed(lin, axis);
    }
    // e^{-itH}
    fft.fft_raw(&mut buf);
    for (lin, v) in buf.iter_mut().enumerate() {
        *v *= C64::new(0.0, -t * table.h()[lin]).exp() * scale;
    }
    fft.ifft_raw(&mut buf);
    buf
}

/// The scattering norm `‖Z‖_{X(t)} = ‖Z‖_{H¹} + Σ_axes ‖J_a Z‖_{H¹}`.
pub fn x_norm(grid: &Grid, fft: &SpatialFft, table: &SymbolTable, z: &[C64], t: f64) -> f64 {
    let mut total = h1_norm(grid, fft, z);
    for axis in 0..grid.dim_r() {
        let jz = j_weight(grid, fft, table, z, t, axis);
        total += h1_norm(grid, fft, &jz);
    }
    total
}

/// Instantaneous integrand of the `S` norm: `‖U^{-1/6} Z‖_{H^{1,6}}`, i.e. the
/// `L⁶` norms of `g = U^{-1/6} Z` and of its spectral gradient. The mean mode
/// of the fractional inverse power is zeroed; a warning is emitted when the
/// input actually carries one.
pub fn s_seminorm(grid: &Grid, fft: &SpatialFft, table: &SymbolTable, z: &[C64]) -> f64 {
    let n = grid.n_r_total();
    let scale = 1.0 / n as f64;
    let mut hat = z.to_vec();
    fft.fft_raw(&mut hat);
    if hat[0].norm() * grid.cell_r() > 1e-12 {
        log::warn!(
            "s_seminorm: input mean {:.3e} dropped by the U^(-1/6) symbol",
            hat[0].norm() * grid.cell_r()
        );
    }
    let upow = table.u_power(-1.0 / 6.0);
    for (lin, v) in hat.iter_mut().enumerate() {
        *v *= upow[lin];
    }
    // g in physical space.
    let mut g = hat.clone();
    fft.ifft_raw(&mut g);
    for v in g.iter_mut() {
        *v *= scale;
    }
    let mut total = l6_norm(grid, &g);
    // |∇g| pointwise via per-axis spectral derivatives.
    let mut grad_sq = vec![0.0; n];
    for axis in 0..grid.dim_r() {
        let mut d = hat.clone();
        for (lin, v) in d.iter_mut().enumerate() {
            *v *= C64::new(0.0, grid.zeta_vec(lin)[axis]);
        }
        fft.ifft_raw(&mut d);
        for (i, v) in d.iter().enumerate() {
            let w = v * scale;
            grad_sq[i] += w.norm_sqr();
        }
    }
    let grad_l6 = (grad_sq
        .iter()
        .map(|s| s.powi(3))
        .sum::<f64>()
        * grid.cell_r())
    .powf(1.0 / 6.0);
    total += grad_l6;
    total
}
