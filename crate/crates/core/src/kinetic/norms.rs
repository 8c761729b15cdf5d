//! Moments and weighted norms of phase-space fields.

use crate::kinetic::field::PhaseSpaceField;
use crate::kinetic::weight::BoseEinsteinWeight;
use crate::spectral::fft::SpatialFft;
use crate::spectral::grid::Grid;
use crate::C64;

/// Total mass `Σ f Δr Δp`.
pub fn mass(grid: &Grid, f: &PhaseSpaceField) -> f64 {
    f.data().iter().sum::<f64>() * grid.cell_r() * grid.cell_p()
}

/// Momentum moment `ρ[f](r) = Σ_p f(r, p) Δp`.
pub fn rho_moment(grid: &Grid, f: &PhaseSpaceField) -> Vec<f64> {
    let np = grid.n_p_total();
    let cell = grid.cell_p();
    (0..grid.n_r_total())
        .map(|r| f.momentum_row(np, r).iter().sum::<f64>() * cell)
        .collect()
}

/// The weighted norm `‖f‖_𝓛 = (Σ |f|² 𝔈^{-1} Δr Δp)^{1/2}`.
pub fn l_norm(grid: &Grid, f: &PhaseSpaceField, weight: &BoseEinsteinWeight) -> f64 {
    l_inner(grid, f, f, weight).sqrt()
}

/// The `𝓛` inner product `Σ f g 𝔈^{-1} Δr Δp`.
pub fn l_inner(
    grid: &Grid,
    f: &PhaseSpaceField,
    g: &PhaseSpaceField,
    weight: &BoseEinsteinWeight,
) -> f64 {
    let np = grid.n_p_total();
    let inv = weight.inv_weight();
    let mut acc = 0.0;
    for r in 0..grid.n_r_total() {
        let fr = f.momentum_row(np, r);
        let gr = g.momentum_row(np, r);
        let mut row = 0.0;
        for p in 0..np {
            row += fr[p] * gr[p] * inv[p];
        }
        acc += row;
    }
    acc * grid.cell_r() * grid.cell_p()
}

/// `𝓛` norm of the deviation `f - f_∞` for a momentum profile `f_inf`.
pub fn l_norm_deviation(
    grid: &Grid,
    f: &PhaseSpaceField,
    f_inf: &[f64],
    weight: &BoseEinsteinWeight,
) -> f64 {
    let np = grid.n_p_total();
    let inv = weight.inv_weight();
    let mut acc = 0.0;
    for r in 0..grid.n_r_total() {
        let fr = f.momentum_row(np, r);
        let mut row = 0.0;
        for p in 0..np {
            let d = fr[p] - f_inf[p];
            row += d * d * inv[p];
        }
        acc += row;
    }
    (acc * grid.cell_r() * grid.cell_p()).sqrt()
}

/// `𝓛` norm of the spatial gradient, computed spectrally:
/// `(Σ_a ‖∂_{r_a} f‖²_𝓛)^{1/2}`.
pub fn grad_l_norm(
    grid: &Grid,
    fft: &SpatialFft,
    f: &PhaseSpaceField,
    weight: &BoseEinsteinWeight,
) -> f64 {
    let np = grid.n_p_total();
    let nr = grid.n_r_total();
    let inv = weight.inv_weight();
    let mut acc = 0.0;
    let mut line = vec![C64::new(0.0, 0.0); nr];
    let mut deriv = vec![C64::new(0.0, 0.0); nr];
    for p in 0..np {
        for r in 0..nr {
            line[r] = C64::new(f.value(np, r, p), 0.0);
        }
        fft.fft_raw(&mut line);
        for axis in 0..grid.dim_r() {
            for r in 0..nr {
                let z = grid.zeta_vec(r)[axis];
                deriv[r] = line[r] * C64::new(0.0, z);
            }
            fft.ifft_raw(&mut deriv);
            let scale = 1.0 / nr as f64;
            let w = inv[p];
            for d in deriv.iter() {
                let v = d.re * scale;
                acc += v * v * w;
            }
        }
    }
    (acc * grid.cell_r() * grid.cell_p()).sqrt()
}
