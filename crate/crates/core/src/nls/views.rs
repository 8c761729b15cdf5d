//! Perturbation views of the wave function: `u = Ψ - 1 = u₁ - i u₂`,
//! `v = u₁ + i U u₂`, and the normal-form unknown `Z = v + b(u)`.

use crate::nls::field::WaveField;
use crate::nls::symbols::b0;
use crate::spectral::fft::SpatialFft;
use crate::spectral::grid::Grid;
use crate::spectral::multiplier::apply_bilinear;
use crate::spectral::symbols::SymbolTable;
use crate::{C64, Result};

/// The derived real/complex views of `Ψ`.
///
/// Sign convention: `u = Ψ - 1 = u₁ - i u₂`, so `u₁ = Re(Ψ-1)` and
/// `u₂ = -Im(Ψ-1)`. The good unknown is `v = u₁ + i U u₂`; its imaginary part
/// is always mean-free because `U(0) = 0`.
#[derive(Debug, Clone)]
pub struct PerturbationViews {
    pub u1: Vec<f64>,
    pub u2: Vec<f64>,
    pub v: Vec<C64>,
}

impl PerturbationViews {
    /// Build the views from raw components (used by the residual diagnostics,
    /// which scale `u` directly).
    pub fn from_parts(
        grid: &Grid,
        fft: &SpatialFft,
        table: &SymbolTable,
        u1: Vec<f64>,
        u2: Vec<f64>,
    ) -> Self {
        let mut hat: Vec<C64> = u2.iter().map(|&x| C64::new(x, 0.0)).collect();
        fft.fft_raw(&mut hat);
        for (h, &u) in hat.iter_mut().zip(table.u()) {
            *h *= u;
        }
        fft.ifft_raw(&mut hat);
        let scale = 1.0 / grid.n_r_total() as f64;
        let v: Vec<C64> = u1
            .iter()
            .zip(&hat)
            .map(|(&a, h)| C64::new(a, h.re * scale))
            .collect();
        Self { u1, u2, v }
    }

    /// `v₁ = Re v` (equal to `u₁`).
    pub fn v1(&self) -> Vec<C64> {
        self.v.iter().map(|z| C64::new(z.re, 0.0)).collect()
    }

    /// `v₂ = Im v` (equal to `U u₂`, mean-free).
    pub fn v2(&self) -> Vec<C64> {
        self.v.iter().map(|z| C64::new(z.im, 0.0)).collect()
    }

    /// Reconstruct `Ψ = 1 + u₁ - i u₂`.
    pub fn reconstruct(&self) -> Vec<C64> {
        self.u1
            .iter()
            .zip(&self.u2)
            .map(|(&a, &b)| C64::new(1.0 + a, -b))
            .collect()
    }
}

/// Decompose a wave function into its perturbation views.
pub fn to_views(grid: &Grid, fft: &SpatialFft, table: &SymbolTable, wave: &WaveField) -> PerturbationViews {
    let u1: Vec<f64> = wave.psi().iter().map(|z| z.re - 1.0).collect();
    let u2: Vec<f64> = wave.psi().iter().map(|z| -z.im).collect();
    PerturbationViews::from_parts(grid, fft, table, u1, u2)
}

/// The normal-form unknown `Z = v - B₀[u₁, u₁] + B₀[u₂, u₂]` with
/// `B₀(ζ₁, ζ₂) = (2 + |ζ₁|² + |ζ₂|²)^{-1}`; the bilinear correction cancels
/// the quadratic part of the `v` equation.
pub fn normal_form_z(
    grid: &Grid,
    fft: &SpatialFft,
    views: &PerturbationViews,
) -> Result<Vec<C64>> {
    let u1c: Vec<C64> = views.u1.iter().map(|&x| C64::new(x, 0.0)).collect();
    let u2c: Vec<C64> = views.u2.iter().map(|&x| C64::new(x, 0.0)).collect();
    let sym = |z1: [f64; 3], z2: [f64; 3]| C64::new(b0(z1, z2), 0.0);
    let b11 = apply_bilinear(grid, fft, sym, &u1c, &u1c)?;
    let b22 = apply_bilinear(grid, fft, sym, &u2c, &u2c)?;
    Ok(views
        .v
        .iter()
        .zip(&b11)
        .zip(&b22)
        .map(|((v, a), b)| v - a + b)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Grid, SpatialFft, SymbolTable) {
        let grid = Grid::new(1, 1, 16, 4, std::f64::consts::TAU, 1.0).unwrap();
        let fft = SpatialFft::new(&grid);
        let table = SymbolTable::new(&grid);
        (grid, fft, table)
    }

    #[test]
    fn uniform_background_gives_zero_views() {
        let (grid, fft, table) = setup();
        let wave = WaveField::uniform(&grid, C64::new(1.0, 0.0));
        let views = to_views(&grid, &fft, &table, &wave);
        assert!(views.u1.iter().all(|&x| x.abs() < 1e-15));
        assert!(views.u2.iter().all(|&x| x.abs() < 1e-15));
        assert!(views.v.iter().all(|z| z.norm() < 1e-14));
        let z = normal_form_z(&grid, &fft, &views).unwrap();
        assert!(z.iter().all(|w| w.norm() < 1e-14));
    }

    #[test]
    fn real_constant_shift_maps_through() {
        let (grid, fft, table) = setup();
        let c = 0.2;
        let wave = WaveField::uniform(&grid, C64::new(1.0 + c, 0.0));
        let views = to_views(&grid, &fft, &table, &wave);
        for (&a, &b) in views.u1.iter().zip(&views.u2) {
            assert!((a - c).abs() < 1e-14 && b.abs() < 1e-15);
        }
        // v = c for constants since U annihilates nothing here (u₂ = 0).
        assert!(views.v.iter().all(|z| (z - C64::new(c, 0.0)).norm() < 1e-13));
        // Z = c - B₀[c, c] = c - c²/2 at the zero mode where B₀(0,0) = 1/2.
        let z = normal_form_z(&grid, &fft, &views).unwrap();
        for w in &z {
            assert!((w - C64::new(c - c * c / 2.0, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn single_imaginary_mode_matches_u_symbol() {
        let (grid, fft, table) = setup();
        let l = grid.length_r();
        let k = std::f64::consts::TAU / l; // |ζ| = 1 on the 2π torus
        let wave = WaveField::from_fn(&grid, |r| {
            let x = grid.x_vec(r)[0];
            C64::new(1.0, -(k * x).sin())
        });
        let views = to_views(&grid, &fft, &table, &wave);
        let u_at_k = k / (2.0 + k * k).sqrt();
        for (r, z) in views.v.iter().enumerate() {
            let x = grid.x_vec(r)[0];
            assert!((views.u2[r] - (k * x).sin()).abs() < 1e-13);
            assert!((z.im - u_at_k * (k * x).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn reconstruction_is_exact() {
        let (grid, fft, table) = setup();
        let wave = WaveField::from_fn(&grid, |r| {
            let x = grid.x_vec(r)[0];
            C64::new(1.0 + 0.1 * x.cos(), 0.07 * (2.0 * x).sin())
        });
        let views = to_views(&grid, &fft, &table, &wave);
        for (a, b) in views.reconstruct().iter().zip(wave.psi()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn normal_form_correction_is_exactly_quadratic() {
        let (grid, fft, table) = setup();
        let l = grid.length_r();
        let base1: Vec<f64> = (0..grid.n_r_total())
            .map(|r| 0.3 * (std::f64::consts::TAU * grid.x_vec(r)[0] / l).cos())
            .collect();
        let base2: Vec<f64> = (0..grid.n_r_total())
            .map(|r| 0.2 * (2.0 * std::f64::consts::TAU * grid.x_vec(r)[0] / l).sin())
            .collect();
        let mut ratios = Vec::new();
        for eps in [1e-2, 1e-3, 1e-4] {
            let u1: Vec<f64> = base1.iter().map(|x| eps * x).collect();
            let u2: Vec<f64> = base2.iter().map(|x| eps * x).collect();
            let views = PerturbationViews::from_parts(&grid, &fft, &table, u1, u2);
            let z = normal_form_z(&grid, &fft, &views).unwrap();
            let dev: f64 = z
                .iter()
                .zip(&views.v)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            ratios.push(dev / (eps * eps));
        }
        // ‖Z - v‖ / ε² constant within 1% across three decades.
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        for r in &ratios {
            assert!(((r - mean) / mean).abs() < 1e-2, "ratios {ratios:?}");
        }
    }
}
