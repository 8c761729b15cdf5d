//! Named initial-condition presets.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thermalcloud_core::coupling::CouplingDriver;
use thermalcloud_core::kinetic::PhaseSpaceField;
use thermalcloud_core::nls::WaveField;
use thermalcloud_core::{CoreError, Result};

use crate::config::RunConfig;

type C64 = Complex<f64>;

fn u_of(k: f64) -> f64 {
    k / (2.0 + k * k).sqrt()
}

/// The balanced traveling wave mode: `u₁ = a cos(kx)`, `u₂ = (a/U(k)) sin(kx)`.
/// Under the linearized flow the pair rotates with constant component
/// amplitudes, so neither sup norm grows at leading order.
fn balanced_wave(driver: &CouplingDriver, a: f64) -> WaveField {
    let grid = &driver.grid;
    let l = grid.length_r();
    let k = std::f64::consts::TAU / l;
    let u_k = u_of(k);
    WaveField::from_fn(grid, |r| {
        let x = grid.x_vec(r)[0];
        C64::new(1.0 + a * (k * x).cos(), -a / u_k * (k * x).sin())
    })
}

/// Build the initial pair `(f, Ψ)` for the configured preset.
///
/// The kinetic amplitude is `cfg.amplitude`, the wave amplitude
/// `cfg.psi_amplitude`; `cfg.coupling_constant` sets the uniform background
/// `Ψ ≡ sqrt(N)` for the relaxation scenario.
pub fn build_initial(driver: &CouplingDriver, cfg: &RunConfig) -> Result<(PhaseSpaceField, WaveField)> {
    let grid = &driver.grid;
    let l = grid.length_r();
    let profile = driver.stepper.equilibrium.profile().to_vec();
    let e = driver.stepper.weight.e_weight().to_vec();
    let e_max = e.iter().cloned().fold(0.0f64, f64::max);
    let a = cfg.amplitude;

    let (f, psi): (PhaseSpaceField, WaveField) = match cfg.preset.as_str() {
        "equilibrium" => (
            PhaseSpaceField::from_profile(grid, &profile),
            WaveField::uniform(grid, C64::new(1.0, 0.0)),
        ),
        // f = f_∞ (1 + a cos(2πx/L) 𝔈/𝔈_max): positive for a < 1, with a
        // momentum shape the collision operators act on.
        "equilibrium-plus-mode" => {
            let f = PhaseSpaceField::from_fn(grid, |r, p| {
                let x = grid.x_vec(r)[0];
                profile[p] * (1.0 + a * (std::f64::consts::TAU * x / l).cos() * e[p] / e_max)
            });
            (f, balanced_wave(driver, cfg.psi_amplitude))
        }
        // Homogeneous, momentum-mean-free bump: the relaxation target 𝔈ρ
        // then coincides with f_∞ and the decay law is exact. The deviation
        // is a difference of unit-mass profiles scaled by the background
        // density, so positivity holds for any a < 1.
        "homogeneous-bump" => {
            let cell = grid.cell_p();
            let background = cfg.m_f0 / grid.volume_r();
            let bump: Vec<f64> = (0..grid.n_p_total())
                .map(|p| (-(grid.p_abs(p) - 2.0).powi(2)).exp())
                .collect();
            let bump_mass: f64 = bump.iter().sum::<f64>() * cell;
            let shifted: Vec<f64> = profile
                .iter()
                .zip(&bump)
                .zip(&e)
                .map(|((f, b), ew)| f + a * background * (b / bump_mass - ew))
                .collect();
            let n = cfg.coupling_constant.sqrt();
            (
                PhaseSpaceField::from_profile(grid, &shifted),
                WaveField::uniform(grid, C64::new(n, 0.0)),
            )
        }
        // Homogeneous Gaussian bump minus its weighted projection onto
        // constants: the deviation stays orthogonal to the zero mode the box
        // truncation gives the diffusion operator, so the decay has no floor.
        "projected-bump" => {
            let bump: Vec<f64> = (0..grid.n_p_total())
                .map(|p| {
                    let s = grid.p_abs(p);
                    (-s * s / 4.0).exp()
                })
                .collect();
            let inv = driver.stepper.weight.inv_weight();
            let num: f64 = bump.iter().zip(inv).map(|(b, w)| b * w).sum();
            let den: f64 = inv.iter().sum();
            let c = num / den;
            let shifted: Vec<f64> = profile
                .iter()
                .zip(&bump)
                .map(|(f, b)| f + a * (b - c))
                .collect();
            let n = cfg.coupling_constant.sqrt();
            (
                PhaseSpaceField::from_profile(grid, &shifted),
                WaveField::uniform(grid, C64::new(n, 0.0)),
            )
        }
        // Spatial mode times a decaying momentum bump; drives ρ away from
        // its background so the coupled decay diagnostics have a signal.
        "momentum-bump" => {
            let f = PhaseSpaceField::from_fn(grid, |r, p| {
                let x = grid.x_vec(r)[0];
                let s = grid.p_abs(p);
                profile[p] + a * (std::f64::consts::TAU * x / l).cos() * (-s * s / 4.0).exp()
            });
            (f, balanced_wave(driver, cfg.psi_amplitude))
        }
        // Seeded, spectrally smooth random perturbation of both fields.
        "random-smooth" => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let n_modes = 3usize;
            let coeffs_f: Vec<(f64, f64)> = (0..n_modes)
                .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let coeffs_p: Vec<(f64, f64)> = (0..n_modes)
                .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let f = PhaseSpaceField::from_fn(grid, |r, p| {
                let x = grid.x_vec(r)[0];
                let s = grid.p_abs(p);
                let mut mode = 0.0;
                for (j, (c, s_)) in coeffs_f.iter().enumerate() {
                    let phase = (j as f64 + 1.0) * std::f64::consts::TAU * x / l;
                    mode += c * phase.cos() + s_ * phase.sin();
                }
                profile[p] * (1.0 + a * mode / n_modes as f64 * e[p] / e_max)
                    + 0.1 * a * (-s * s / 4.0).exp() * mode / n_modes as f64
            });
            let psi = WaveField::from_fn(grid, |r| {
                let x = grid.x_vec(r)[0];
                let mut re = 0.0;
                let mut im = 0.0;
                for (j, (c, s_)) in coeffs_p.iter().enumerate() {
                    let phase = (j as f64 + 1.0) * std::f64::consts::TAU * x / l;
                    re += c * phase.cos();
                    im += s_ * phase.sin();
                }
                C64::new(
                    1.0 + cfg.psi_amplitude * re / n_modes as f64,
                    cfg.psi_amplitude * im / n_modes as f64,
                )
            });
            (f, psi)
        }
        other => {
            return Err(CoreError::Config(vec![format!(
                "unknown initial preset '{other}'"
            )]))
        }
    };
    f.positivity_check()?;
    Ok((f, psi))
}
