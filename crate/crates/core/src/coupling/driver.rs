//! Lockstep advancement of the coupled system and its diagnostic channels.
//!
//! One coupled step is the symmetric composition
//!
//! 1. `N_c` from the current `Ψ` (positivity checked),
//! 2. half a kinetic step with that coupling,
//! 3. `ρ`, `V`, `W` from the updated `f` — the NLS midpoint sample,
//! 4. a full NLS step with `W` frozen at that midpoint,
//! 5. `N_c` from the updated `Ψ`,
//! 6. the second kinetic half step,
//!
//! which keeps the field exchange second-order accurate (the one-sided
//! kinetic-then-wave ordering would degrade the pair to first order).

use crate::diagnostics::energy::perturbed_energy;
use crate::diagnostics::series::DiagnosticsSeries;
use crate::kinetic::field::PhaseSpaceField;
use crate::kinetic::norms::{grad_l_norm, l_norm_deviation, mass, rho_moment};
use crate::kinetic::ops::OperatorKind;
use crate::kinetic::step::KineticStepper;
use crate::kinetic::weight::BoseEinsteinWeight;
use crate::nls::field::WaveField;
use crate::nls::step::{nls_step_in_place, wave_mass};
use crate::spectral::fft::SpatialFft;
use crate::spectral::grid::Grid;
use crate::spectral::symbols::KernelKind;
use crate::{CoreError, Result};

use super::nc::{compute_nc, grad_nc_inf};
use super::potentials::build_potentials;
use super::state::CouplingState;

/// Fixed diagnostic channel order (the CSV contract, after the time column).
pub const CHANNELS: [&str; 11] = [
    "mass_f",
    "mass_psi",
    "l_norm_dev",
    "grad_l_norm",
    "rho_dev_l2",
    "sup_u1",
    "sup_u2",
    "min_nc",
    "max_nc",
    "grad_nc_inf",
    "energy_functional",
];

/// One row of diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct Observation {
    pub mass_f: f64,
    pub mass_psi: f64,
    pub l_norm_dev: f64,
    pub grad_l_norm: f64,
    pub rho_dev_l2: f64,
    pub sup_u1: f64,
    pub sup_u2: f64,
    pub min_nc: f64,
    pub max_nc: f64,
    pub grad_nc_inf: f64,
    pub energy_functional: f64,
}

impl Observation {
    pub fn values(&self) -> [f64; 11] {
        [
            self.mass_f,
            self.mass_psi,
            self.l_norm_dev,
            self.grad_l_norm,
            self.rho_dev_l2,
            self.sup_u1,
            self.sup_u2,
            self.min_nc,
            self.max_nc,
            self.grad_nc_inf,
            self.energy_functional,
        ]
    }
}

/// Owns the grid, transforms, and kinetic machinery for a coupled run.
pub struct CouplingDriver {
    pub grid: Grid,
    pub fft: SpatialFft,
    pub stepper: KineticStepper,
    pub kernel: KernelKind,
    /// δ of the perturbed-energy diagnostic channel.
    pub energy_delta: f64,
}

impl CouplingDriver {
    pub fn new(
        grid: Grid,
        weight: BoseEinsteinWeight,
        m_f0: f64,
        kind: OperatorKind,
        kernel: KernelKind,
        energy_delta: f64,
    ) -> Self {
        let fft = SpatialFft::new(&grid);
        let stepper = KineticStepper::new(&grid, weight, m_f0, kind);
        Self {
            grid,
            fft,
            stepper,
            kernel,
            energy_delta,
        }
    }

    pub fn initial_state(&self, f: PhaseSpaceField, psi: WaveField) -> Result<CouplingState> {
        let m_f0 = mass(&self.grid, &f);
        CouplingState::new(&self.grid, &self.fft, f, psi, m_f0, self.kernel)
    }

    fn checked_nc(&self, psi: &WaveField, step: u64) -> Result<Vec<f64>> {
        let n_c = compute_nc(&self.grid, &self.fft, psi, self.kernel);
        let min_nc = n_c.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_nc <= 0.0 {
            return Err(CoreError::CouplingPositivity { min_nc, step });
        }
        Ok(n_c)
    }

    /// Advance both fields from `t` to `t + dt`.
    pub fn step(&self, state: &mut CouplingState, dt: f64) -> Result<()> {
        let n_c = self.checked_nc(&state.psi, state.step_count)?;
        self.stepper.step(&self.grid, &mut state.f, &n_c, 0.5 * dt)?;

        let rho_mid = rho_moment(&self.grid, &state.f);
        let (_, w_mid) = build_potentials(&rho_mid, state.m_f0, self.grid.volume_r());
        nls_step_in_place(&self.grid, &self.fft, &mut state.psi, &w_mid, dt);

        let n_c2 = self.checked_nc(&state.psi, state.step_count)?;
        self.stepper.step(&self.grid, &mut state.f, &n_c2, 0.5 * dt)?;

        state.rho = rho_moment(&self.grid, &state.f);
        let (v, w) = build_potentials(&state.rho, state.m_f0, self.grid.volume_r());
        state.v_pot = v;
        state.w_pot = w;
        state.n_c = n_c2;
        state.step_count += 1;
        Ok(())
    }

    /// Evaluate every diagnostic channel on a state snapshot.
    pub fn observe(&self, state: &CouplingState) -> Observation {
        let grid = &self.grid;
        let weight = &self.stepper.weight;
        let profile = self.stepper.equilibrium.profile();
        let background = state.m_f0 / grid.volume_r();
        let rho_dev_l2 = (state
            .rho
            .iter()
            .map(|&r| (r - background) * (r - background))
            .sum::<f64>()
            * grid.cell_r())
        .sqrt();
        let (sup_u1, sup_u2) = state.psi.sup_u();
        let min_nc = state.n_c.iter().cloned().fold(f64::INFINITY, f64::min);
        let max_nc = state.n_c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        // Perturbed energy of the deviation from equilibrium.
        let np = grid.n_p_total();
        let mut dev = state.f.clone();
        for r in 0..grid.n_r_total() {
            let row = dev.momentum_row_mut(np, r);
            for p in 0..np {
                row[p] -= profile[p];
            }
        }
        let energy = perturbed_energy(grid, &self.fft, &dev, weight, self.energy_delta);
        Observation {
            mass_f: mass(grid, &state.f),
            mass_psi: wave_mass(grid, &state.psi),
            l_norm_dev: l_norm_deviation(grid, &state.f, profile, weight),
            grad_l_norm: grad_l_norm(grid, &self.fft, &state.f, weight),
            rho_dev_l2,
            sup_u1,
            sup_u2,
            min_nc,
            max_nc,
            grad_nc_inf: grad_nc_inf(grid, &self.fft, &state.psi, self.kernel),
            energy_functional: energy.total,
        }
    }

    /// Run `n_steps` steps, recording every `record_every`-th state (plus the
    /// initial one) into a fresh series.
    pub fn run(
        &self,
        state: &mut CouplingState,
        dt: f64,
        n_steps: usize,
        record_every: usize,
    ) -> Result<DiagnosticsSeries> {
        let mut series = DiagnosticsSeries::new(&CHANNELS);
        series.push_row(state.t(), &self.observe(state).values())?;
        for k in 1..=n_steps {
            self.step(state, dt)?;
            if k % record_every.max(1) == 0 || k == n_steps {
                series.push_row(state.t(), &self.observe(state).values())?;
            }
        }
        Ok(series)
    }
}
