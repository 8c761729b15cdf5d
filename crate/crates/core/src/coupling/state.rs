//! The coupled unknown pair and its cached moments.

use crate::kinetic::field::PhaseSpaceField;
use crate::kinetic::norms::rho_moment;
use crate::nls::field::WaveField;
use crate::spectral::fft::SpatialFft;
use crate::spectral::grid::Grid;
use crate::spectral::symbols::KernelKind;
use crate::{CoreError, Result};

use super::nc::compute_nc;
use super::potentials::build_potentials;

/// The pair `(f, Ψ)` with cached `ρ`, `N_c`, `V`, `W`.
#[derive(Debug, Clone)]
pub struct CouplingState {
    pub f: PhaseSpaceField,
    pub psi: WaveField,
    pub rho: Vec<f64>,
    pub n_c: Vec<f64>,
    pub v_pot: Vec<f64>,
    pub w_pot: Vec<f64>,
    pub m_f0: f64,
    pub step_count: u64,
}

impl CouplingState {
    /// Assemble the state and its caches; rejects a non-positive coupling.
    pub fn new(
        grid: &Grid,
        fft: &SpatialFft,
        f: PhaseSpaceField,
        psi: WaveField,
        m_f0: f64,
        kernel: KernelKind,
    ) -> Result<Self> {
        let rho = rho_moment(grid, &f);
        let n_c = compute_nc(grid, fft, &psi, kernel);
        let (v_pot, w_pot) = build_potentials(&rho, m_f0, grid.volume_r());
        let state = Self {
            f,
            psi,
            rho,
            n_c,
            v_pot,
            w_pot,
            m_f0,
            step_count: 0,
        };
        state.check_invariants()?;
        Ok(state)
    }

    pub fn t(&self) -> f64 {
        self.f.time()
    }

    /// Structural invariants: `W = -1 - V` pointwise, positive coupling, and
    /// agreeing timestamps.
    pub fn check_invariants(&self) -> Result<()> {
        let min_nc = self.n_c.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_nc <= 0.0 {
            return Err(CoreError::CouplingPositivity {
                min_nc,
                step: self.step_count,
            });
        }
        for (v, w) in self.v_pot.iter().zip(&self.w_pot) {
            if (w + 1.0 + v).abs() > 1e-12 {
                return Err(CoreError::Degenerate(format!(
                    "potential identity broken: W = {w}, V = {v}"
                )));
            }
        }
        if (self.f.time() - self.psi.time()).abs() > 1e-10 {
            return Err(CoreError::Degenerate(format!(
                "field timestamps diverged: f at {}, psi at {}",
                self.f.time(),
                self.psi.time()
            )));
        }
        Ok(())
    }
}
