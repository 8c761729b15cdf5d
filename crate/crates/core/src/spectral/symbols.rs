//! Precomputed Fourier symbols on the discrete frequency lattice.

use crate::spectral::grid::Grid;
use crate::C64;

/// Smoothing kernel used to mollify the condensate density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// `e^{-|r|}`, the kernel of the analyzed system.
    Exponential,
    /// `e^{-|r|²}`, the variant appearing in the model derivation.
    Gaussian,
}

/// Immutable per-lattice symbol tables shared by the NLS solver and the
/// diagnostics: `⟨ζ⟩ = sqrt(2 + |ζ|²)`, `U = |ζ|/⟨ζ⟩`, `H = |ζ|·⟨ζ⟩`.
#[derive(Debug, Clone)]
pub struct SymbolTable {
    abs2: Vec<f64>,
    bracket: Vec<f64>,
    u_sym: Vec<f64>,
    h_sym: Vec<f64>,
}

impl SymbolTable {
    pub fn new(grid: &Grid) -> Self {
        let total = grid.n_r_total();
        let mut abs2 = Vec::with_capacity(total);
        let mut bracket = Vec::with_capacity(total);
        let mut u_sym = Vec::with_capacity(total);
        let mut h_sym = Vec::with_capacity(total);
        for lin in 0..total {
            let a2 = grid.zeta_abs2(lin);
            let br = (2.0 + a2).sqrt();
            let abs = a2.sqrt();
            abs2.push(a2);
            bracket.push(br);
            u_sym.push(abs / br);
            h_sym.push(abs * br);
        }
        Self {
            abs2,
            bracket,
            u_sym,
            h_sym,
        }
    }

    /// `|ζ|²` per lattice index.
    pub fn abs2(&self) -> &[f64] {
        &self.abs2
    }

    /// `⟨ζ⟩ = sqrt(2 + |ζ|²)` per lattice index.
    pub fn bracket(&self) -> &[f64] {
        &self.bracket
    }

    /// `U(ζ) = |ζ| / ⟨ζ⟩` per lattice index. `U(0) = 0`.
    pub fn u(&self) -> &[f64] {
        &self.u_sym
    }

    /// `H(ζ) = |ζ| · ⟨ζ⟩` per lattice index. `H(0) = 0`.
    pub fn h(&self) -> &[f64] {
        &self.h_sym
    }

    /// Propagator symbol `e^{-i t H(ζ)}`.
    pub fn h_propagator(&self, t: f64) -> Vec<C64> {
        self.h_sym
            .iter()
            .map(|&h| C64::new(0.0, -t * h).exp())
            .collect()
    }

    /// Principal real branch of `U(ζ)^{power}` with the `ζ = 0` entry zeroed.
    /// Negative powers are undefined at the mean mode; callers apply this only
    /// to mean-free inputs (see the normal-form multipliers).
    pub fn u_power(&self, power: f64) -> Vec<f64> {
        self.u_sym
            .iter()
            .map(|&u| if u == 0.0 { 0.0 } else { u.powf(power) })
            .collect()
    }
}

/// Exact continuum Fourier symbol of the normalized coupling kernel in
/// dimension `dim`: unit integral means `symbol(0) = 1`.
pub fn kernel_symbol(kind: KernelKind, dim: usize, zeta_abs2: f64) -> f64 {
    match kind {
        // F[e^{-|r|}](ζ) / ∫ e^{-|r|} dr = (1 + |ζ|²)^{-(d+1)/2}
        KernelKind::Exponential => (1.0 + zeta_abs2).powf(-((dim as f64 + 1.0) / 2.0)),
        // F[e^{-|r|²}](ζ) / ∫ e^{-|r|²} dr = e^{-|ζ|²/4}
        KernelKind::Gaussian => (-zeta_abs2 / 4.0).exp(),
    }
}

/// Transport phase `e^{-i (p·ζ) dt}`; the dot product pairs the first `dim_r`
/// momentum components with the spatial frequencies.
pub fn transport_phase(zeta: &[f64; 3], p: &[f64; 3], dim_r: usize, dt: f64) -> C64 {
    let mut dot = 0.0;
    for a in 0..dim_r {
        dot += p[a] * zeta[a];
    }
    C64::new(0.0, -dot * dt).exp()
}
