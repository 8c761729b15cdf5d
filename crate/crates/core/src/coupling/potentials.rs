//! The coupling potentials: `V = ρ - M_{f0}/Vol` and `W = -1 - V`.
//!
//! On the torus the total-mass constant is divided by the spatial volume so
//! that the equilibrium density gives `V ≡ 0` exactly.

/// Build `(V, W)` from the excitation density.
pub fn build_potentials(rho: &[f64], m_f0: f64, volume: f64) -> (Vec<f64>, Vec<f64>) {
    let background = m_f0 / volume;
    let v: Vec<f64> = rho.iter().map(|&r| r - background).collect();
    let w: Vec<f64> = v.iter().map(|&x| -1.0 - x).collect();
    (v, w)
}
