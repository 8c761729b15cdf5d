//! Spectral solvers for a coupled kinetic / nonlinear-Schrödinger system.
//!
//! The model couples a linear quantum Boltzmann equation for the thermal-cloud
//! phase-space density `f(t, r, p)` — posed on a spatial torus times a truncated
//! momentum box — to a defocusing cubic NLS for the condensate wave function
//! `Ψ(t, r)` with background `Ψ ≈ 1`. The two fields talk through the mollified
//! condensate density `N_c = kernel ⋆ |Ψ|²` (which multiplies the collision
//! operator) and the excitation density `ρ[f]` (which enters the NLS potential).
//!
//! Module map:
//! - [`spectral`]: grids, Fourier transforms, multipliers (including bilinear
//!   and trilinear symbols), Littlewood–Paley projections.
//! - [`kinetic`]: Bose–Einstein weight, collision operators `L1`/`L2`, exact
//!   spectral transport, Strang stepping, the weighted `𝓛` norm.
//! - [`nls`]: split-step propagator, perturbation views `u`/`v`/`Z`, the full
//!   normal-form multiplier family, `J`-weighted norms.
//! - [`coupling`]: the assembled system, potentials, the Picard fixed-point
//!   iteration, time-series recording.
//! - [`diagnostics`]: rate fits, weighted Poincaré quotients, the perturbed
//!   hypocoercivity energy, conservation reports.

pub mod coupling;
pub mod diagnostics;
pub mod error;
pub mod kinetic;
pub mod nls;
pub mod spectral;

pub use error::CoreError;
pub use spectral::grid::Grid;

/// Convenience alias used throughout the crate.
pub type C64 = num_complex::Complex<f64>;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, CoreError>;
