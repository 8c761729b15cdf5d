//! The linear quantum Boltzmann solver: Bose–Einstein weight and equilibrium,
//! the relaxation operator `L1` and the weighted Fokker–Planck operator `L2`,
//! exact spectral transport, moments, and the weighted `𝓛` norm.

pub mod field;
pub mod norms;
pub mod ops;
pub mod step;
pub mod weight;

pub use field::PhaseSpaceField;
pub use norms::{grad_l_norm, l_inner, l_norm, mass, rho_moment};
pub use ops::{apply_l1, apply_l2, apply_l2_literal, L2Operator, OperatorKind};
pub use step::{collision_step, kinetic_step, transport_step, KineticStepper};
pub use weight::{make_weight, BoseEinsteinWeight, Equilibrium};
