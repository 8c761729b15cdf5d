//! The defocusing cubic NLS solver with time-dependent coupling potential and
//! the normal-form apparatus: perturbation views `u`/`v`/`Z`, the bilinear and
//! cubic multiplier family, the `J` operator, and the `X`/`S` norms.

pub mod field;
pub mod nonlin;
pub mod norms;
pub mod residual;
pub mod step;
pub mod symbols;
pub mod views;

pub use field::WaveField;
pub use nonlin::{forcing_m, forcing_m_full, nonlinearity_nz, q1_term};
pub use norms::{h1_norm, j_weight, s_seminorm, x_norm};
pub use residual::{residual_norm, scaling_slope, ResidualConfig};
pub use step::{nls_step, wave_mass};
pub use symbols::B1Variant;
pub use views::{normal_form_z, to_views, PerturbationViews};
