//! The assembled system: the mollified condensate density `N_c` from `Ψ`, the
//! potentials `V` and `W` from `ρ[f]`, lockstep time advancement of both
//! fields, and the Picard fixed-point mode.

pub mod driver;
pub mod nc;
pub mod picard;
pub mod potentials;
pub mod state;

pub use driver::{CouplingDriver, Observation, CHANNELS};
pub use nc::{compute_nc, compute_nc_values, grad_nc, grad_nc_inf, periodization_bound};
pub use picard::{picard_iterate, PicardOutcome};
pub use potentials::build_potentials;
pub use state::CouplingState;
