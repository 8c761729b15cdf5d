//! Rate fitting, inequality verification, and the hypocoercivity energy
//! functional: turns trajectories into pass/fail checks.

pub mod energy;
pub mod fit;
pub mod poincare;
pub mod report;
pub mod series;

pub use energy::{perturbed_energy, validate_delta, PerturbedEnergy};
pub use fit::{fit_rate, FitModel, RateFit};
pub use poincare::{poincare_quotient, rayleigh_search, GradientKind};
pub use report::{conservation_report, CheckRecord, ConservationReport};
pub use series::DiagnosticsSeries;
