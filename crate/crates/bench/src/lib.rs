//! Shared fixtures for the benchmark targets.

use num_complex::Complex;
use thermalcloud_core::coupling::CouplingDriver;
use thermalcloud_core::kinetic::{make_weight, OperatorKind, PhaseSpaceField};
use thermalcloud_core::nls::WaveField;
use thermalcloud_core::spectral::symbols::KernelKind;
use thermalcloud_core::Grid;

pub type C64 = Complex<f64>;

/// The 1-D fast-CI coupled configuration.
pub fn coupled_1d(kind: OperatorKind) -> (CouplingDriver, PhaseSpaceField, WaveField) {
    let grid = Grid::new(1, 1, 32, 48, 20.0, 14.0).unwrap();
    let weight = make_weight(&grid, 0.5).unwrap();
    let driver = CouplingDriver::new(grid, weight, 1.0, kind, KernelKind::Exponential, 0.05);
    let grid = &driver.grid;
    let l = grid.length_r();
    let profile = driver.stepper.equilibrium.profile().to_vec();
    let f = PhaseSpaceField::from_fn(grid, |r, p| {
        let x = grid.x_vec(r)[0];
        let s = grid.p_abs(p);
        profile[p] + 5e-3 * (std::f64::consts::TAU * x / l).cos() * (-s * s / 4.0).exp()
    });
    let psi = WaveField::from_fn(grid, |r| {
        let x = grid.x_vec(r)[0];
        C64::new(1.0 + 5e-3 * (std::f64::consts::TAU * x / l).cos(), 0.0)
    });
    (driver, f, psi)
}

/// The 3-D momentum grid used by the heavy decay run.
pub fn momentum_3d() -> Grid {
    Grid::new(1, 3, 2, 24, 20.0, 18.0).unwrap()
}
