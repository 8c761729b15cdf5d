//! Time stepping for the kinetic equation: exact spectral transport on the
//! torus, closed-form `L1` relaxation, implicit `L2` diffusion, and the Strang
//! composition `transport(dt/2) ∘ collision(dt) ∘ transport(dt/2)`.

use crate::kinetic::field::PhaseSpaceField;
use crate::kinetic::ops::{L2Operator, OperatorKind};
use crate::kinetic::weight::{BoseEinsteinWeight, Equilibrium};
use crate::spectral::fft::SpatialFft;
use crate::spectral::grid::Grid;
use crate::spectral::symbols::transport_phase;
use crate::{C64, CoreError, Result};

/// Exact free transport over `dt`: per momentum node the spatial modes pick up
/// the phase `e^{-i (p·ζ) dt}`. Mass and every spatial `L^q` norm are preserved
/// up to roundoff for resolved fields; the unpaired Nyquist mode of an even
/// real grid cannot carry a phase shift, so fields are expected to be
/// band-limited below it (true of every preset). The timestamp is not
/// advanced (substep primitive).
pub fn transport_step(
    grid: &Grid,
    fft: &SpatialFft,
    f: &PhaseSpaceField,
    dt: f64,
) -> PhaseSpaceField {
    let mut out = f.clone();
    transport_in_place(grid, fft, &mut out, dt);
    out
}

pub(crate) fn transport_in_place(grid: &Grid, fft: &SpatialFft, f: &mut PhaseSpaceField, dt: f64) {
    if dt == 0.0 {
        return;
    }
    let nr = grid.n_r_total();
    let np = grid.n_p_total();
    let scale = 1.0 / nr as f64;
    let mut line = vec![C64::new(0.0, 0.0); nr];
    for p_lin in 0..np {
        let p = grid.p_vec(p_lin);
        for r in 0..nr {
            line[r] = C64::new(f.data()[r * np + p_lin], 0.0);
        }
        fft.fft_raw(&mut line);
        for r in 0..nr {
            let z = grid.zeta_vec(r);
            line[r] *= transport_phase(&z, &p, grid.dim_r(), dt);
        }
        fft.ifft_raw(&mut line);
        let data = f.data_mut();
        for r in 0..nr {
            data[r * np + p_lin] = line[r].re * scale;
        }
    }
}

/// Advance `∂_t f = N_c(r) · L[f]` over `dt`.
///
/// For `L1` the update is the closed-form solution of the relaxation system
/// (`ρ` is pointwise invariant, so `f ← 𝔈ρ + (f - 𝔈ρ) e^{-N_c dt}`), exact and
/// positivity-preserving for any `dt`. For `L2` it is one backward Euler solve
/// in momentum per spatial node, unconditionally stable and `𝓛`-contractive.
///
/// A negative coupling is rejected; `N_c = 0` degenerates to the identity.
pub fn collision_step(
    grid: &Grid,
    f: &PhaseSpaceField,
    n_c: &[f64],
    dt: f64,
    kind: OperatorKind,
    weight: &BoseEinsteinWeight,
    equilibrium: &Equilibrium,
    l2: &L2Operator,
) -> Result<PhaseSpaceField> {
    let mut out = f.clone();
    collision_in_place(grid, &mut out, n_c, dt, kind, weight, equilibrium, l2)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn collision_in_place(
    grid: &Grid,
    f: &mut PhaseSpaceField,
    n_c: &[f64],
    dt: f64,
    kind: OperatorKind,
    weight: &BoseEinsteinWeight,
    equilibrium: &Equilibrium,
    l2: &L2Operator,
) -> Result<()> {
    let min_nc = n_c.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_nc < 0.0 {
        return Err(CoreError::CouplingPositivity { min_nc, step: 0 });
    }
    let np = grid.n_p_total();
    let cell_p = grid.cell_p();
    match kind {
        OperatorKind::L1 => {
            let e = weight.e_weight();
            for r in 0..grid.n_r_total() {
                let row = f.momentum_row_mut(np, r);
                let rho: f64 = row.iter().sum::<f64>() * cell_p;
                let decay = (-n_c[r] * dt).exp();
                for p in 0..np {
                    let rest = e[p] * rho;
                    row[p] = rest + (row[p] - rest) * decay;
                }
            }
        }
        OperatorKind::L2 => {
            let profile = equilibrium.profile();
            let mut g = vec![0.0; np];
            for r in 0..grid.n_r_total() {
                let row = f.momentum_row_mut(np, r);
                for p in 0..np {
                    g[p] = row[p] - profile[p];
                }
                l2.solve_backward_euler(&mut g, n_c[r] * dt)?;
                for p in 0..np {
                    row[p] = profile[p] + g[p];
                }
            }
        }
    }
    Ok(())
}

/// One Strang-split kinetic step; advances the field timestamp by `dt`.
#[allow(clippy::too_many_arguments)]
pub fn kinetic_step(
    grid: &Grid,
    fft: &SpatialFft,
    f: &PhaseSpaceField,
    n_c: &[f64],
    dt: f64,
    kind: OperatorKind,
    weight: &BoseEinsteinWeight,
    equilibrium: &Equilibrium,
    l2: &L2Operator,
) -> Result<PhaseSpaceField> {
    let mut out = f.clone();
    transport_in_place(grid, fft, &mut out, 0.5 * dt);
    collision_in_place(grid, &mut out, n_c, dt, kind, weight, equilibrium, l2)?;
    transport_in_place(grid, fft, &mut out, 0.5 * dt);
    out.advance_time(dt);
    Ok(out)
}

/// Bundles the pieces a kinetic run needs; the stepper owns the field during a
/// step and callers read diagnostics between steps.
pub struct KineticStepper {
    pub fft: SpatialFft,
    pub weight: BoseEinsteinWeight,
    pub equilibrium: Equilibrium,
    pub l2: L2Operator,
    pub kind: OperatorKind,
}

impl KineticStepper {
    pub fn new(grid: &Grid, weight: BoseEinsteinWeight, m_f0: f64, kind: OperatorKind) -> Self {
        let equilibrium = Equilibrium::new(grid, &weight, m_f0);
        let l2 = L2Operator::new(grid, &weight);
        Self {
            fft: SpatialFft::new(grid),
            weight,
            equilibrium,
            l2,
            kind,
        }
    }

    pub fn step(&self, grid: &Grid, f: &mut PhaseSpaceField, n_c: &[f64], dt: f64) -> Result<()> {
        transport_in_place(grid, &self.fft, f, 0.5 * dt);
        collision_in_place(
            grid,
            f,
            n_c,
            dt,
            self.kind,
            &self.weight,
            &self.equilibrium,
            &self.l2,
        )?;
        transport_in_place(grid, &self.fft, f, 0.5 * dt);
        f.advance_time(dt);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinetic::norms::{l_norm_deviation, mass, rho_moment};
    use crate::kinetic::weight::make_weight;

    fn setup(n_r: usize, n_p: usize) -> (Grid, SpatialFft, BoseEinsteinWeight) {
        let grid = Grid::new(1, 1, n_r, n_p, 2.0, 12.0).unwrap();
        let fft = SpatialFft::new(&grid);
        let weight = make_weight(&grid, 0.5).unwrap();
        (grid, fft, weight)
    }

    #[test]
    fn transport_leaves_homogeneous_data_unchanged() {
        let (grid, fft, weight) = setup(16, 32);
        let f = PhaseSpaceField::from_profile(&grid, weight.e_weight());
        let out = transport_step(&grid, &fft, &f, 0.37);
        for (a, b) in out.data().iter().zip(f.data()) {
            assert!((a - b).abs() <= 1e-13);
        }
    }

    #[test]
    fn transport_shifts_a_single_mode_exactly() {
        let (grid, fft, weight) = setup(32, 16);
        let l = grid.length_r();
        let e = weight.e_weight().to_vec();
        let f = PhaseSpaceField::from_fn(&grid, |r, p| {
            (std::f64::consts::TAU * grid.x_vec(r)[0] / l).cos() * e[p]
        });
        let dt = 0.21;
        let out = transport_step(&grid, &fft, &f, dt);
        let np = grid.n_p_total();
        for r in 0..grid.n_r_total() {
            let x = grid.x_vec(r)[0];
            for p in 0..np {
                let p1 = grid.p_vec(p)[0];
                let expect = (std::f64::consts::TAU * (x - p1 * dt) / l).cos() * e[p];
                assert!((out.value(np, r, p) - expect).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn transport_conserves_mass() {
        let (grid, fft, _) = setup(16, 32);
        let f = PhaseSpaceField::from_fn(&grid, |r, p| {
            1.0 + 0.5 * ((r * 7 + p * 3) as f64).sin()
        });
        let m0 = mass(&grid, &f);
        let out = transport_step(&grid, &fft, &f, 0.83);
        assert!(((mass(&grid, &out) - m0) / m0).abs() <= 1e-12);
    }

    #[test]
    fn l1_collision_reproduces_exact_relaxation_for_any_dt() {
        let (grid, _fft, weight) = setup(4, 48);
        let eq = Equilibrium::new(&grid, &weight, 1.0);
        let l2 = L2Operator::new(&grid, &weight);
        // Homogeneous but non-equilibrium momentum profile.
        let f0 = PhaseSpaceField::from_fn(&grid, |_, p| {
            let x = grid.p_vec(p)[0];
            weight.e_weight()[p] * (1.0 + 0.4 * (-x * x / 4.0).exp())
        });
        let n = 1.3;
        let n_c = vec![n; grid.n_r_total()];
        let np = grid.n_p_total();
        let rho0 = rho_moment(&grid, &f0);
        for dt in [0.05, 0.7, 3.0] {
            let out = collision_step(&grid, &f0, &n_c, dt, OperatorKind::L1, &weight, &eq, &l2)
                .unwrap();
            let decay = (-n * dt).exp();
            for r in 0..grid.n_r_total() {
                for p in 0..np {
                    let rest = weight.e_weight()[p] * rho0[r];
                    let expect = rest + (f0.value(np, r, p) - rest) * decay;
                    assert!((out.value(np, r, p) - expect).abs() <= 1e-14);
                }
            }
        }
    }

    #[test]
    fn l1_collision_preserves_rho_pointwise() {
        let (grid, _fft, weight) = setup(8, 32);
        let eq = Equilibrium::new(&grid, &weight, 1.0);
        let l2 = L2Operator::new(&grid, &weight);
        let f = PhaseSpaceField::from_fn(&grid, |r, p| {
            weight.e_weight()[p] * (1.0 + 0.2 * ((r + p) as f64).cos())
        });
        let n_c: Vec<f64> = (0..grid.n_r_total()).map(|r| 1.0 + 0.3 * (r as f64).sin()).collect();
        let rho0 = rho_moment(&grid, &f);
        let out = collision_step(&grid, &f, &n_c, 0.4, OperatorKind::L1, &weight, &eq, &l2).unwrap();
        let rho1 = rho_moment(&grid, &out);
        for (a, b) in rho0.iter().zip(&rho1) {
            assert!(((a - b) / a).abs() <= 1e-12);
        }
    }

    #[test]
    fn both_operators_fix_the_equilibrium() {
        let (grid, fft, weight) = setup(8, 48);
        let eq = Equilibrium::new(&grid, &weight, 2.0);
        let l2 = L2Operator::new(&grid, &weight);
        let f = PhaseSpaceField::from_profile(&grid, eq.profile());
        let n_c = vec![1.0; grid.n_r_total()];
        for kind in [OperatorKind::L1, OperatorKind::L2] {
            let out =
                kinetic_step(&grid, &fft, &f, &n_c, 0.3, kind, &weight, &eq, &l2).unwrap();
            let dev = l_norm_deviation(&grid, &out, eq.profile(), &weight);
            assert!(dev <= 1e-12, "equilibrium moved under {kind:?}: {dev}");
        }
    }

    #[test]
    fn negative_coupling_is_rejected_and_zero_is_identity() {
        let (grid, fft, weight) = setup(4, 16);
        let eq = Equilibrium::new(&grid, &weight, 1.0);
        let l2 = L2Operator::new(&grid, &weight);
        let f = PhaseSpaceField::from_profile(&grid, weight.e_weight());
        let bad = vec![-0.1; grid.n_r_total()];
        assert!(matches!(
            collision_step(&grid, &f, &bad, 0.1, OperatorKind::L1, &weight, &eq, &l2),
            Err(CoreError::CouplingPositivity { .. })
        ));
        // N_c = 0: pure transport, reversible.
        let zero = vec![0.0; grid.n_r_total()];
        let l = grid.length_r();
        let g = PhaseSpaceField::from_fn(&grid, |r, p| {
            let x = grid.x_vec(r)[0];
            weight.e_weight()[p] * (1.0 + 0.2 * (std::f64::consts::TAU * x / l).cos())
        });
        let fwd = kinetic_step(&grid, &fft, &g, &zero, 0.4, OperatorKind::L1, &weight, &eq, &l2)
            .unwrap();
        let back = kinetic_step(&grid, &fft, &fwd, &zero, -0.4, OperatorKind::L1, &weight, &eq, &l2)
            .unwrap();
        let num: f64 = back
            .data()
            .iter()
            .zip(g.data())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let den: f64 = g.data().iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!(num / den <= 1e-10);
    }

    #[test]
    fn homogeneous_l1_step_matches_exact_solution_through_strang() {
        // Transport is the identity on homogeneous data, so the full Strang
        // step must be exact for constant N_c.
        let (grid, fft, weight) = setup(4, 48);
        let eq = Equilibrium::new(&grid, &weight, 1.0);
        let l2 = L2Operator::new(&grid, &weight);
        let f0 = PhaseSpaceField::from_fn(&grid, |_, p| {
            weight.e_weight()[p] + 0.05 * (-grid.p_vec(p)[0].powi(2)).exp()
        });
        let n_c = vec![1.0; grid.n_r_total()];
        let np = grid.n_p_total();
        let rho0 = rho_moment(&grid, &f0)[0];
        let mut f = f0.clone();
        let dt = 0.25;
        for _ in 0..8 {
            f = kinetic_step(&grid, &fft, &f, &n_c, dt, OperatorKind::L1, &weight, &eq, &l2)
                .unwrap();
        }
        let t = 8.0 * dt;
        let decay = (-t).exp();
        for p in 0..np {
            let rest = weight.e_weight()[p] * rho0;
            let expect = rest + (f0.value(np, 0, p) - rest) * decay;
            assert!((f.value(np, 0, p) - expect).abs() <= 1e-12);
        }
        assert!((f.time() - t).abs() <= 1e-12);
    }

    #[test]
    fn strang_splitting_self_converges_at_second_order() {
        // Smooth inhomogeneous run with spatially varying coupling; Richardson
        // self-convergence against a dt/8 reference.
        let (grid, fft, weight) = setup(16, 32);
        let eq = Equilibrium::new(&grid, &weight, 2.0);
        let l2 = L2Operator::new(&grid, &weight);
        let l = grid.length_r();
        let f0 = PhaseSpaceField::from_fn(&grid, |r, p| {
            let x = grid.x_vec(r)[0];
            eq.profile()[p] * (1.0 + 0.3 * (std::f64::consts::TAU * x / l).cos())
        });
        let n_c: Vec<f64> = (0..grid.n_r_total())
            .map(|r| 1.0 + 0.5 * (std::f64::consts::TAU * grid.x_vec(r)[0] / l).sin())
            .collect();
        let t_end = 0.8;
        let run = |dt: f64| -> PhaseSpaceField {
            let steps = (t_end / dt).round() as usize;
            let mut f = f0.clone();
            for _ in 0..steps {
                f = kinetic_step(&grid, &fft, &f, &n_c, dt, OperatorKind::L1, &weight, &eq, &l2)
                    .unwrap();
            }
            f
        };
        let reference = run(0.0125);
        let err = |f: &PhaseSpaceField| -> f64 {
            f.data()
                .iter()
                .zip(reference.data())
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        };
        let e1 = err(&run(0.1));
        let e2 = err(&run(0.05));
        let order = (e1 / e2).log2();
        assert!(
            (1.8..=2.2).contains(&order),
            "Strang order {order} (errors {e1:.3e}, {e2:.3e})"
        );
    }
}
