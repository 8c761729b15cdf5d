//! Property tests over randomized fields: transform identities, conservation
//! under transport and relaxation, and projection reconstruction.

use proptest::prelude::*;
use thermalcloud_core::kinetic::{
    collision_step, make_weight, norms, Equilibrium, L2Operator, OperatorKind, PhaseSpaceField,
};
use thermalcloud_core::spectral::fft::{l2_norm, l2_norm_hat, SpatialFft};
use thermalcloud_core::spectral::lp::{dyadic_range, lp_project};
use thermalcloud_core::spectral::multiplier::apply_multiplier;
use thermalcloud_core::spectral::multiplier::symbol_from_fn;
use thermalcloud_core::{Grid, C64};

/// Smooth random complex field from a handful of low modes.
fn field_from_coeffs(grid: &Grid, coeffs: &[(f64, f64)]) -> Vec<C64> {
    let l = grid.length_r();
    (0..grid.n_r_total())
        .map(|j| {
            let x = grid.x_vec(j)[0];
            let mut acc = C64::new(0.0, 0.0);
            for (k, &(re, im)) in coeffs.iter().enumerate() {
                let phase = std::f64::consts::TAU * (k as f64 + 1.0) * x / l;
                acc += C64::new(re, im) * C64::new(0.0, phase).exp();
            }
            acc + C64::new(0.3, 0.0)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parseval_and_round_trip(coeffs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..5)) {
        let grid = Grid::new(1, 1, 32, 4, 3.0, 1.0).unwrap();
        let fft = SpatialFft::new(&grid);
        let field = field_from_coeffs(&grid, &coeffs);
        let hat = fft.forward(&field);
        let phys = l2_norm(&grid, &field);
        let spec = l2_norm_hat(&grid, &hat);
        prop_assert!(((phys - spec) / phys.max(1e-12)).abs() <= 1e-12);
        let back = fft.inverse(&hat);
        let err: f64 = field.iter().zip(&back).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-12 * (1.0 + phys));
    }

    #[test]
    fn multiplier_composition_commutes(coeffs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..5),
                                       a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let grid = Grid::new(1, 1, 16, 4, 2.0, 1.0).unwrap();
        let fft = SpatialFft::new(&grid);
        let field = field_from_coeffs(&grid, &coeffs);
        let sym_a = symbol_from_fn(&grid, |z| C64::new(1.0 / (1.0 + a * a + z[0] * z[0]), a));
        let sym_b = symbol_from_fn(&grid, |z| C64::new((b * z[0]).cos(), -b));
        let ab: Vec<C64> = sym_a.iter().zip(&sym_b).map(|(x, y)| x * y).collect();
        let seq = apply_multiplier(&grid, &fft, &apply_multiplier(&grid, &fft, &field, &sym_a).unwrap(), &sym_b).unwrap();
        let joint = apply_multiplier(&grid, &fft, &field, &ab).unwrap();
        let num: f64 = seq.iter().zip(&joint).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        let den = l2_norm(&grid, &joint).max(1e-12);
        prop_assert!(num / den <= 1e-12);
    }

    #[test]
    fn lp_projections_sum_to_mean_free_part(coeffs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..6)) {
        let grid = Grid::new(1, 1, 32, 4, 5.0, 1.0).unwrap();
        let fft = SpatialFft::new(&grid);
        let field = field_from_coeffs(&grid, &coeffs);
        let mut acc = vec![C64::new(0.0, 0.0); field.len()];
        for k in dyadic_range(&grid) {
            for (s, p) in acc.iter_mut().zip(lp_project(&grid, &fft, &field, k)) {
                *s += p;
            }
        }
        let mean = field.iter().sum::<C64>() / field.len() as f64;
        let err: f64 = acc.iter().zip(&field).map(|(s, f)| (s - (f - mean)).norm()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-10);
    }

    #[test]
    fn l1_collision_preserves_density_and_mass(amps in proptest::collection::vec(0.0f64..0.5, 3),
                                               n_coupling in 0.1f64..3.0,
                                               dt in 0.01f64..1.0) {
        let grid = Grid::new(1, 1, 8, 32, 2.0, 12.0).unwrap();
        let weight = make_weight(&grid, 0.5).unwrap();
        let eq = Equilibrium::new(&grid, &weight, 1.0);
        let l2 = L2Operator::new(&grid, &weight);
        let e = weight.e_weight().to_vec();
        let l = grid.length_r();
        let f = PhaseSpaceField::from_fn(&grid, |r, p| {
            let x = grid.x_vec(r)[0];
            let mut v = e[p];
            for (k, &a) in amps.iter().enumerate() {
                v += a * e[p] * ((k as f64 + 1.0) * std::f64::consts::TAU * x / l).cos();
            }
            v
        });
        let n_c = vec![n_coupling; grid.n_r_total()];
        let out = collision_step(&grid, &f, &n_c, dt, OperatorKind::L1, &weight, &eq, &l2).unwrap();
        let rho_before = norms::rho_moment(&grid, &f);
        let rho_after = norms::rho_moment(&grid, &out);
        for (a, b) in rho_before.iter().zip(&rho_after) {
            prop_assert!(((a - b) / a.abs().max(1e-12)).abs() <= 1e-12);
        }
        let m0 = norms::mass(&grid, &f);
        let m1 = norms::mass(&grid, &out);
        prop_assert!(((m0 - m1) / m0).abs() <= 1e-12);
    }

    #[test]
    fn l2_backward_euler_contracts_for_any_step(kappa in 0.0f64..20.0, seed in 0u64..1000) {
        let grid = Grid::new(1, 1, 2, 32, 1.0, 10.0).unwrap();
        let weight = make_weight(&grid, 0.5).unwrap();
        let op = L2Operator::new(&grid, &weight);
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(12345);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state as f64 / u64::MAX as f64) - 0.5
        };
        let g0: Vec<f64> = (0..op.momentum_nodes()).map(|_| next()).collect();
        let n0 = op.inner(&g0, &g0).sqrt();
        let mut g = g0.clone();
        op.solve_backward_euler(&mut g, kappa).unwrap();
        prop_assert!(op.inner(&g, &g).sqrt() <= n0 * (1.0 + 1e-11));
    }
}
