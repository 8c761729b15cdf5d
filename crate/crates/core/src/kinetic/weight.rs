//! The Bose–Einstein momentum weight and the kinetic equilibrium.

use crate::spectral::grid::Grid;
use crate::{CoreError, Result};

/// Precomputed Bose–Einstein weight `𝔈(p) = c_e / (e^{ω(p)} - 1)` on the
/// momentum grid, with `ω(p) = sqrt(|p|² + ε²)`. The regularization `ε > 0`
/// removes the `p = 0` pole and is mandatory in one momentum dimension, where
/// the unregularized profile is not integrable. The normalization `c_e` is
/// chosen so the discrete momentum integral is exactly one, which makes the
/// equilibrium identities below hold at machine precision on the grid.
#[derive(Debug, Clone)]
pub struct BoseEinsteinWeight {
    epsilon: f64,
    c_e: f64,
    e_weight: Vec<f64>,
    inv_weight: Vec<f64>,
    mass_of_weight: f64,
    truncation_bound: f64,
}

/// Build the weight for a grid. `ε = 0` is allowed for `dim_p >= 2`; in one
/// dimension the profile `1/(e^{|p|}-1) ~ 1/|p|` is not integrable and a
/// positive ε is required.
pub fn make_weight(grid: &Grid, epsilon: f64) -> Result<BoseEinsteinWeight> {
    if epsilon < 0.0 {
        return Err(CoreError::Integrability(format!(
            "regularization must be nonnegative, got {epsilon}"
        )));
    }
    if epsilon == 0.0 && grid.dim_p() < 2 {
        return Err(CoreError::Integrability(
            "the unregularized Bose-Einstein profile is not integrable for dim_p = 1; \
             pass a positive regularization"
                .into(),
        ));
    }
    let shape = |abs_p: f64| {
        let omega = (abs_p * abs_p + epsilon * epsilon).sqrt();
        1.0 / (omega.exp() - 1.0)
    };
    let total = grid.n_p_total();
    let cell = grid.cell_p();
    let mut raw = Vec::with_capacity(total);
    for lin in 0..total {
        raw.push(shape(grid.p_abs(lin)));
    }
    let raw_mass: f64 = raw.iter().sum::<f64>() * cell;
    let c_e = 1.0 / raw_mass;
    let e_weight: Vec<f64> = raw.iter().map(|v| v * c_e).collect();
    let inv_weight: Vec<f64> = e_weight.iter().map(|v| 1.0 / v).collect();
    let mass_of_weight = e_weight.iter().sum::<f64>() * cell;
    let truncation_bound = tail_mass_bound(grid.dim_p(), grid.p_max(), epsilon) * c_e;
    Ok(BoseEinsteinWeight {
        epsilon,
        c_e,
        e_weight,
        inv_weight,
        mass_of_weight,
        truncation_bound,
    })
}

/// Upper bound for the continuum mass of the unnormalized profile outside the
/// momentum box, from `1/(e^ω - 1) <= 2 e^{-ω}` for `ω >= 1`.
fn tail_mass_bound(dim: usize, p_max: f64, epsilon: f64) -> f64 {
    let s0 = (p_max * p_max + epsilon * epsilon).sqrt().max(1.0);
    let surface = match dim {
        1 => 2.0,
        2 => std::f64::consts::TAU,
        _ => 2.0 * std::f64::consts::TAU,
    };
    // ∫_{s0}^∞ s^{d-1} e^{-s} ds in closed form.
    let radial = match dim {
        1 => (-s0).exp(),
        2 => (s0 + 1.0) * (-s0).exp(),
        _ => (s0 * s0 + 2.0 * s0 + 2.0) * (-s0).exp(),
    };
    2.0 * surface * radial
}

impl BoseEinsteinWeight {
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Discrete normalization constant.
    pub fn c_e(&self) -> f64 {
        self.c_e
    }

    /// `𝔈(p)` per momentum node.
    pub fn e_weight(&self) -> &[f64] {
        &self.e_weight
    }

    /// `𝔈^{-1}(p)` per momentum node.
    pub fn inv_weight(&self) -> &[f64] {
        &self.inv_weight
    }

    /// Discrete `∫ 𝔈 dp`; exactly one by construction.
    pub fn mass_of_weight(&self) -> f64 {
        self.mass_of_weight
    }

    /// Reported upper bound for the continuum mass lost to the box truncation.
    pub fn truncation_bound(&self) -> f64 {
        self.truncation_bound
    }

    /// Evaluate the normalized weight off the grid (used at cell faces and in
    /// the regularized `p = 0` checks).
    pub fn weight_at(&self, abs_p: f64) -> f64 {
        let omega = (abs_p * abs_p + self.epsilon * self.epsilon).sqrt();
        self.c_e / (omega.exp() - 1.0)
    }

    /// Evaluate `𝔈^{-1}` off the grid.
    pub fn inv_weight_at(&self, abs_p: f64) -> f64 {
        let omega = (abs_p * abs_p + self.epsilon * self.epsilon).sqrt();
        (omega.exp() - 1.0) / self.c_e
    }
}

/// The kinetic equilibrium `f_∞(p) = (M_{f0} / Vol) · 𝔈(p)`.
///
/// On the torus the total-mass normalization divides by the spatial volume so
/// that `∫∫ f_∞ dr dp = M_{f0}` and `ρ[f_∞] ≡ M_{f0} / Vol`.
#[derive(Debug, Clone)]
pub struct Equilibrium {
    m_f0: f64,
    density: f64,
    f_inf_p: Vec<f64>,
}

impl Equilibrium {
    pub fn new(grid: &Grid, weight: &BoseEinsteinWeight, m_f0: f64) -> Self {
        let density = m_f0 / grid.volume_r();
        let f_inf_p = weight.e_weight().iter().map(|&e| density * e).collect();
        Self {
            m_f0,
            density,
            f_inf_p,
        }
    }

    pub fn m_f0(&self) -> f64 {
        self.m_f0
    }

    /// The spatially constant value of `ρ[f_∞]`.
    pub fn density(&self) -> f64 {
        self.density
    }

    /// `f_∞` as a momentum profile.
    pub fn profile(&self) -> &[f64] {
        &self.f_inf_p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Adaptive Simpson quadrature, test-side oracle.
    fn simpson<F: Fn(f64) -> f64 + Copy>(f: F, a: f64, b: f64, tol: f64) -> f64 {
        fn simpson_rule<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
            (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
        }
        fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let left = simpson_rule(f, a, m);
            let right = simpson_rule(f, m, b);
            if depth > 40 || (left + right - whole).abs() <= 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                recurse(f, a, m, left, tol / 2.0, depth + 1)
                    + recurse(f, m, b, right, tol / 2.0, depth + 1)
            }
        }
        let whole = simpson_rule(&f, a, b);
        recurse(&f, a, b, whole, tol, 0)
    }

    /// Continuum normalization for the d-dimensional regularized profile.
    fn continuum_c(dim: usize, epsilon: f64) -> f64 {
        let surface = match dim {
            1 => 2.0,
            2 => std::f64::consts::TAU,
            _ => 2.0 * std::f64::consts::TAU,
        };
        let integrand = move |s: f64| {
            if s == 0.0 && epsilon == 0.0 {
                return 0.0;
            }
            let omega = (s * s + epsilon * epsilon).sqrt();
            s.powi(dim as i32 - 1) / (omega.exp() - 1.0)
        };
        let mass = surface * simpson(integrand, 0.0, 60.0, 1e-12);
        1.0 / mass
    }

    #[test]
    fn rejects_unregularized_one_dimensional_weight() {
        let g = Grid::new(1, 1, 8, 16, 1.0, 8.0).unwrap();
        assert!(matches!(make_weight(&g, 0.0), Err(CoreError::Integrability(_))));
        assert!(make_weight(&g, 0.5).is_ok());
    }

    #[test]
    fn discrete_mass_is_one_and_inverse_is_exact() {
        let g = Grid::new(1, 1, 4, 64, 1.0, 20.0).unwrap();
        let w = make_weight(&g, 0.5).unwrap();
        assert!((w.mass_of_weight() - 1.0).abs() <= 1e-12);
        for (e, i) in w.e_weight().iter().zip(w.inv_weight()) {
            assert!(*e > 0.0);
            // Reciprocal pairs agree to the last unit in the last place.
            assert!((e * i - 1.0).abs() <= 2.0 * f64::EPSILON);
        }
    }

    #[test]
    fn weight_is_isotropic() {
        let g = Grid::new(1, 2, 4, 12, 1.0, 6.0).unwrap();
        let w = make_weight(&g, 0.25).unwrap();
        // Nodes with equal |p| carry equal weight.
        for a in 0..g.n_p_total() {
            for b in 0..g.n_p_total() {
                if (g.p_abs(a) - g.p_abs(b)).abs() < 1e-12 {
                    assert!((w.e_weight()[a] - w.e_weight()[b]).abs() <= 1e-15);
                }
            }
        }
    }

    #[test]
    fn regularized_weight_is_finite_at_zero() {
        let g = Grid::new(1, 1, 4, 32, 1.0, 10.0).unwrap();
        let eps = 0.5;
        let w = make_weight(&g, eps).unwrap();
        let at_zero = w.weight_at(0.0);
        assert!(at_zero.is_finite());
        assert!((at_zero - w.c_e() / (eps.exp() - 1.0)).abs() <= 1e-15);
    }

    #[test]
    fn discrete_normalization_matches_continuum_3d() {
        // Oracle: adaptive quadrature of 4π ∫ s²/(e^s - 1) ds = 8π ζ(3).
        let oracle = continuum_c(3, 0.0);
        // Sanity: the oracle itself reproduces 1/(8π ζ(3)).
        let zeta3 = 1.2020569031595942;
        let closed = 1.0 / (8.0 * std::f64::consts::PI * zeta3);
        assert!(((oracle - closed) / closed).abs() < 1e-9);
        // Midpoint quadrature of the 1/|p|-type profile carries O(dp²) error
        // dominated by the cells near the origin; check the trend and bound.
        let coarse = make_weight(&Grid::new(1, 3, 2, 40, 1.0, 20.0).unwrap(), 0.0).unwrap();
        let fine = make_weight(&Grid::new(1, 3, 2, 80, 1.0, 20.0).unwrap(), 0.0).unwrap();
        let rel_coarse = ((coarse.c_e() - oracle) / oracle).abs();
        let rel_fine = ((fine.c_e() - oracle) / oracle).abs();
        assert!(rel_coarse <= 5e-2, "dp = 1 gap {rel_coarse}");
        assert!(rel_fine <= 1.5e-2, "dp = 1/2 gap {rel_fine}");
        assert!(rel_fine < rel_coarse / 2.5, "no quadratic refinement trend");
    }

    #[test]
    fn discrete_normalization_matches_continuum_1d_regularized() {
        let g = Grid::new(1, 1, 2, 128, 1.0, 24.0).unwrap();
        let w = make_weight(&g, 0.5).unwrap();
        let oracle = continuum_c(1, 0.5);
        let rel = ((w.c_e() - oracle) / oracle).abs();
        assert!(rel <= 2e-3, "discrete c_e off by {rel}");
    }

    #[test]
    fn truncation_bound_reported_and_small_for_wide_boxes() {
        let g = Grid::new(1, 1, 2, 128, 1.0, 24.0).unwrap();
        let w = make_weight(&g, 0.5).unwrap();
        assert!(w.truncation_bound() > 0.0);
        assert!(w.truncation_bound() < 1e-6);
    }

    #[test]
    fn equilibrium_has_constant_density() {
        let g = Grid::new(1, 1, 8, 48, 2.5, 16.0).unwrap();
        let w = make_weight(&g, 0.5).unwrap();
        let eq = Equilibrium::new(&g, &w, 2.0);
        let rho: f64 = eq.profile().iter().sum::<f64>() * g.cell_p();
        assert!(((rho - 2.0 / g.volume_r()) / eq.density()).abs() <= 1e-12);
    }
}
