//! Littlewood–Paley projections on the discrete frequency lattice.

use crate::spectral::fft::SpatialFft;
use crate::spectral::grid::Grid;
use crate::spectral::multiplier::apply_multiplier_fn;
use crate::C64;

fn bump(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

/// Smooth cutoff with plateaus: chi(s) = 1 for |s| <= 1, 0 for |s| >= 2,
/// realized as the standard C-infinity partition
///     chi(s) = psi(2 - |s|) / (psi(2 - |s|) + psi(|s| - 1)),
/// with psi(x) = exp(-1/x) for x > 0 and 0 otherwise.
pub fn chi(s: f64) -> f64 {
    let s = s.abs();
    if s <= 1.0 {
        1.0
    } else if s >= 2.0 {
        0.0
    } else {
        let a = bump(2.0 - s);
        let b = bump(s - 1.0);
        a / (a + b)
    }
}

/// The dyadic annulus symbol `chi^k(s) = chi(s/k) - chi(2 s/k)`, supported on
/// `{k/2 < s < 2k}`.
pub fn chi_k(s: f64, k: f64) -> f64 {
    chi(s / k) - chi(2.0 * s / k)
}

/// Dyadic scales `2^j` covering the grid's nonzero frequencies: the telescoped
/// sum of `chi_k` over this range equals one on every nonzero lattice point.
pub fn dyadic_range(grid: &Grid) -> Vec<f64> {
    let zeta_min = std::f64::consts::TAU / grid.length_r();
    let zeta_max = (0..grid.n_r_total())
        .map(|lin| grid.zeta_abs2(lin).sqrt())
        .fold(0.0f64, f64::max);
    let lo = zeta_min.log2().floor() as i32;
    let hi = zeta_max.log2().ceil() as i32;
    (lo..=hi).map(|j| (2.0f64).powi(j)).collect()
}

/// Project onto the dyadic annulus at scale `k`. Scales outside the resolvable
/// range simply return the zero field.
pub fn lp_project(grid: &Grid, fft: &SpatialFft, field: &[C64], k: f64) -> Vec<C64> {
    apply_multiplier_fn(grid, fft, field, |z| {
        let s = (z[0] * z[0] + z[1] * z[1] + z[2] * z[2]).sqrt();
        C64::new(chi_k(s, k), 0.0)
    })
}

/// Split into frequencies below and at-or-above the dyadic scale `k0`:
/// `f_lo = Σ_{j<k0} chi^j(∇) f`, `f_hi = Σ_{j>=k0} chi^j(∇) f`, and
/// `f_lo + f_hi = f - mean(f)`.
pub fn lp_split(grid: &Grid, fft: &SpatialFft, field: &[C64], k0: f64) -> (Vec<C64>, Vec<C64>) {
    let range = dyadic_range(grid);
    let lo_sym = move |s: f64| -> f64 {
        range
            .iter()
            .filter(|&&k| k < k0)
            .map(|&k| chi_k(s, k))
            .sum()
    };
    let range_hi = dyadic_range(grid);
    let hi_sym = move |s: f64| -> f64 {
        range_hi
            .iter()
            .filter(|&&k| k >= k0)
            .map(|&k| chi_k(s, k))
            .sum()
    };
    let lo = apply_multiplier_fn(grid, fft, field, |z| {
        let s = (z[0] * z[0] + z[1] * z[1] + z[2] * z[2]).sqrt();
        C64::new(lo_sym(s), 0.0)
    });
    let hi = apply_multiplier_fn(grid, fft, field, |z| {
        let s = (z[0] * z[0] + z[1] * z[1] + z[2] * z[2]).sqrt();
        C64::new(hi_sym(s), 0.0)
    });
    (lo, hi)
}
