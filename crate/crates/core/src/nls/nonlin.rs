//! Assembly of the normal-form nonlinearity `𝓝_Z`, the quartic tail `Q₁`, and
//! the potential forcing `𝓜`.

use crate::nls::symbols::{b0, b1, b2, c1, c2, c3, c4, u_sym, B1Variant};
use crate::nls::views::PerturbationViews;
use crate::spectral::fft::SpatialFft;
use crate::spectral::grid::Grid;
use crate::spectral::multiplier::{apply_bilinear, apply_trilinear, Dealiaser};
use crate::{C64, Result};

fn to_complex(f: &[f64]) -> Vec<C64> {
    f.iter().map(|&x| C64::new(x, 0.0)).collect()
}

fn mean_abs(f: &[f64]) -> f64 {
    (f.iter().sum::<f64>() / f.len() as f64).abs()
}

/// Warn when a `U^{-1}`-bearing symbol is about to act on data whose `u₂`
/// carries a mean mode: the inverse symbol zeroes that mode, so the result
/// silently drops it.
fn warn_on_mean(u2: &[f64], what: &str) {
    let m = mean_abs(u2);
    if m > 1e-12 {
        log::warn!("{what}: mean of u2 is {m:.3e}; the U^-1 symbols drop the mean mode");
    }
}

/// `|u|² u₂`, `|u|² u₁` and `|u|²` with alias-free products.
fn cubic_blocks(
    de: &Dealiaser,
    u1c: &[C64],
    u2c: &[C64],
) -> (Vec<C64>, Vec<C64>, Vec<C64>) {
    let m2: Vec<C64> = {
        let a = de.product2(u1c, u1c);
        let b = de.product2(u2c, u2c);
        a.iter().zip(&b).map(|(x, y)| x + y).collect()
    };
    let cub_u2: Vec<C64> = {
        let a = de.product3(u1c, u1c, u2c);
        let b = de.product3(u2c, u2c, u2c);
        a.iter().zip(&b).map(|(x, y)| x + y).collect()
    };
    let cub_u1: Vec<C64> = {
        let a = de.product3(u1c, u1c, u1c);
        let b = de.product3(u2c, u2c, u1c);
        a.iter().zip(&b).map(|(x, y)| x + y).collect()
    };
    (cub_u2, cub_u1, m2)
}

/// `Q₁(u) = -2 B₀[u₁, |u|² u₂] - 2 B₀[u₂, |u|² (u₁+1)]`, pointwise products
/// formed alias-free before the bilinear multiplier.
pub fn q1_term(
    grid: &Grid,
    fft: &SpatialFft,
    de: &Dealiaser,
    views: &PerturbationViews,
) -> Result<Vec<C64>> {
    let u1c = to_complex(&views.u1);
    let u2c = to_complex(&views.u2);
    let (cub_u2, cub_u1, m2) = cubic_blocks(de, &u1c, &u2c);
    let slot2: Vec<C64> = cub_u1.iter().zip(&m2).map(|(a, b)| a + b).collect();
    let sym = |x: [f64; 3], y: [f64; 3]| C64::new(b0(x, y), 0.0);
    let t1 = apply_bilinear(grid, fft, sym, &u1c, &cub_u2)?;
    let t2 = apply_bilinear(grid, fft, sym, &u2c, &slot2)?;
    Ok(t1
        .iter()
        .zip(&t2)
        .map(|(a, b)| -2.0 * (a + b))
        .collect())
}

/// The potential forcing in its printed bilinear form:
/// `𝓜 = -2 B₀[u₁, V u₂] - 2 B₀[u₂, V (u₁+1)]`.
pub fn forcing_m(
    grid: &Grid,
    fft: &SpatialFft,
    de: &Dealiaser,
    views: &PerturbationViews,
    v_pot: &[f64],
) -> Result<Vec<C64>> {
    let u1c = to_complex(&views.u1);
    let u2c = to_complex(&views.u2);
    let vc = to_complex(v_pot);
    let v_u2 = de.product2(&vc, &u2c);
    let v_u1p1: Vec<C64> = de
        .product2(&vc, &u1c)
        .iter()
        .zip(&vc)
        .map(|(a, b)| a + b)
        .collect();
    let sym = |x: [f64; 3], y: [f64; 3]| C64::new(b0(x, y), 0.0);
    let t1 = apply_bilinear(grid, fft, sym, &u1c, &v_u2)?;
    let t2 = apply_bilinear(grid, fft, sym, &u2c, &v_u1p1)?;
    Ok(t1
        .iter()
        .zip(&t2)
        .map(|(a, b)| -2.0 * (a + b))
        .collect())
}

/// The complete potential forcing of the `Z` equation, obtained by carrying
/// the `V` terms of the `(u₁, u₂)` system through the normal form:
/// `𝓜_full = U(V (u₁+1)) + i V u₂ + i 𝓜`. The direct terms `U(V)` and
/// `i V u₂` are absent from the printed bilinear form; without them the
/// `V ≠ 0` residual stalls at order zero in the `u` amplitude (see the
/// residual tests).
pub fn forcing_m_full(
    grid: &Grid,
    fft: &SpatialFft,
    de: &Dealiaser,
    views: &PerturbationViews,
    v_pot: &[f64],
) -> Result<Vec<C64>> {
    let u1c = to_complex(&views.u1);
    let u2c = to_complex(&views.u2);
    let vc = to_complex(v_pot);
    let v_u1p1: Vec<C64> = de
        .product2(&vc, &u1c)
        .iter()
        .zip(&vc)
        .map(|(a, b)| a + b)
        .collect();
    // U applied to V(u₁+1).
    let mut hat = v_u1p1.clone();
    fft.fft_raw(&mut hat);
    for (lin, h) in hat.iter_mut().enumerate() {
        *h *= u_sym(grid.zeta_vec(lin));
    }
    fft.ifft_raw(&mut hat);
    let scale = 1.0 / grid.n_r_total() as f64;
    let direct_real: Vec<C64> = hat.iter().map(|h| h * scale).collect();

    let v_u2 = de.product2(&vc, &u2c);
    let printed = forcing_m(grid, fft, de, views, v_pot)?;
    Ok(direct_real
        .iter()
        .zip(&v_u2)
        .zip(&printed)
        .map(|((a, b), m)| a + C64::i() * (b + m))
        .collect())
}

/// Assemble the nonlinearity of the `Z` equation from the multiplier family:
/// `𝓝_Z = B₁[v₁,v₁] + B₂[v₂,v₂] + C₁[v₁,v₁,v₁] + C₂[v₂,v₂,v₁]
///        + i C₃[v₁,v₁,v₂] + i C₄[v₂,v₂,v₂] + i Q₁[u]`.
pub fn nonlinearity_nz(
    grid: &Grid,
    fft: &SpatialFft,
    de: &Dealiaser,
    views: &PerturbationViews,
    variant: B1Variant,
) -> Result<Vec<C64>> {
    warn_on_mean(&views.u2, "nonlinearity_nz");
    let v1 = views.v1();
    let v2 = views.v2();
    let b1s = move |x: [f64; 3], y: [f64; 3]| C64::new(b1(variant, x, y), 0.0);
    let b2s = |x: [f64; 3], y: [f64; 3]| C64::new(b2(x, y), 0.0);
    let c1s = |x: [f64; 3], y: [f64; 3], z: [f64; 3]| C64::new(c1(x, y, z), 0.0);
    let c2s = |x: [f64; 3], y: [f64; 3], z: [f64; 3]| C64::new(c2(x, y, z), 0.0);
    let c3s = |x: [f64; 3], y: [f64; 3], z: [f64; 3]| C64::new(c3(x, y, z), 0.0);
    let c4s = |x: [f64; 3], y: [f64; 3], z: [f64; 3]| C64::new(c4(x, y, z), 0.0);

    let t_b1 = apply_bilinear(grid, fft, b1s, &v1, &v1)?;
    let t_b2 = apply_bilinear(grid, fft, b2s, &v2, &v2)?;
    let t_c1 = apply_trilinear(grid, fft, c1s, &v1, &v1, &v1)?;
    let t_c2 = apply_trilinear(grid, fft, c2s, &v2, &v2, &v1)?;
    let t_c3 = apply_trilinear(grid, fft, c3s, &v1, &v1, &v2)?;
    let t_c4 = apply_trilinear(grid, fft, c4s, &v2, &v2, &v2)?;
    let t_q1 = q1_term(grid, fft, de, views)?;

    let mut out = vec![C64::new(0.0, 0.0); grid.n_r_total()];
    for i in 0..out.len() {
        out[i] = t_b1[i] + t_b2[i] + t_c1[i] + t_c2[i]
            + C64::i() * (t_c3[i] + t_c4[i] + t_q1[i]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::symbols::SymbolTable;

    fn setup() -> (Grid, SpatialFft, SymbolTable, Dealiaser) {
        let grid = Grid::new(1, 1, 16, 4, std::f64::consts::TAU, 1.0).unwrap();
        let fft = SpatialFft::new(&grid);
        let table = SymbolTable::new(&grid);
        let de = Dealiaser::new(&grid);
        (grid, fft, table, de)
    }

    fn smooth_views(
        grid: &Grid,
        fft: &SpatialFft,
        table: &SymbolTable,
        eps: f64,
    ) -> PerturbationViews {
        let l = grid.length_r();
        let u1: Vec<f64> = (0..grid.n_r_total())
            .map(|r| {
                let x = std::f64::consts::TAU * grid.x_vec(r)[0] / l;
                eps * (0.8 * x.cos() + 0.3 * (2.0 * x).sin())
            })
            .collect();
        let u2: Vec<f64> = (0..grid.n_r_total())
            .map(|r| {
                let x = std::f64::consts::TAU * grid.x_vec(r)[0] / l;
                eps * (0.6 * x.sin() - 0.4 * (3.0 * x).cos())
            })
            .collect();
        PerturbationViews::from_parts(grid, fft, table, u1, u2)
    }

    fn l2(grid: &Grid, f: &[C64]) -> f64 {
        (f.iter().map(|v| v.norm_sqr()).sum::<f64>() * grid.cell_r()).sqrt()
    }

    #[test]
    fn everything_vanishes_on_the_vacuum() {
        let (grid, fft, table, de) = setup();
        let views = smooth_views(&grid, &fft, &table, 0.0);
        let nz = nonlinearity_nz(&grid, &fft, &de, &views, B1Variant::Rederived).unwrap();
        assert!(l2(&grid, &nz) <= 1e-14);
        let q1 = q1_term(&grid, &fft, &de, &views).unwrap();
        assert!(l2(&grid, &q1) <= 1e-14);
        let v = vec![0.3; grid.n_r_total()];
        let m = forcing_m(&grid, &fft, &de, &views, &v).unwrap();
        assert!(l2(&grid, &m) <= 1e-14);
    }

    #[test]
    fn forcing_vanishes_without_potential_and_is_linear_in_it() {
        let (grid, fft, table, de) = setup();
        let views = smooth_views(&grid, &fft, &table, 0.05);
        let zero = vec![0.0; grid.n_r_total()];
        let m0 = forcing_m(&grid, &fft, &de, &views, &zero).unwrap();
        assert!(l2(&grid, &m0) <= 1e-15);
        let l = grid.length_r();
        let v: Vec<f64> = (0..grid.n_r_total())
            .map(|r| 0.2 * (std::f64::consts::TAU * grid.x_vec(r)[0] / l).cos())
            .collect();
        let v2: Vec<f64> = v.iter().map(|x| 2.0 * x).collect();
        let m1 = forcing_m(&grid, &fft, &de, &views, &v).unwrap();
        let m2 = forcing_m(&grid, &fft, &de, &views, &v2).unwrap();
        for (a, b) in m2.iter().zip(&m1) {
            assert!((a - 2.0 * b).norm() <= 1e-13);
        }
    }

    #[test]
    fn q1_vanishes_when_u2_does() {
        // Both slots of Q₁ carry a u₂ factor.
        let (grid, fft, table, de) = setup();
        let l = grid.length_r();
        let u1: Vec<f64> = (0..grid.n_r_total())
            .map(|r| 0.1 * (std::f64::consts::TAU * grid.x_vec(r)[0] / l).cos())
            .collect();
        let u2 = vec![0.0; grid.n_r_total()];
        let views = PerturbationViews::from_parts(&grid, &fft, &table, u1, u2);
        let q1 = q1_term(&grid, &fft, &de, &views).unwrap();
        assert!(l2(&grid, &q1) <= 1e-15);
    }

    #[test]
    fn quadratic_and_cubic_parts_scale_homogeneously() {
        let (grid, fft, table, _de) = setup();
        // The quadratic part of 𝓝_Z scales as ε², the cubic part as ε³; the
        // log-log slope over paired ε must sit within 2% of the exponent.
        let assemble = |views: &PerturbationViews, quadratic: bool| -> f64 {
            let v1 = views.v1();
            let v2 = views.v2();
            if quadratic {
                let b1s =
                    |x: [f64; 3], y: [f64; 3]| C64::new(b1(B1Variant::Rederived, x, y), 0.0);
                let b2s = |x: [f64; 3], y: [f64; 3]| C64::new(b2(x, y), 0.0);
                let a = apply_bilinear(&grid, &fft, b1s, &v1, &v1).unwrap();
                let b = apply_bilinear(&grid, &fft, b2s, &v2, &v2).unwrap();
                let sum: Vec<C64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                l2(&grid, &sum)
            } else {
                let c1s = |x: [f64; 3], y: [f64; 3], z: [f64; 3]| C64::new(c1(x, y, z), 0.0);
                let c2s = |x: [f64; 3], y: [f64; 3], z: [f64; 3]| C64::new(c2(x, y, z), 0.0);
                let a = apply_trilinear(&grid, &fft, c1s, &v1, &v1, &v1).unwrap();
                let b = apply_trilinear(&grid, &fft, c2s, &v2, &v2, &v1).unwrap();
                let sum: Vec<C64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                l2(&grid, &sum)
            }
        };
        for (quadratic, expect) in [(true, 2.0), (false, 3.0)] {
            let hi = assemble(&smooth_views(&grid, &fft, &table, 1e-2), quadratic);
            let lo = assemble(&smooth_views(&grid, &fft, &table, 1e-3), quadratic);
            let slope = (hi / lo).log10();
            assert!(
                (slope - expect).abs() <= 0.02 * expect,
                "slope {slope} for exponent {expect}"
            );
        }
    }

    #[test]
    fn assembly_matches_naive_mode_sum_oracle() {
        // Re-assemble 𝓝_Z by naive DFT sums per term and compare; this checks
        // slot order, prefactors and the factors of i through a fully
        // independent evaluation path on an 8-mode grid.
        let grid = Grid::new(1, 1, 8, 4, std::f64::consts::TAU, 1.0).unwrap();
        let fft = SpatialFft::new(&grid);
        let table = SymbolTable::new(&grid);
        let de = Dealiaser::new(&grid);
        let views = smooth_views(&grid, &fft, &table, 0.3);
        let ours = nonlinearity_nz(&grid, &fft, &de, &views, B1Variant::Rederived).unwrap();

        let naive_hat = |f: &[C64]| -> Vec<C64> {
            let total = grid.n_r_total();
            (0..total)
                .map(|m| {
                    let zeta = grid.zeta_vec(m)[0];
                    let mut acc = C64::new(0.0, 0.0);
                    for (j, v) in f.iter().enumerate() {
                        acc += v * C64::new(0.0, -zeta * grid.x_vec(j)[0]).exp();
                    }
                    acc * grid.cell_r()
                })
                .collect()
        };
        let n = grid.n_r();
        let in_band = |k: i64| Grid::mode_index(k, n).is_some();
        let mode_of = |m: usize| Grid::signed_mode(grid.r_multi(m)[0], n);

        let v1 = views.v1();
        let v2 = views.v2();
        let u1c = to_complex(&views.u1);
        let u2c = to_complex(&views.u2);
        let h1 = naive_hat(&v1);
        let h2 = naive_hat(&v2);
        let hu1 = naive_hat(&u1c);
        let hu2 = naive_hat(&u2c);
        let total = grid.n_r_total();

        // Bilinear and trilinear naive sums with an arbitrary symbol.
        let bsum = |sym: &dyn Fn([f64; 3], [f64; 3]) -> f64,
                    a: &[C64],
                    b: &[C64],
                    x: f64|
         -> C64 {
            let mut acc = C64::new(0.0, 0.0);
            for m1 in 0..total {
                for m2 in 0..total {
                    if !in_band(mode_of(m1) + mode_of(m2)) {
                        continue;
                    }
                    let zs = grid.zeta_vec(m1)[0] + grid.zeta_vec(m2)[0];
                    acc += sym(grid.zeta_vec(m1), grid.zeta_vec(m2))
                        * a[m1]
                        * b[m2]
                        * C64::new(0.0, zs * x).exp();
                }
            }
            acc / (grid.volume_r() * grid.volume_r())
        };
        let tsum = |sym: &dyn Fn([f64; 3], [f64; 3], [f64; 3]) -> f64,
                    a: &[C64],
                    b: &[C64],
                    c: &[C64],
                    x: f64|
         -> C64 {
            let mut acc = C64::new(0.0, 0.0);
            for m1 in 0..total {
                for m2 in 0..total {
                    for m3 in 0..total {
                        if !in_band(mode_of(m1) + mode_of(m2) + mode_of(m3)) {
                            continue;
                        }
                        let zs = grid.zeta_vec(m1)[0]
                            + grid.zeta_vec(m2)[0]
                            + grid.zeta_vec(m3)[0];
                        acc += sym(grid.zeta_vec(m1), grid.zeta_vec(m2), grid.zeta_vec(m3))
                            * a[m1]
                            * b[m2]
                            * c[m3]
                            * C64::new(0.0, zs * x).exp();
                    }
                }
            }
            acc / grid.volume_r().powi(3)
        };

        // Q₁ slot fields, recomputed through the same alias-free products the
        // implementation uses (the slot truncation is part of the contract).
        let (cub_u2, cub_u1, m2) = cubic_blocks(&de, &u1c, &u2c);
        let slot2: Vec<C64> = cub_u1.iter().zip(&m2).map(|(a, b)| a + b).collect();
        let h_cub_u2 = naive_hat(&cub_u2);
        let h_slot2 = naive_hat(&slot2);

        let b1f = |x: [f64; 3], y: [f64; 3]| b1(B1Variant::Rederived, x, y);
        let mut worst = 0.0f64;
        for j in 0..total {
            let x = grid.x_vec(j)[0];
            let quad = bsum(&b1f, &h1, &h1, x) + bsum(&b2, &h2, &h2, x);
            let cubic = tsum(&c1, &h1, &h1, &h1, x) + tsum(&c2, &h2, &h2, &h1, x);
            let imag = tsum(&c3, &h1, &h1, &h2, x) + tsum(&c4, &h2, &h2, &h2, x);
            let q1 = bsum(&b0, &hu1, &h_cub_u2, x) + bsum(&b0, &hu2, &h_slot2, x);
            let expect = quad + cubic + C64::i() * (imag - 2.0 * q1);
            worst = worst.max((ours[j] - expect).norm());
        }
        let scale = l2(&grid, &ours);
        assert!(worst / scale <= 1e-10, "assembly mismatch {}", worst / scale);
    }
}
