//! Brute-force verification of the normal-form algebra.
//!
//! The residual `R = i dZ/dt - H Z - 𝓝_Z(v) - 𝓜` is evaluated with `dZ/dt`
//! computed by the chain rule on `Z = v + b(u)`, inserting the evolution
//! equations for `(u̇₁, u̇₂)` term by term in spectral space. If the bilinear
//! table is consistent with the ansatz, every quadratic term cancels
//! identically and the residual scales at (at least) third order when `u` is
//! scaled by ε. The log-log slope over a decade ladder of ε is the arbiter
//! between symbol variants.

use crate::nls::nonlin::{forcing_m, forcing_m_full, nonlinearity_nz};
use crate::nls::symbols::{b0, B1Variant};
use crate::nls::views::PerturbationViews;
use crate::spectral::fft::SpatialFft;
use crate::spectral::grid::Grid;
use crate::spectral::multiplier::{apply_bilinear, Dealiaser};
use crate::spectral::symbols::SymbolTable;
use crate::{C64, Result};

/// Which forcing assembly the `V ≠ 0` residual subtracts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ForcingVariant {
    /// The complete forcing carried through the normal form (cancels exactly).
    #[default]
    Full,
    /// The printed bilinear-only form (leaves order-zero `V` terms).
    Printed,
}

/// Residual configuration: symbol variant and forcing treatment.
#[derive(Debug, Clone, Copy, Default)]
pub struct ResidualConfig {
    pub b1: B1Variant,
    pub forcing: ForcingVariant,
}

fn to_complex(f: &[f64]) -> Vec<C64> {
    f.iter().map(|&x| C64::new(x, 0.0)).collect()
}

fn apply_real_symbol<F>(grid: &Grid, fft: &SpatialFft, f: &[f64], sym: F) -> Vec<f64>
where
    F: Fn(usize) -> f64,
{
    let mut hat = to_complex(f);
    fft.fft_raw(&mut hat);
    for (lin, h) in hat.iter_mut().enumerate() {
        *h *= sym(lin);
    }
    fft.ifft_raw(&mut hat);
    let scale = 1.0 / grid.n_r_total() as f64;
    hat.iter().map(|h| h.re * scale).collect()
}

/// The evolution right-hand sides for `(u₁, u₂)` with every product computed
/// alias-free:
/// `u̇₁ = -Δu₂ + 2u₁u₂ + |u|²u₂ + V u₂`,
/// `u̇₂ = -(2-Δ)u₁ - 3u₁² - u₂² - |u|²u₁ - V(u₁+1)`.
pub fn u_dot(
    grid: &Grid,
    fft: &SpatialFft,
    de: &Dealiaser,
    u1: &[f64],
    u2: &[f64],
    v_pot: Option<&[f64]>,
) -> (Vec<f64>, Vec<f64>) {
    let n = grid.n_r_total();
    let u1c = to_complex(u1);
    let u2c = to_complex(u2);
    let lap_u2 = apply_real_symbol(grid, fft, u2, |lin| -grid.zeta_abs2(lin));
    let two_minus_lap_u1 = apply_real_symbol(grid, fft, u1, |lin| 2.0 + grid.zeta_abs2(lin));

    let p_u1u2 = de.product2(&u1c, &u2c);
    let p_u1u1 = de.product2(&u1c, &u1c);
    let p_u2u2 = de.product2(&u2c, &u2c);
    let cub_u2: Vec<C64> = {
        let a = de.product3(&u1c, &u1c, &u2c);
        let b = de.product3(&u2c, &u2c, &u2c);
        a.iter().zip(&b).map(|(x, y)| x + y).collect()
    };
    let cub_u1: Vec<C64> = {
        let a = de.product3(&u1c, &u1c, &u1c);
        let b = de.product3(&u2c, &u2c, &u1c);
        a.iter().zip(&b).map(|(x, y)| x + y).collect()
    };

    let mut du1 = vec![0.0; n];
    let mut du2 = vec![0.0; n];
    for i in 0..n {
        du1[i] = -lap_u2[i] + 2.0 * p_u1u2[i].re + cub_u2[i].re;
        du2[i] = -two_minus_lap_u1[i] - 3.0 * p_u1u1[i].re - p_u2u2[i].re - cub_u1[i].re;
    }
    if let Some(v) = v_pot {
        let vc = to_complex(v);
        let v_u2 = de.product2(&vc, &u2c);
        let v_u1 = de.product2(&vc, &u1c);
        for i in 0..n {
            du1[i] += v_u2[i].re;
            du2[i] -= v_u1[i].re + v[i];
        }
    }
    (du1, du2)
}

/// `R = i dZ/dt - H Z - 𝓝_Z - 𝓜` as a field.
pub fn residual_field(
    grid: &Grid,
    fft: &SpatialFft,
    table: &SymbolTable,
    de: &Dealiaser,
    views: &PerturbationViews,
    v_pot: Option<&[f64]>,
    cfg: ResidualConfig,
) -> Result<Vec<C64>> {
    let n = grid.n_r_total();
    let (du1, du2) = u_dot(grid, fft, de, &views.u1, &views.u2, v_pot);

    // dZ/dt = (u̇₁ + i U u̇₂) + (-2 B₀[u̇₁, u₁] + 2 B₀[u̇₂, u₂]).
    let u_du2 = apply_real_symbol(grid, fft, &du2, |lin| table.u()[lin]);
    let du1c = to_complex(&du1);
    let du2c = to_complex(&du2);
    let u1c = to_complex(&views.u1);
    let u2c = to_complex(&views.u2);
    let sym = |x: [f64; 3], y: [f64; 3]| C64::new(b0(x, y), 0.0);
    let bdot1 = apply_bilinear(grid, fft, sym, &du1c, &u1c)?;
    let bdot2 = apply_bilinear(grid, fft, sym, &du2c, &u2c)?;
    let mut z_dot = vec![C64::new(0.0, 0.0); n];
    for i in 0..n {
        z_dot[i] = C64::new(du1[i], u_du2[i]) - 2.0 * bdot1[i] + 2.0 * bdot2[i];
    }

    // H Z spectrally.
    let z = crate::nls::views::normal_form_z(grid, fft, views)?;
    let mut hz = z.clone();
    fft.fft_raw(&mut hz);
    for (lin, h) in hz.iter_mut().enumerate() {
        *h *= table.h()[lin];
    }
    fft.ifft_raw(&mut hz);
    let scale = 1.0 / n as f64;

    let nz = nonlinearity_nz(grid, fft, de, views, cfg.b1)?;
    let m = match v_pot {
        None => vec![C64::new(0.0, 0.0); n],
        Some(v) => match cfg.forcing {
            ForcingVariant::Full => forcing_m_full(grid, fft, de, views, v)?,
            ForcingVariant::Printed => forcing_m(grid, fft, de, views, v)?,
        },
    };

    Ok((0..n)
        .map(|i| C64::i() * z_dot[i] - hz[i] * scale - nz[i] - m[i])
        .collect())
}

/// `L²` norm of the residual.
#[allow(clippy::too_many_arguments)]
pub fn residual_norm(
    grid: &Grid,
    fft: &SpatialFft,
    table: &SymbolTable,
    de: &Dealiaser,
    u1_base: &[f64],
    u2_base: &[f64],
    eps: f64,
    v_pot: Option<&[f64]>,
    cfg: ResidualConfig,
) -> Result<f64> {
    let u1: Vec<f64> = u1_base.iter().map(|x| eps * x).collect();
    let u2: Vec<f64> = u2_base.iter().map(|x| eps * x).collect();
    let views = PerturbationViews::from_parts(grid, fft, table, u1, u2);
    let r = residual_field(grid, fft, table, de, &views, v_pot, cfg)?;
    Ok((r.iter().map(|v| v.norm_sqr()).sum::<f64>() * grid.cell_r()).sqrt())
}

/// Least-squares log-log slope of residual norms against the ε ladder.
pub fn scaling_slope(eps: &[f64], norms: &[f64]) -> f64 {
    let n = eps.len() as f64;
    let xs: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    let ys: Vec<f64> = norms.iter().map(|r| r.max(1e-300).ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}
