//! Fourier multipliers: scalar symbols, multilinear (bilinear / trilinear)
//! symbols applied by convolution over the retained lattice, and alias-free
//! pointwise products via 2x zero-padded transforms.

use crate::spectral::fft::SpatialFft;
use crate::spectral::grid::Grid;
use crate::{C64, CoreError, Result};

/// Apply a scalar Fourier multiplier given as a table over the FFT-ordered lattice.
pub fn apply_multiplier(
    grid: &Grid,
    fft: &SpatialFft,
    field: &[C64],
    symbol: &[C64],
) -> Result<Vec<C64>> {
    if field.len() != grid.n_r_total() || symbol.len() != grid.n_r_total() {
        return Err(CoreError::Dimension(format!(
            "multiplier: field has {} entries, symbol {}, lattice {}",
            field.len(),
            symbol.len(),
            grid.n_r_total()
        )));
    }
    let mut hat = fft.forward(field);
    for (h, s) in hat.iter_mut().zip(symbol) {
        *h *= s;
    }
    Ok(fft.inverse(&hat))
}

/// Apply a real scalar multiplier given as a closure of the frequency vector.
pub fn apply_multiplier_fn<F>(grid: &Grid, fft: &SpatialFft, field: &[C64], symbol: F) -> Vec<C64>
where
    F: Fn([f64; 3]) -> C64,
{
    let mut hat = fft.forward(field);
    for (lin, h) in hat.iter_mut().enumerate() {
        *h *= symbol(grid.zeta_vec(lin));
    }
    fft.inverse(&hat)
}

/// Build a symbol table over the FFT-ordered lattice from a closure.
pub fn symbol_from_fn<F>(grid: &Grid, f: F) -> Vec<C64>
where
    F: Fn([f64; 3]) -> C64,
{
    (0..grid.n_r_total()).map(|lin| f(grid.zeta_vec(lin))).collect()
}

fn check_same_grid(grid: &Grid, fields: &[&[C64]]) -> Result<()> {
    for f in fields {
        if f.len() != grid.n_r_total() {
            return Err(CoreError::Dimension(format!(
                "multilinear multiplier: operand has {} entries, lattice {}",
                f.len(),
                grid.n_r_total()
            )));
        }
    }
    Ok(())
}

/// Signed mode vector of a spatial linear index, padded to three entries.
fn mode_vec(grid: &Grid, lin: usize) -> [i64; 3] {
    let idx = grid.r_multi(lin);
    let mut k = [0i64; 3];
    for a in 0..grid.dim_r() {
        k[a] = Grid::signed_mode(idx[a], grid.n_r());
    }
    k
}

/// FFT-ordered linear index of a signed mode vector, or `None` if any
/// component falls outside the retained band.
fn lin_of_modes(grid: &Grid, k: &[i64; 3]) -> Option<usize> {
    let mut lin = 0usize;
    for a in 0..grid.dim_r() {
        lin = lin * grid.n_r() + Grid::mode_index(k[a], grid.n_r())?;
    }
    Some(lin)
}

/// Bilinear Fourier multiplier: the output mode `ζ` collects
/// `B(ζ₁, ζ₂) f̂(ζ₁) ĝ(ζ₂)` over all retained pairs with `ζ₁ + ζ₂ = ζ`.
/// Pairs whose sum leaves the retained band are dropped, so the result is
/// alias-free by construction.
pub fn apply_bilinear<B>(
    grid: &Grid,
    fft: &SpatialFft,
    symbol: B,
    f: &[C64],
    g: &[C64],
) -> Result<Vec<C64>>
where
    B: Fn([f64; 3], [f64; 3]) -> C64,
{
    check_same_grid(grid, &[f, g])?;
    let fh = fft.forward(f);
    let gh = fft.forward(g);
    let total = grid.n_r_total();
    let inv_vol = 1.0 / grid.volume_r();
    let mut out = vec![C64::new(0.0, 0.0); total];
    for m1 in 0..total {
        if fh[m1].norm_sqr() == 0.0 {
            continue;
        }
        let k1 = mode_vec(grid, m1);
        let z1 = grid.zeta_vec(m1);
        for m2 in 0..total {
            if gh[m2].norm_sqr() == 0.0 {
                continue;
            }
            let k2 = mode_vec(grid, m2);
            let sum = [k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]];
            if let Some(lin) = lin_of_modes(grid, &sum) {
                let z2 = grid.zeta_vec(m2);
                out[lin] += symbol(z1, z2) * fh[m1] * gh[m2] * inv_vol;
            }
        }
    }
    Ok(fft.inverse(&out))
}

/// Trilinear Fourier multiplier, the `N = 3` analogue of [`apply_bilinear`].
pub fn apply_trilinear<C>(
    grid: &Grid,
    fft: &SpatialFft,
    symbol: C,
    f: &[C64],
    g: &[C64],
    h: &[C64],
) -> Result<Vec<C64>>
where
    C: Fn([f64; 3], [f64; 3], [f64; 3]) -> C64,
{
    check_same_grid(grid, &[f, g, h])?;
    let fh = fft.forward(f);
    let gh = fft.forward(g);
    let hh = fft.forward(h);
    let total = grid.n_r_total();
    let inv_vol2 = 1.0 / (grid.volume_r() * grid.volume_r());
    let mut out = vec![C64::new(0.0, 0.0); total];
    for m1 in 0..total {
        if fh[m1].norm_sqr() == 0.0 {
            continue;
        }
        let k1 = mode_vec(grid, m1);
        let z1 = grid.zeta_vec(m1);
        for m2 in 0..total {
            if gh[m2].norm_sqr() == 0.0 {
                continue;
            }
            let k2 = mode_vec(grid, m2);
            let z2 = grid.zeta_vec(m2);
            let pair = fh[m1] * gh[m2];
            for m3 in 0..total {
                if hh[m3].norm_sqr() == 0.0 {
                    continue;
                }
                let k3 = mode_vec(grid, m3);
                let sum = [k1[0] + k2[0] + k3[0], k1[1] + k2[1] + k3[1], k1[2] + k2[2] + k3[2]];
                if let Some(lin) = lin_of_modes(grid, &sum) {
                    let z3 = grid.zeta_vec(m3);
                    out[lin] += symbol(z1, z2, z3) * pair * hh[m3] * inv_vol2;
                }
            }
        }
    }
    Ok(fft.inverse(&out))
}

/// Alias 2x zero-padded pointwise products. One padded transform per factor,
/// one multiply on the fine lattice, one truncating transform back; exact for
/// quadratic and cubic products of band-limited fields.
pub struct Dealiaser {
    dim: usize,
    n: usize,
    coarse_total: usize,
    fine: SpatialFft,
    coarse: SpatialFft,
}

impl Dealiaser {
    pub fn new(grid: &Grid) -> Self {
        let dim = grid.dim_r();
        let n = grid.n_r();
        Self {
            dim,
            n,
            coarse_total: grid.n_r_total(),
            fine: SpatialFft::with_size(dim, 2 * n, grid.cell_r()),
            coarse: SpatialFft::with_size(dim, n, grid.cell_r()),
        }
    }

    fn pad(&self, hat: &[C64]) -> Vec<C64> {
        let mut fine = vec![C64::new(0.0, 0.0); self.fine.total()];
        for (lin, v) in hat.iter().enumerate() {
            if v.norm_sqr() == 0.0 {
                continue;
            }
            // Decompose lin in base n, re-embed the signed modes in base 2n.
            let mut idx = [0usize; 3];
            let mut l = lin;
            for a in (0..self.dim).rev() {
                idx[a] = l % self.n;
                l /= self.n;
            }
            let mut fine_lin = 0usize;
            for a in 0..self.dim {
                let k = Grid::signed_mode(idx[a], self.n);
                let pos = Grid::mode_index(k, 2 * self.n).expect("padded band contains coarse band");
                fine_lin = fine_lin * 2 * self.n + pos;
            }
            fine[fine_lin] = *v;
        }
        fine
    }

    fn truncate(&self, fine_hat: &[C64]) -> Vec<C64> {
        let mut coarse = vec![C64::new(0.0, 0.0); self.coarse_total];
        for lin in 0..self.coarse_total {
            let mut idx = [0usize; 3];
            let mut l = lin;
            for a in (0..self.dim).rev() {
                idx[a] = l % self.n;
                l /= self.n;
            }
            let mut fine_lin = 0usize;
            for a in 0..self.dim {
                let k = Grid::signed_mode(idx[a], self.n);
                let pos = Grid::mode_index(k, 2 * self.n).expect("padded band contains coarse band");
                fine_lin = fine_lin * 2 * self.n + pos;
            }
            coarse[lin] = fine_hat[fine_lin];
        }
        coarse
    }

    /// Interpolate a coarse physical field onto the fine lattice.
    fn refine(&self, field: &[C64]) -> Vec<C64> {
        let mut hat = field.to_vec();
        self.coarse.fft_raw(&mut hat);
        let mut fine = self.pad(&hat);
        self.fine.ifft_raw(&mut fine);
        let scale = 1.0 / self.coarse_total as f64;
        for v in fine.iter_mut() {
            *v *= scale;
        }
        fine
    }

    fn project(&self, fine_vals: &[C64]) -> Vec<C64> {
        let mut fine_hat = fine_vals.to_vec();
        self.fine.fft_raw(&mut fine_hat);
        let ratio = self.coarse_total as f64 / self.fine.total() as f64;
        let mut coarse_hat = self.truncate(&fine_hat);
        for v in coarse_hat.iter_mut() {
            *v *= ratio;
        }
        self.coarse.ifft_raw(&mut coarse_hat);
        let scale = 1.0 / self.coarse_total as f64;
        for v in coarse_hat.iter_mut() {
            *v *= scale;
        }
        coarse_hat
    }

    /// Alias-free quadratic product truncated to the retained band.
    pub fn product2(&self, f: &[C64], g: &[C64]) -> Vec<C64> {
        let ff = self.refine(f);
        let gf = self.refine(g);
        let vals: Vec<C64> = ff.iter().zip(&gf).map(|(a, b)| a * b).collect();
        self.project(&vals)
    }

    /// Alias-free cubic product truncated to the retained band.
    pub fn product3(&self, f: &[C64], g: &[C64], h: &[C64]) -> Vec<C64> {
        let ff = self.refine(f);
        let gf = self.refine(g);
        let hf = self.refine(h);
        let vals: Vec<C64> = ff
            .iter()
            .zip(&gf)
            .zip(&hf)
            .map(|((a, b), c)| a * b * c)
            .collect();
        self.project(&vals)
    }
}
