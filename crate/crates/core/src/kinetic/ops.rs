//! The two linearized collision operators.
//!
//! `L1[f] = 𝔈 ρ[f] - f` is the relaxation operator. `L2` is the weighted
//! Fokker–Planck operator, implemented in divergence form
//! `L2[f] = 𝔈 ∇_p · (𝔈^{-1} ∇_p (f - f_∞))` with zero-flux momentum faces,
//! which is self-adjoint and negative semi-definite in the `𝓛` inner product
//! and satisfies the discrete dissipation identity
//! `⟨L2 f, f⟩_𝓛 = -Σ 𝔈^{-1} |∇_p (f - f_∞)|² Δr Δp` exactly. The literal
//! printed variant with a leading `𝔈^{-1}` factor is exposed for comparison
//! (it fails that identity) but is never used for time stepping.

use crate::kinetic::field::PhaseSpaceField;
use crate::kinetic::norms::rho_moment;
use crate::kinetic::weight::BoseEinsteinWeight;
use crate::spectral::grid::Grid;
use crate::{CoreError, Result};

/// Which collision operator a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    L1,
    L2,
}

/// `L1[f] = 𝔈(p) ρ[f](r) - f(r, p)`.
pub fn apply_l1(grid: &Grid, f: &PhaseSpaceField, weight: &BoseEinsteinWeight) -> PhaseSpaceField {
    let rho = rho_moment(grid, f);
    let np = grid.n_p_total();
    let e = weight.e_weight();
    let mut out = PhaseSpaceField::zeros(grid);
    out.set_time(f.time());
    for r in 0..grid.n_r_total() {
        let fr = f.momentum_row(np, r);
        let or = out.momentum_row_mut(np, r);
        for p in 0..np {
            or[p] = e[p] * rho[r] - fr[p];
        }
    }
    out
}

/// Finite-volume stencil for the momentum diffusion `g ↦ 𝔈 ∇_p·(𝔈^{-1} ∇_p g)`
/// with zero-flux faces. Face inverse weights are evaluated analytically at
/// the cell-face midpoints.
#[derive(Debug, Clone)]
pub struct L2Operator {
    dim_p: usize,
    n_p: usize,
    total: usize,
    dp: f64,
    cell_p: f64,
    e_weight: Vec<f64>,
    inv_weight: Vec<f64>,
    /// Per axis: `𝔈^{-1}` at the plus-face of each node (last slice unused).
    face_inv: Vec<Vec<f64>>,
    strides: [usize; 3],
}

impl L2Operator {
    pub fn new(grid: &Grid, weight: &BoseEinsteinWeight) -> Self {
        let dim_p = grid.dim_p();
        let n_p = grid.n_p();
        let total = grid.n_p_total();
        let dp = grid.dp();
        let mut strides = [0usize; 3];
        for a in 0..dim_p {
            strides[a] = n_p.pow((dim_p - 1 - a) as u32);
        }
        let mut face_inv = Vec::with_capacity(dim_p);
        for a in 0..dim_p {
            let mut per_node = vec![0.0; total];
            for lin in 0..total {
                let idx = grid.p_multi(lin);
                if idx[a] + 1 >= n_p {
                    continue;
                }
                let mut pf = grid.p_vec(lin);
                pf[a] += 0.5 * dp;
                let abs = (pf[0] * pf[0] + pf[1] * pf[1] + pf[2] * pf[2]).sqrt();
                per_node[lin] = weight.inv_weight_at(abs);
            }
            face_inv.push(per_node);
        }
        Self {
            dim_p,
            n_p,
            total,
            dp,
            cell_p: grid.cell_p(),
            e_weight: weight.e_weight().to_vec(),
            inv_weight: weight.inv_weight().to_vec(),
            face_inv,
            strides,
        }
    }

    pub fn momentum_nodes(&self) -> usize {
        self.total
    }

    /// `out = 𝔈 ∇_p · (𝔈^{-1} ∇_p g)` on a momentum row.
    pub fn apply(&self, g: &[f64], out: &mut [f64]) {
        self.apply_with_prefactor(g, out, &self.e_weight)
    }

    /// The literal printed variant `𝔈^{-1} ∇_p · (𝔈^{-1} ∇_p g)`; kept for
    /// side-by-side comparison only.
    pub fn apply_literal(&self, g: &[f64], out: &mut [f64]) {
        self.apply_with_prefactor(g, out, &self.inv_weight)
    }

    fn apply_with_prefactor(&self, g: &[f64], out: &mut [f64], prefactor: &[f64]) {
        let inv_dp2 = 1.0 / (self.dp * self.dp);
        for lin in 0..self.total {
            let mut acc = 0.0;
            for a in 0..self.dim_p {
                let stride = self.strides[a];
                let idx_a = lin / stride % self.n_p;
                if idx_a + 1 < self.n_p {
                    acc += self.face_inv[a][lin] * (g[lin + stride] - g[lin]);
                }
                if idx_a > 0 {
                    acc -= self.face_inv[a][lin - stride] * (g[lin] - g[lin - stride]);
                }
            }
            out[lin] = prefactor[lin] * acc * inv_dp2;
        }
    }

    /// The Dirichlet form `D(g) = Σ_faces 𝔈^{-1}_face ((Δg)/Δp)² Δp^{dim_p}`,
    /// the discrete `∫ 𝔈^{-1} |∇_p g|² dp`; satisfies `⟨A g, g⟩_𝓛p = -D(g)`.
    pub fn dirichlet(&self, g: &[f64]) -> f64 {
        let mut acc = 0.0;
        for a in 0..self.dim_p {
            let stride = self.strides[a];
            for lin in 0..self.total {
                let idx_a = lin / stride % self.n_p;
                if idx_a + 1 < self.n_p {
                    let d = g[lin + stride] - g[lin];
                    acc += self.face_inv[a][lin] * d * d;
                }
            }
        }
        acc / (self.dp * self.dp) * self.cell_p
    }

    /// Momentum-space `𝓛` inner product `Σ u v 𝔈^{-1} Δp^{dim_p}`.
    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.total {
            acc += u[i] * v[i] * self.inv_weight[i];
        }
        acc * self.cell_p
    }

    /// One backward Euler step: solve `(I - κ A) x = rhs` in place.
    /// Unconditionally stable and norm-contractive for any `κ >= 0`.
    pub fn solve_backward_euler(&self, rhs: &mut [f64], kappa: f64) -> Result<()> {
        if kappa == 0.0 {
            return Ok(());
        }
        if self.dim_p == 1 {
            self.solve_tridiagonal(rhs, kappa);
            Ok(())
        } else {
            self.solve_cg(rhs, kappa)
        }
    }

    fn solve_tridiagonal(&self, rhs: &mut [f64], kappa: f64) {
        let n = self.total;
        let scale = kappa / (self.dp * self.dp);
        let face = &self.face_inv[0];
        let mut diag = vec![0.0; n];
        let mut lower = vec![0.0; n];
        let mut upper = vec![0.0; n];
        for i in 0..n {
            let wp = if i + 1 < n { face[i] } else { 0.0 };
            let wm = if i > 0 { face[i - 1] } else { 0.0 };
            diag[i] = 1.0 + scale * self.e_weight[i] * (wp + wm);
            if i + 1 < n {
                upper[i] = -scale * self.e_weight[i] * wp;
            }
            if i > 0 {
                lower[i] = -scale * self.e_weight[i] * wm;
            }
        }
        // Thomas sweep.
        for i in 1..n {
            let m = lower[i] / diag[i - 1];
            diag[i] -= m * upper[i - 1];
            rhs[i] -= m * rhs[i - 1];
        }
        rhs[n - 1] /= diag[n - 1];
        for i in (0..n - 1).rev() {
            rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
        }
    }

    /// Conjugate gradients in the `𝓛` inner product, where `I - κA` is
    /// symmetric positive definite. The divergence form keeps the stencil
    /// coefficients `𝔈_node · 𝔈^{-1}_face` of order one, so the system is
    /// well conditioned and converges in a few iterations.
    fn solve_cg(&self, rhs: &mut [f64], kappa: f64) -> Result<()> {
        let n = self.total;
        let apply_m = |x: &[f64], out: &mut [f64]| {
            self.apply(x, out);
            for i in 0..n {
                out[i] = x[i] - kappa * out[i];
            }
        };
        let rhs_norm = self.inner(rhs, rhs).sqrt();
        if rhs_norm == 0.0 {
            return Ok(());
        }
        let tol = 1e-13 * rhs_norm;
        let mut x = rhs.to_vec();
        let mut tmp = vec![0.0; n];
        apply_m(&x, &mut tmp);
        let mut r: Vec<f64> = rhs.iter().zip(&tmp).map(|(b, mx)| b - mx).collect();
        let mut p = r.clone();
        let mut rs = self.inner(&r, &r);
        for _ in 0..2000 {
            if rs.sqrt() <= tol {
                rhs.copy_from_slice(&x);
                return Ok(());
            }
            apply_m(&p, &mut tmp);
            let alpha = rs / self.inner(&p, &tmp);
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * tmp[i];
            }
            let rs_new = self.inner(&r, &r);
            let beta = rs_new / rs;
            for i in 0..n {
                p[i] = r[i] + beta * p[i];
            }
            rs = rs_new;
        }
        Err(CoreError::Degenerate(format!(
            "backward Euler CG stalled: residual {:.3e} against tolerance {:.3e}",
            rs.sqrt(),
            tol
        )))
    }
}

/// `L2[f]` in divergence form applied to a full phase-space field.
pub fn apply_l2(
    grid: &Grid,
    f: &PhaseSpaceField,
    f_inf: &[f64],
    op: &L2Operator,
) -> PhaseSpaceField {
    apply_l2_impl(grid, f, f_inf, op, false)
}

/// The literal printed form `𝔈^{-1} ∇_p (𝔈^{-1} ∇_p (f - f_∞))`, for comparison.
pub fn apply_l2_literal(
    grid: &Grid,
    f: &PhaseSpaceField,
    f_inf: &[f64],
    op: &L2Operator,
) -> PhaseSpaceField {
    apply_l2_impl(grid, f, f_inf, op, true)
}

fn apply_l2_impl(
    grid: &Grid,
    f: &PhaseSpaceField,
    f_inf: &[f64],
    op: &L2Operator,
    literal: bool,
) -> PhaseSpaceField {
    let np = grid.n_p_total();
    let mut out = PhaseSpaceField::zeros(grid);
    out.set_time(f.time());
    let mut g = vec![0.0; np];
    for r in 0..grid.n_r_total() {
        let fr = f.momentum_row(np, r);
        for p in 0..np {
            g[p] = fr[p] - f_inf[p];
        }
        let or = out.momentum_row_mut(np, r);
        if literal {
            op.apply_literal(&g, or);
        } else {
            op.apply(&g, or);
        }
    }
    out
}
