use super::expansion::expansion_coeffs;
use super::parallel::parallel_unchecked;
use crate::geometry::jet;
use crate::grid::{FermiGrid, GridField};
use crate::num::fd::Closure;
use crate::{Error, Result};
use alloc::vec::Vec;

/// Which parallel-surface coefficients enter the operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    /// The exact parallel metric and mean curvature.
    Exact,
    /// Expansions of `H̃`, `g̃^{11}`, `b̃` through second order in the
    /// unit-scale normal distance.
    Truncated,
}

/// The Euclidean Laplacian in shifted Fermi coordinates `(θ₁, t)` with
/// `z = t + φ(θ₁)` (scaled units):
///
/// `Δu = u_tt − εH̃ u_t + ε²[g̃¹¹(u_θθ − 2φ′u_θt − φ″u_t + φ′²u_tt) + b̃(u_θ − φ′u_t)]`
///
/// where `H̃`, `g̃¹¹`, `b̃` are unit-scale parallel-surface quantities at
/// `ζ = ε(t + φ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FermiLaplacian {
    k: usize,
    c_tt: Vec<f64>,
    c_t: Vec<f64>,
    c_thth: Vec<f64>,
    c_tht: Vec<f64>,
    c_th: Vec<f64>,
    /// `ε²g¹¹` and `ε²b` at `z = 0`, for the surface Laplacian `Δ_{Σ_ε}`.
    surface: Vec<[f64; 2]>,
}

impl FermiLaplacian {
    pub fn new(grid: &FermiGrid, coefficients: Coefficients) -> Result<Self> {
        let (m, k) = (grid.m(), grid.k());
        let shape = &grid.shape;
        let bound = shape.collar();
        let eps = grid.eps;
        let eps2 = eps * eps;
        let n = m * k;
        let mut op = Self {
            k,
            c_tt: Vec::with_capacity(n),
            c_t: Vec::with_capacity(n),
            c_thth: Vec::with_capacity(n),
            c_tht: Vec::with_capacity(n),
            c_th: Vec::with_capacity(n),
            surface: Vec::with_capacity(m),
        };
        for (i, th) in grid.theta.nodes().iter().enumerate() {
            let [_, dphi, d2phi] = grid.phi_jet[i];
            let j = jet(shape, *th);
            let ex = expansion_coeffs(shape, *th);
            let b0 = j.christoffel[1][0][1] * j.g_inv[0][0];
            op.surface.push([eps2 * j.g_inv[0][0], eps2 * b0]);
            for kk in 0..k {
                let z = grid.zeta(i, kk);
                if !(z.abs() < bound) {
                    return Err(Error::Collar { z, bound });
                }
                let (h, g11, b) = match coefficients {
                    Coefficients::Exact => {
                        let p = parallel_unchecked(shape, *th, z);
                        (p.h_tilde, p.g_tilde_inv[0][0], p.b_tilde[0])
                    }
                    Coefficients::Truncated => (
                        j.h + z * j.abs_a2 + z * z * j.tr_a3,
                        j.g_inv[0][0] + z * ex.a1[0][0] + z * z * ex.a2[0][0],
                        b0 + z * ex.b1[0] + z * z * ex.b2[0],
                    ),
                };
                op.c_tt.push(1.0 + eps2 * g11 * dphi * dphi);
                op.c_t.push(-eps * h - eps2 * (g11 * d2phi + b * dphi));
                op.c_thth.push(eps2 * g11);
                op.c_tht.push(-2.0 * eps2 * g11 * dphi);
                op.c_th.push(eps2 * b);
            }
        }
        Ok(op)
    }

    /// `(c_tt, c_t)` at flat node index `n`: the operator on a function of
    /// `t` alone is `c_tt ∂_tt + c_t ∂_t`.
    pub fn t_coefficients(&self, n: usize) -> (f64, f64) {
        (self.c_tt[n], self.c_t[n])
    }

    pub fn apply(&self, grid: &FermiGrid, u: &GridField, closure: Closure) -> GridField {
        let ut = grid.dt(u, 1, closure);
        let utt = grid.dt(u, 2, closure);
        let uth = grid.dtheta(u, 1);
        let uthth = grid.dtheta(u, 2);
        let utht = grid.dtheta(&ut, 1);
        let mut out = grid.zeros();
        for n in 0..out.data.len() {
            out.data[n] = self.c_tt[n] * utt.data[n]
                + self.c_t[n] * ut.data[n]
                + self.c_thth[n] * uthth.data[n]
                + self.c_tht[n] * utht.data[n]
                + self.c_th[n] * uth.data[n];
        }
        out
    }

    /// `(∂_tt + Δ_{Σ_ε}) u`, the unshifted flat-normal part.
    pub fn apply_reference(&self, grid: &FermiGrid, u: &GridField, closure: Closure) -> GridField {
        let utt = grid.dt(u, 2, closure);
        let uth = grid.dtheta(u, 1);
        let uthth = grid.dtheta(u, 2);
        let mut out = grid.zeros();
        for n in 0..out.data.len() {
            let [g, b] = self.surface[n / self.k];
            out.data[n] = utt.data[n] + g * uthth.data[n] + b * uth.data[n];
        }
        out
    }
}

/// Exact Laplacian of `u` on the grid.
pub fn fermi_laplacian_exact(
    grid: &FermiGrid,
    u: &GridField,
    closure: Closure,
) -> Result<GridField> {
    Ok(FermiLaplacian::new(grid, Coefficients::Exact)?.apply(grid, u, closure))
}

/// `D u = Δu − (∂_tt + Δ_{Σ_ε}) u` with exact coefficients.
pub fn apply_d(grid: &FermiGrid, u: &GridField, closure: Closure) -> Result<GridField> {
    let op = FermiLaplacian::new(grid, Coefficients::Exact)?;
    Ok(op
        .apply(grid, u, closure)
        .sub(&op.apply_reference(grid, u, closure)))
}

/// `D u` with coefficients expanded through second order in `ε(t + φ)`.
pub fn apply_d_truncated(grid: &FermiGrid, u: &GridField, closure: Closure) -> Result<GridField> {
    let op = FermiLaplacian::new(grid, Coefficients::Truncated)?;
    Ok(op
        .apply(grid, u, closure)
        .sub(&op.apply_reference(grid, u, closure)))
}
