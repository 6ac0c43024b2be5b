use super::expansion::expansion_coeffs;
use super::laplacian::{apply_d, apply_d_truncated};
use super::parallel::parallel_jet;
use crate::geometry::{jet, CircleField, TorusShape};
use crate::grid::{FermiGrid, GridSpec};
use crate::num::fd::Closure;
use crate::num::fit::{fit_power_law, PowerFit};
use crate::Result;
use alloc::vec::Vec;

/// Errors measured along a parameter sweep and their power-law fit.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderStudy {
    pub xs: Vec<f64>,
    pub errors: Vec<f64>,
    pub fit: PowerFit,
}

/// `max_ij |g̃^{ij}(z) − (g^{ij} + z a₁^{ij})|` at `θ₁` for each `z`.
pub fn metric_expansion_study(shape: &TorusShape, theta1: f64, zs: &[f64]) -> Result<OrderStudy> {
    let j = jet(shape, theta1);
    let ex = expansion_coeffs(shape, theta1);
    let mut errors = Vec::with_capacity(zs.len());
    for z in zs {
        let p = parallel_jet(shape, theta1, *z)?;
        let mut e = 0.0_f64;
        for a in 0..2 {
            for b in 0..2 {
                let lin = j.g_inv[a][b] + z * ex.a1[a][b];
                e = e.max((p.g_tilde_inv[a][b] - lin).abs());
            }
        }
        errors.push(e);
    }
    Ok(OrderStudy {
        xs: zs.to_vec(),
        fit: fit_power_law(zs, &errors),
        errors,
    })
}

/// Sup over `|t| ≤ t_limit` of `|D u − D_trunc u|` for each `ε`.
pub fn d_remainder_study(
    shape: &TorusShape,
    tau: f64,
    eps_list: &[f64],
    phi: &CircleField,
    spec: GridSpec,
    t_limit: f64,
    u: impl Fn(f64, f64) -> f64,
) -> Result<OrderStudy> {
    let mut errors = Vec::with_capacity(eps_list.len());
    for eps in eps_list {
        let grid = FermiGrid::new(*shape, *eps, tau, phi.clone(), spec)?;
        let field = grid.field(&u);
        let exact = apply_d(&grid, &field, Closure::OneSided)?;
        let trunc = apply_d_truncated(&grid, &field, Closure::OneSided)?;
        errors.push(exact.sub(&trunc).max_abs_within(&grid.t, t_limit));
    }
    Ok(OrderStudy {
        xs: eps_list.to_vec(),
        fit: fit_power_law(eps_list, &errors),
        errors,
    })
}
