use super::ansatz::assemble_vtilde;
use super::operator::PhaseOperator;
use super::projection::{project_residual, ProjectionCurve};
use crate::geometry::{jet, CircleField, Symmetry, TorusShape};
use crate::grid::{FermiGrid, GridSpec};
use crate::num::fit::{fit_power_law_trimmed, PowerFit};
use crate::num::math::powi;
use crate::profile::ProfileTable;
use crate::willmore_op::ltilde_pointwise;
use crate::Result;
use alloc::vec::Vec;

/// Residual norms and the projection at one `ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualSample {
    pub eps: f64,
    /// Sup of `|F(v⋆)|` over `|t| ≤ τ/(2ε)`.
    pub f_vstar: f64,
    /// Sup of `|F(ṽ)|` over `|t| ≤ τ/(2ε)`.
    pub f_vtilde: f64,
    /// `∫ F(ṽ) v⋆′ dt`.
    pub projection: ProjectionCurve,
    pub m: usize,
    pub k: usize,
}

pub fn residual_sample(
    shape: &TorusShape,
    profile: &ProfileTable,
    eps: f64,
    tau: f64,
    phi: &CircleField,
    spec: GridSpec,
) -> Result<ResidualSample> {
    let grid = FermiGrid::new(*shape, eps, tau, phi.clone(), spec)?;
    let op = PhaseOperator::new(&grid, profile.well().clone())?;
    let ansatz = assemble_vtilde(&grid, profile);
    let f_tilde = op.apply_ansatz(&ansatz);
    let f_star = op.apply_ansatz(&ansatz.profile_only());
    let limit = grid.inner_radius();
    Ok(ResidualSample {
        eps,
        f_vstar: f_star.max_abs_within(&grid.t, limit),
        f_vtilde: f_tilde.max_abs_within(&grid.t, limit),
        projection: project_residual(&grid, &f_tilde, &ansatz.profile.dv, phi.symmetry()),
        m: grid.m(),
        k: grid.k(),
    })
}

/// Power-law fits of the `φ = 0` residual norms and projection over `ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualOrders {
    pub samples: Vec<ResidualSample>,
    pub vstar: PowerFit,
    pub vtilde: PowerFit,
    pub projection: PowerFit,
}

pub fn residual_orders(
    shape: &TorusShape,
    profile: &ProfileTable,
    eps_list: &[f64],
    tau: f64,
    spec: GridSpec,
) -> Result<ResidualOrders> {
    let phi = CircleField::zeros(0, Symmetry::Even);
    let samples = eps_list
        .iter()
        .map(|e| residual_sample(shape, profile, *e, tau, &phi, spec))
        .collect::<Result<Vec<_>>>()?;
    let col = |f: fn(&ResidualSample) -> f64| samples.iter().map(f).collect::<Vec<_>>();
    Ok(ResidualOrders {
        vstar: fit_power_law_trimmed(eps_list, &col(|s| s.f_vstar)),
        vtilde: fit_power_law_trimmed(eps_list, &col(|s| s.f_vtilde)),
        projection: fit_power_law_trimmed(eps_list, &col(|s| s.projection.sup())),
        samples,
    })
}

/// Comparison of the projection with its predicted leading term `−ε⁴c⋆L̃₀φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearResponse {
    pub eps: f64,
    /// `sup|q + ε⁴c⋆L̃₀φ| / (ε⁴c⋆ sup|L̃₀φ|)` over the `θ` nodes.
    pub relative_error: f64,
    pub projection_sup: f64,
    pub predicted_sup: f64,
}

pub fn linear_response(
    shape: &TorusShape,
    profile: &ProfileTable,
    eps: f64,
    tau: f64,
    phi: &CircleField,
    spec: GridSpec,
) -> Result<LinearResponse> {
    let sample = residual_sample(shape, profile, eps, tau, phi, spec)?;
    let scale = powi(eps, 4) * profile.c_star;
    let (mut err, mut pred) = (0.0_f64, 0.0_f64);
    for (th, q) in sample
        .projection
        .theta
        .iter()
        .zip(&sample.projection.values)
    {
        let l = scale * ltilde_pointwise(shape, &jet(shape, *th), &phi.eval_jet(*th));
        err = err.max((q + l).abs());
        pred = pred.max(l.abs());
    }
    Ok(LinearResponse {
        eps,
        relative_error: err / pred,
        projection_sup: sample.projection.sup(),
        predicted_sup: pred,
    })
}
