//! The reduced equation for the normal shift `φ` under the volume
//! constraint, solved by a damped Newton iteration with the bordered
//! linearized Willmore operator as approximate Jacobian.

use super::inner::InnerOperator;
use super::remainder::RemainderOperator;
use super::volume::{mass_defect, volume_residual};
use crate::geometry::{CircleField, Symmetry, TorusShape};
use crate::grid::{FermiGrid, GridField, GridSpec};
use crate::num::jet::Jet;
use crate::num::math::{powi, SQRT_2};
use crate::phasefield::{assemble_global_v, assemble_vtilde, build_cutoffs, bump, PhaseOperator};
use crate::profile::ProfileTable;
use crate::willmore_op::{assemble_ltilde, solve_with};
use crate::{Error, Result};
use alloc::vec::Vec;

/// Settings of [`solve_bifurcation`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BifurcationConfig {
    pub tau: f64,
    pub grid: GridSpec,
    /// Cosine modes carried by `φ`.
    pub phi_modes: usize,
    /// Room left for `|φ|` between the grid edge and the focal collar; steps
    /// are shortened so that `sup|φ|` stays below it.
    pub phi_margin: f64,
    pub max_iter: usize,
    /// Stop when `ω sup|Δφ| ≤ tol`.
    pub tol: f64,
    /// Initial damping factor; halved whenever the residual grows.
    pub omega: f64,
    /// Include the measured `ε²G` term in the volume constraint.
    pub mass_correction: bool,
}

impl Default for BifurcationConfig {
    fn default() -> Self {
        Self {
            tau: 0.8 * (SQRT_2 - 1.0),
            grid: GridSpec::default(),
            phi_modes: 8,
            phi_margin: 0.5,
            max_iter: 30,
            tol: 1e-8,
            omega: 1.0,
            mass_correction: true,
        }
    }
}

/// One outer step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    /// `ω sup|Δφ|`.
    pub update_norm: f64,
    /// `‖G(φ) − λ‖` in `L²(dσ)` before the step, `G = ε⁻⁴c⋆⁻¹q`.
    pub residual_norm: f64,
    /// Volume constraint before the step.
    pub volume_residual: f64,
    pub lambda: f64,
    pub omega: f64,
}

/// Converged (or last) state of the reduced iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedState {
    pub eps: f64,
    pub phi: CircleField,
    /// Constant `λ` with `ε⁻⁴c⋆⁻¹q(φ) = λ`.
    pub lambda: f64,
    pub converged: bool,
    pub trace: Vec<IterationRecord>,
    /// `sup|φ| / ε`.
    pub phi_sup_over_eps: f64,
    /// Volume constraint at the final `φ`.
    pub volume_residual: f64,
    /// `sup_θ |q|` at the final `φ`.
    pub projection_sup: f64,
    /// `sup|U| / ε³`.
    pub u_sup_over_eps3: f64,
    /// Sup of the part of `U` odd in `t`, over `ε⁴`.
    pub u_odd_over_eps4: f64,
    /// `sup_θ |p₂|` with `p₂ = c⋆⁻¹∫χ₁Q(U)v⋆′ dt`.
    pub p2_sup: f64,
    /// `sup_θ |p₄| / ε⁵` with `p₄ = c⋆⁻¹∫χ₄R(U)v⋆′ dt`.
    pub p4_over_eps5: f64,
    /// Measured `G_ε(φ)` of the mass formula.
    pub g_term: f64,
    /// Relative residual of the last inner solve.
    pub inner_residual: f64,
    pub theta_nodes: usize,
    pub t_nodes: usize,
    pub half_width: f64,
}

/// The cutoffs are also tapered to zero over `T − 1.5 ≤ |t| ≤ T − 0.5`, so
/// that terms carrying up to four `t` derivatives of `U` never see the
/// one-sided stencils at the grid ends.
const EDGE_LAYER: f64 = 0.5;

const MIN_OMEGA: f64 = 1.0 / 64.0;

struct Evaluation {
    /// `G = ε⁻⁴c⋆⁻¹q` as an even field.
    g: CircleField,
    q_sup: f64,
    volume: f64,
    g_term: f64,
    u: GridField,
    inner_residual: f64,
    p2_sup: f64,
    p4_sup: f64,
}

struct Context<'a> {
    shape: TorusShape,
    profile: &'a ProfileTable,
    eps: f64,
    config: BifurcationConfig,
    spec: GridSpec,
    inner: Option<InnerOperator>,
}

fn columns(grid: &FermiGrid, f: impl Fn(f64) -> f64) -> Vec<f64> {
    grid.t.iter().map(|t| f(*t)).collect()
}

fn scale_columns(field: &GridField, col: &[f64]) -> GridField {
    let mut out = field.clone();
    for i in 0..field.m {
        for (q, c) in col.iter().enumerate() {
            out.data[i * field.k + q] *= c;
        }
    }
    out
}

impl Context<'_> {
    fn evaluate(&mut self, phi: &CircleField, u_prev: &GridField) -> Result<Evaluation> {
        let eps = self.eps;
        let grid = FermiGrid::new(self.shape, eps, self.config.tau, phi.clone(), self.spec)?;
        if self.inner.is_none() {
            self.inner = Some(InnerOperator::for_grid(&grid, self.profile)?);
        }
        let inner = self.inner.as_ref().expect("inner operator built above");
        let cut = build_cutoffs(&self.shape, eps, self.config.tau)?;
        let edge = grid.half_width - EDGE_LAYER;
        let taper = |t: f64| bump(Jet::constant(libm::fabs(t) - edge + 2.0)).value();
        let (chi1, chi2, chi4) = (
            columns(&grid, |t| cut.chi(1, t) * taper(t)),
            columns(&grid, |t| cut.chi(2, t) * taper(t)),
            columns(&grid, |t| cut.chi(4, t) * taper(t)),
        );
        let op = PhaseOperator::new(&grid, self.profile.well().clone())?;
        let ansatz = assemble_vtilde(&grid, self.profile);
        let f = scale_columns(&op.apply_ansatz(&ansatz), &chi4);
        let (q_term, r_term) = if u_prev.max_abs() > 0.0 {
            let rem = RemainderOperator::new(&grid, &op, &ansatz.total, &ansatz.v_star)?;
            (
                scale_columns(&op.quadratic_remainder(&ansatz.total, u_prev), &chi1),
                scale_columns(&rem.apply(u_prev), &chi4),
            )
        } else {
            (grid.zeros(), grid.zeros())
        };
        let total = f.add(&q_term).add(&r_term);
        let dv = &ansatz.profile.dv;
        let c_star = self.profile.c_star;
        let q = grid.t_inner(&total, dv);
        let sup = |v: &[f64]| v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        let p2_sup = sup(&grid.t_inner(&q_term, dv)) / c_star;
        let p4_sup = sup(&grid.t_inner(&r_term, dv)) / c_star;
        let scale = 1.0 / (powi(eps, 4) * c_star);
        let gq: Vec<f64> = q.iter().map(|x| x * scale).collect();
        let g = CircleField::from_samples(&gq, self.config.phi_modes, Symmetry::Even).field;

        let sol = inner.solve(&inner.project(&total).scale(-1.0), true)?;
        let u = sol.u;
        let v = assemble_global_v(&grid, &cut, &ansatz.total);
        let mass = mass_defect(&grid, self.profile, &v.add(&scale_columns(&u, &chi2)));
        let g_term = if self.config.mass_correction {
            mass.g_term
        } else {
            0.0
        };
        let volume = volume_residual(
            &self.shape,
            eps,
            phi,
            self.profile,
            mass.upper_limit,
            g_term,
        );
        Ok(Evaluation {
            g,
            q_sup: sup(&q),
            volume,
            g_term: mass.g_term,
            u,
            inner_residual: sol.residual,
            p2_sup,
            p4_sup,
        })
    }
}

/// Solve `ε⁻⁴c⋆⁻¹q(φ) = λ` together with the volume constraint.
///
/// `q(θ) = ∫(χ₄F(ṽ) + χ₁Q(U) + χ₄R(U))v⋆′ dt`, where `U` solves
/// `𝓛_ε²U = −P(χ₄F(ṽ) + χ₁Q(U) + χ₄R(U))` with the previous `U` on the
/// right and `P` removes the `v⋆′` component. Since `q ≈ −ε⁴c⋆L̃₀φ + …`,
/// each step solves `L̃₀Δ + λ = G(φ)`, `∫Δ dσ = −vol(φ)` and sets
/// `φ ← φ + ωΔ`.
pub fn solve_bifurcation(
    shape: &TorusShape,
    profile: &ProfileTable,
    eps: f64,
    config: &BifurcationConfig,
) -> Result<ReducedState> {
    if !(config.omega > 0.0 && config.omega <= 1.0) {
        return Err(Error::param("omega", "must lie in (0, 1]"));
    }
    let limit = config.grid.collar_safety * shape.collar() / eps;
    let half_width = (config.tau / (2.0 * eps) + 8.0).min(limit - config.phi_margin);
    let spec = GridSpec {
        half_width: Some(half_width),
        ..config.grid
    };
    let op = assemble_ltilde(shape, config.phi_modes, Symmetry::Even);
    let mut ctx = Context {
        shape: *shape,
        profile,
        eps,
        config: *config,
        spec,
        inner: None,
    };
    let mut phi = CircleField::zeros(config.phi_modes, Symmetry::Even);
    let probe = FermiGrid::new(*shape, eps, config.tau, phi.clone(), spec)?;
    let mut eval = ctx.evaluate(&phi, &probe.zeros())?;
    let mut trace = Vec::new();
    let mut omega = config.omega;
    let mut lambda = 0.0;
    let mut converged = false;
    let mut last_residual = f64::INFINITY;
    for n in 0..config.max_iter {
        let sol = solve_with(&op, shape, &eval.g, -eval.volume)?;
        lambda = sol.lambda;
        let residual = op.norm(
            &eval
                .g
                .sub(&CircleField::constant(lambda, 0, Symmetry::Even)),
        );
        if residual > last_residual && residual > 100.0 * config.tol {
            omega = (0.5 * omega).max(MIN_OMEGA);
        } else if residual < 0.5 * last_residual {
            omega = (2.0 * omega).min(config.omega);
        }
        last_residual = residual;
        while omega > MIN_OMEGA && phi.add(&sol.phi.scale(omega)).max_abs() > config.phi_margin {
            omega *= 0.5;
        }
        let step = sol.phi.scale(omega);
        let update = step.max_abs();
        phi = phi.add(&step);
        trace.push(IterationRecord {
            iteration: n + 1,
            update_norm: update,
            residual_norm: residual,
            volume_residual: eval.volume,
            lambda,
            omega,
        });
        eval = ctx.evaluate(&phi, &eval.u)?;
        if !update.is_finite() {
            break;
        }
        if update <= config.tol {
            converged = true;
            break;
        }
    }
    let inner = ctx
        .inner
        .as_ref()
        .expect("inner operator built on first evaluation");
    let u_sup = eval.u.max_abs();
    let u_odd = InnerOperator::parity_defect(&eval.u, 1.0);
    Ok(ReducedState {
        eps,
        phi_sup_over_eps: phi.max_abs() / eps,
        phi,
        lambda,
        converged,
        trace,
        volume_residual: eval.volume,
        projection_sup: eval.q_sup,
        u_sup_over_eps3: u_sup / powi(eps, 3),
        u_odd_over_eps4: u_odd / powi(eps, 4),
        p2_sup: eval.p2_sup,
        p4_over_eps5: eval.p4_sup / powi(eps, 5),
        g_term: eval.g_term,
        inner_residual: eval.inner_residual,
        theta_nodes: inner.m(),
        t_nodes: inner.k(),
        half_width,
    })
}
