//! Enclosed volume of the shifted torus and the mass of the phase field.

use crate::geometry::{jet, surface_integral, CircleField, TorusShape};
use crate::grid::{FermiGrid, GridField};
use crate::num::math::{cos, PI, TAU};
use crate::num::quad::GaussLegendre;
use crate::profile::ProfileTable;
use alloc::vec::Vec;

fn theta_rule(phi: &CircleField) -> Vec<f64> {
    let n = 4 * phi.modes() + 64;
    (0..n).map(|j| TAU * j as f64 / n as f64).collect()
}

/// Volume enclosed by `Σ_{ε,φ}/ε`, the rescaled torus pushed out by `εφ`
/// along its normal, in units where the unshifted surface encloses
/// `ε⁻³·vol(Σ)`:
///
/// `ε⁻³·2π²Rr² + ε⁻²∫φ dσ + ε⁻¹·2π∫φ²(R/2 + r cos θ) dθ + (2π/3)∫φ³ cos θ dθ`.
pub fn interior_volume(shape: &TorusShape, eps: f64, phi: &CircleField) -> f64 {
    let (big_r, r) = (shape.big_r(), shape.small_r());
    let nodes = theta_rule(phi);
    let dtheta = TAU / nodes.len() as f64;
    let (mut quad, mut cubic) = (0.0, 0.0);
    for th in &nodes {
        let p = phi.eval(*th);
        let c = cos(*th);
        quad += p * p * (0.5 * big_r + r * c);
        cubic += p * p * p * c;
    }
    let leading = 2.0 * PI * PI * big_r * r * r / (eps * eps * eps);
    leading
        + surface_integral(shape, phi) / (eps * eps)
        + TAU * quad * dtheta / eps
        + TAU / 3.0 * cubic * dtheta
}

/// `∫_Σ H dσ` on the unit-scale torus.
pub fn total_mean_curvature(shape: &TorusShape) -> f64 {
    let n = 256;
    let r = shape.small_r();
    (0..n)
        .map(|j| {
            let th = TAU * j as f64 / n as f64;
            jet(shape, th).h * TAU * r * shape.rho(th)
        })
        .sum::<f64>()
        * TAU
        / n as f64
}

/// `∫₀^L t(1 − v⋆(t)) dt`; `L = ∞` integrates until the tail is below
/// roundoff.
pub fn profile_integral(profile: &ProfileTable, upper: f64) -> f64 {
    let cap = 45.0 / profile.decay_rate;
    let end = upper.min(cap);
    if !(end > 0.0) {
        return 0.0;
    }
    let h = profile.heteroclinic();
    let gl = GaussLegendre::new(12);
    let panels = libm::ceil(end / 0.5) as usize;
    let width = end / panels as f64;
    (0..panels)
        .map(|p| {
            let a = p as f64 * width;
            gl.integrate(a, a + width, |t| t * h.point(t).complement)
        })
        .sum()
}

/// `∫(1 − u) dx` over space computed two ways for a field `u` on a grid.
///
/// `direct` integrates `1 − u` over the band `|t| ≤ T` of the grid and adds
/// `2·vol` of the region inside the band, where `u = −1`. `formula` is
///
/// `2ε⁻³vol(Σ) + 2ε⁻²∫φ dσ − 2ε⁻¹(∫H dσ)∫₀^L t(1 − v⋆) dt`
///
/// with `L = min(6 + τ/(2ε), T)`, and `g_term = (direct − formula)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassDefect {
    pub direct: f64,
    pub formula: f64,
    pub g_term: f64,
    pub upper_limit: f64,
    /// Contribution of the band `|t| ≤ T`.
    pub band: f64,
    /// Volume enclosed by the inner edge of the band.
    pub inner_volume: f64,
}

pub fn mass_defect(grid: &FermiGrid, profile: &ProfileTable, u: &GridField) -> MassDefect {
    let shape = &grid.shape;
    let eps = grid.eps;
    let (big_r, r) = (shape.big_r(), shape.small_r());
    let tw = grid.t_weights();
    let dtheta = TAU / grid.m() as f64;
    let mut band = 0.0;
    for (i, th) in grid.theta.nodes().iter().enumerate() {
        let c = cos(*th);
        let row = u.row(i);
        let mut s = 0.0;
        for (k, t) in grid.t.iter().enumerate() {
            let rho = r + eps * (t + grid.phi_jet[i][0]);
            s += tw[k] * (1.0 - row[k]) * (big_r + rho * c) * rho;
        }
        band += s * dtheta;
    }
    band *= TAU / (eps * eps);
    let edge = grid.phi.sub(&CircleField::constant(
        grid.half_width,
        0,
        grid.phi.symmetry(),
    ));
    let inner_volume = interior_volume(shape, eps, &edge);
    let direct = band + 2.0 * inner_volume;
    let upper_limit = (6.0 + grid.inner_radius()).min(grid.half_width);
    let formula = 2.0 * shape.enclosed_volume() / (eps * eps * eps)
        + 2.0 * surface_integral(shape, &grid.phi) / (eps * eps)
        - 2.0 * total_mean_curvature(shape) * profile_integral(profile, upper_limit) / eps;
    MassDefect {
        direct,
        formula,
        g_term: 0.5 * (direct - formula),
        upper_limit,
        band,
        inner_volume,
    }
}

/// The volume constraint in terms of `φ`:
///
/// `∫_Σ φ dσ − ε(∫H dσ)∫₀^L t(1 − v⋆) dt + ε²G`,
///
/// i.e. `∫φ dσ + 4√2π²ε∫₀^L t(1 − v⋆) dt + ε²G` on the Clifford torus.
pub fn volume_residual(
    shape: &TorusShape,
    eps: f64,
    phi: &CircleField,
    profile: &ProfileTable,
    upper: f64,
    g_term: f64,
) -> f64 {
    surface_integral(shape, phi)
        - eps * total_mean_curvature(shape) * profile_integral(profile, upper)
        + eps * eps * g_term
}
