use super::field::{CircleField, Projected, Symmetry};
use super::jet::{jet, GeometryJet};
use super::shape::TorusShape;
use crate::num::math::{PI, TAU};
use alloc::vec::Vec;

/// Project a pointwise expression `f(jet, θ)` onto `modes` Fourier modes.
///
/// Samples on `4N + 65` nodes so the reported truncation also covers the
/// modes just above the budget.
pub fn project_pointwise(
    shape: &TorusShape,
    modes: usize,
    symmetry: Symmetry,
    f: impl Fn(&GeometryJet) -> f64,
) -> Projected {
    let m = 4 * modes + 65;
    let samples: Vec<f64> = (0..m)
        .map(|j| f(&jet(shape, TAU * j as f64 / m as f64)))
        .collect();
    CircleField::from_samples(&samples, modes, symmetry)
}

/// A curvature scalar as an even circle field.
pub fn scalar_field(
    shape: &TorusShape,
    modes: usize,
    f: impl Fn(&GeometryJet) -> f64,
) -> CircleField {
    project_pointwise(shape, modes, Symmetry::Even, f).field
}

/// `Δ_Σ f = (f″ − (r sin θ₁/ρ) f′)/r²` for `θ₂`-independent `f`.
pub fn laplace_beltrami(shape: &TorusShape, field: &CircleField) -> Projected {
    project_pointwise(shape, field.modes(), field.symmetry(), |j| {
        laplacian_from_jet(shape, j, &field.eval_jet(j.theta1))
    })
}

/// Covariant expressions of two `θ₂`-independent fields.
#[derive(Debug, Clone, PartialEq)]
pub struct CovariantForms {
    /// `(A∇φ, ∇ψ) = A^{11} φ′ ψ′`.
    pub a_grad: Projected,
    /// `⟨A, ∇²φ⟩ = A^{11} φ″ − A^{22} Γ¹₂₂ φ′`.
    pub a_hess: Projected,
    /// `(∇φ, ∇ψ) = φ′ψ′/r²`.
    pub grad: Projected,
    /// `|∇φ|²`.
    pub grad_sq: Projected,
}

pub fn covariant_forms(shape: &TorusShape, phi: &CircleField, psi: &CircleField) -> CovariantForms {
    let n = phi.modes().max(psi.modes());
    let sym = if phi.symmetry() == Symmetry::Even && psi.symmetry() == Symmetry::Even {
        Symmetry::Even
    } else {
        Symmetry::Full
    };
    let pj = |j: &GeometryJet| phi.eval_jet(j.theta1);
    let qj = |j: &GeometryJet| psi.eval_jet(j.theta1);
    CovariantForms {
        a_grad: project_pointwise(shape, n, sym, |j| j.a_up[0][0] * pj(j)[1] * qj(j)[1]),
        a_hess: project_pointwise(shape, phi.modes(), phi.symmetry(), |j| a_hessian(j, &pj(j))),
        grad: project_pointwise(shape, n, sym, |j| j.g_inv[0][0] * pj(j)[1] * qj(j)[1]),
        grad_sq: project_pointwise(shape, phi.modes(), phi.symmetry(), |j| {
            let d = pj(j)[1];
            j.g_inv[0][0] * d * d
        }),
    }
}

/// `⟨A, ∇²f⟩` from the jet of `f` (`d[1] = f′`, `d[2] = f″`).
pub(crate) fn a_hessian(j: &GeometryJet, d: &[f64]) -> f64 {
    j.a_up[0][0] * d[2] - j.a_up[1][1] * j.christoffel[0][1][1] * d[1]
}

/// `Δ_Σ f` from the jet of `f`; `Γ²₁₂ = ρ′/ρ` supplies the first-order term.
pub(crate) fn laplacian_from_jet(shape: &TorusShape, j: &GeometryJet, d: &[f64]) -> f64 {
    let r = shape.small_r();
    (d[2] + j.christoffel[1][0][1] * d[1]) / (r * r)
}

/// `−Δ_Σ H + ½ H (H² − 2|A|²)`, which vanishes on Willmore surfaces.
pub fn willmore_residual(shape: &TorusShape, modes: usize) -> Projected {
    project_pointwise(shape, modes, Symmetry::Even, |j| {
        let lap_h = laplacian_from_jet(shape, j, &[j.h, j.dh, j.d2h]);
        -lap_h + 0.5 * j.h * (j.h * j.h - 2.0 * j.abs_a2)
    })
}

/// `∫ f dσ = 2π r ∫ (R + r cos θ₁) f dθ₁`, exact for band-limited `f`.
pub fn surface_integral(shape: &TorusShape, field: &CircleField) -> f64 {
    let a = field.cos_coeffs();
    let a1 = if a.len() > 1 { a[1] } else { 0.0 };
    4.0 * PI * PI * shape.small_r() * (shape.big_r() * a[0] + 0.5 * shape.small_r() * a1)
}
