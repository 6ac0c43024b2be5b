use crate::geometry::{jet, GeometryJet, TorusShape};
use crate::num::math::{cos, sin};

/// Coefficients of `g̃^{ij} = g^{ij} + z a₁ + z² a₂ + O(z³)` and
/// `b̃^i = b^i + z b₁ + z² b₂ + O(z³)` at unit scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionCoeffs {
    pub theta1: f64,
    pub a1: [[f64; 2]; 2],
    pub b1: [f64; 2],
    pub a2: [[f64; 2]; 2],
    pub b2: [f64; 2],
}

/// Closed forms obtained by differentiating the parallel metric in `z`.
pub fn expansion_coeffs(shape: &TorusShape, theta1: f64) -> ExpansionCoeffs {
    let (big_r, r) = (shape.big_r(), shape.small_r());
    let (c, s) = (cos(theta1), sin(theta1));
    let rho = big_r + r * c;
    // b̃ = −s/h with h(z) = (r + z)(R + (r + z)c).
    let h = r * rho;
    let dh = rho + r * c;
    let r3 = r * r * r;
    ExpansionCoeffs {
        theta1,
        a1: [[-2.0 / r3, 0.0], [0.0, -2.0 * c / (rho * rho * rho)]],
        b1: [s * dh / (h * h), 0.0],
        a2: [
            [3.0 / (r3 * r), 0.0],
            [0.0, 3.0 * c * c / (rho * rho * rho * rho)],
        ],
        b2: [-s * (dh * dh / (h * h * h) - c / (h * h)), 0.0],
    }
}

/// `b₁^i = 2∂_jA^{ij} + 2Γ^k_{kj}A^{ij} − g^{ij}∂_jH` from the surface jet.
pub fn b1_from_definition(j: &GeometryJet) -> f64 {
    // A^{11} = −1/r³ is constant in θ₁ and nothing depends on θ₂.
    let trace_gamma = j.christoffel[0][0][0] + j.christoffel[1][1][0];
    2.0 * trace_gamma * j.a_up[0][0] - j.g_inv[0][0] * j.dh
}

/// The `θ₁` coefficient that makes `a₁^{ij}ψ_ij + b₁^iψ_i` equal to
/// `2⟨A, ∇²ψ⟩ + (∇ψ, ∇H)`: `−2A^{22}Γ¹₂₂ + g^{11}∂₁H`.
pub fn b1_covariant(j: &GeometryJet) -> f64 {
    -2.0 * j.a_up[1][1] * j.christoffel[0][1][1] + j.g_inv[0][0] * j.dh
}

/// Both routes at `θ₁` for convenience.
pub fn b1_routes(shape: &TorusShape, theta1: f64) -> (f64, f64) {
    let j = jet(shape, theta1);
    (b1_from_definition(&j), b1_covariant(&j))
}
