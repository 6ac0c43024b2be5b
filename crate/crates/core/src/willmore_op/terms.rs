use crate::geometry::{GeometryJet, TorusShape};

/// `α = ρ′/ρ` and its first two `θ₁`-derivatives, so that
/// `Δ_Σ f = (f″ + α f′)/r²`.
fn alpha(shape: &TorusShape, j: &GeometryJet) -> [f64; 3] {
    let (big_r, r) = (shape.big_r(), shape.small_r());
    let (c, s) = (libm::cos(j.theta1), libm::sin(j.theta1));
    let rho = big_r + r * c;
    [
        -r * s / rho,
        -r * (c * big_r + r) / (rho * rho),
        r * s * (big_r * big_r - big_r * r * c - 2.0 * r * r) / (rho * rho * rho),
    ]
}

/// `L₀f` and its first two derivatives from the jet `f, …, f⁗`.
fn jacobi_jet(shape: &TorusShape, j: &GeometryJet, f: &[f64; 5]) -> [f64; 3] {
    let r2 = shape.small_r() * shape.small_r();
    let [a, da, d2a] = alpha(shape, j);
    let lap = (f[2] + a * f[1]) / r2;
    let dlap = (f[3] + da * f[1] + a * f[2]) / r2;
    let d2lap = (f[4] + d2a * f[1] + 2.0 * da * f[2] + a * f[3]) / r2;
    let (q, dq, d2q) = (j.abs_a2, j.d_abs_a2, j.d2_abs_a2);
    [
        -lap - q * f[0],
        -dlap - dq * f[0] - q * f[1],
        -d2lap - d2q * f[0] - 2.0 * dq * f[1] - q * f[2],
    ]
}

/// `L₀f = −Δ_Σ f − |A|² f`.
pub fn jacobi_pointwise(shape: &TorusShape, j: &GeometryJet, f: &[f64; 5]) -> f64 {
    jacobi_jet(shape, j, f)[0]
}

/// The six terms of `L̃₀f`, in order:
/// `L₀²f`, `(3/2)H² L₀f`, `−H(∇f, ∇H)`, `2(A∇f, ∇H)`, `2H⟨A, ∇²f⟩`,
/// `f(2⟨A, ∇²H⟩ + |∇H|² + 2H trA³)`.
pub fn ltilde_terms_pointwise(shape: &TorusShape, j: &GeometryJet, f: &[f64; 5]) -> [f64; 6] {
    let r2 = shape.small_r() * shape.small_r();
    let [a, _, _] = alpha(shape, j);
    let g = jacobi_jet(shape, j, f);
    let l0_sq = -(g[2] + a * g[1]) / r2 - j.abs_a2 * g[0];
    let a11 = j.a_up[0][0];
    let a22_gamma = j.a_up[1][1] * j.christoffel[0][1][1];
    let a_hess_f = a11 * f[2] - a22_gamma * f[1];
    let a_hess_h = a11 * j.d2h - a22_gamma * j.dh;
    [
        l0_sq,
        1.5 * j.h * j.h * g[0],
        -j.h * j.g_inv[0][0] * f[1] * j.dh,
        2.0 * a11 * f[1] * j.dh,
        2.0 * j.h * a_hess_f,
        f[0] * (2.0 * a_hess_h + j.g_inv[0][0] * j.dh * j.dh + 2.0 * j.h * j.tr_a3),
    ]
}

pub fn ltilde_pointwise(shape: &TorusShape, j: &GeometryJet, f: &[f64; 5]) -> f64 {
    ltilde_terms_pointwise(shape, j, f).iter().sum()
}
