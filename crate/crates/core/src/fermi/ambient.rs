use crate::geometry::{CircleField, TorusShape};
use crate::num::math::{atan2, cos, sin, sqrt};

/// Cartesian Laplacian, by fourth-order central differences of step `step`,
/// of the function `(x₁, x₂, x₃) ↦ u(θ₁, t)` where `(θ₁, t)` are the shifted
/// Fermi coordinates of the point relative to `Σ/ε`. Evaluated at the point
/// with coordinates `(θ₁, θ₂ = 0, t)`.
pub fn ambient_laplacian(
    shape: &TorusShape,
    eps: f64,
    phi: &CircleField,
    u: impl Fn(f64, f64) -> f64,
    theta1: f64,
    t: f64,
    step: f64,
) -> f64 {
    let (big_r, r) = (shape.big_r() / eps, shape.small_r() / eps);
    let z = t + phi.eval(theta1);
    let x0 = [(big_r + (r + z) * cos(theta1)), 0.0, (r + z) * sin(theta1)];
    let f = |x: [f64; 3]| {
        let rho = sqrt(x[0] * x[0] + x[1] * x[1]);
        let (d1, d2) = (rho - big_r, x[2]);
        let th = atan2(d2, d1);
        let zz = sqrt(d1 * d1 + d2 * d2) - r;
        u(th, zz - phi.eval(th))
    };
    let w = [-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0];
    let mut lap = 0.0;
    for axis in 0..3 {
        for (k, wk) in w.iter().enumerate() {
            let mut x = x0;
            x[axis] += (k as f64 - 2.0) * step;
            lap += wk * f(x);
        }
    }
    lap / (step * step)
}
