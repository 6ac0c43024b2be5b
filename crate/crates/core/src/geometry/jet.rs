use super::shape::TorusShape;
use crate::num::math::{cos, sin};

/// Pointwise geometry of a torus of revolution at colatitude `θ₁`.
///
/// Conventions: outward normal `ν`, `A_ij = −⟨∂_iν, ∂_jX⟩`, `H = k₁ + k₂`.
/// Index 0 is `θ₁`, index 1 is `θ₂`. Derivative entries are `θ₁`-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryJet {
    pub theta1: f64,
    pub g: [[f64; 2]; 2],
    pub g_inv: [[f64; 2]; 2],
    pub a: [[f64; 2]; 2],
    /// `A^{ij} = g^{ik} A_kl g^{lj}`.
    pub a_up: [[f64; 2]; 2],
    pub k1: f64,
    pub k2: f64,
    pub h: f64,
    pub abs_a2: f64,
    pub tr_a3: f64,
    pub gauss: f64,
    /// `christoffel[k][i][j] = Γ^k_ij`.
    pub christoffel: [[[f64; 2]; 2]; 2],
    pub dh: f64,
    pub d2h: f64,
    pub d_abs_a2: f64,
    pub d2_abs_a2: f64,
    pub sqrt_g: f64,
}

pub fn jet(shape: &TorusShape, theta1: f64) -> GeometryJet {
    let (big_r, r) = (shape.big_r(), shape.small_r());
    let c = cos(theta1);
    let s = sin(theta1);
    let rho = big_r + r * c;
    let k1 = -1.0 / r;
    let k2 = -c / rho;
    let mut christoffel = [[[0.0; 2]; 2]; 2];
    christoffel[0][1][1] = rho * s / r;
    christoffel[1][0][1] = -r * s / rho;
    christoffel[1][1][0] = -r * s / rho;
    let rho2 = rho * rho;
    let rho3 = rho2 * rho;
    GeometryJet {
        theta1,
        g: [[r * r, 0.0], [0.0, rho2]],
        g_inv: [[1.0 / (r * r), 0.0], [0.0, 1.0 / rho2]],
        a: [[-r, 0.0], [0.0, -c * rho]],
        a_up: [[-1.0 / (r * r * r), 0.0], [0.0, -c / rho3]],
        k1,
        k2,
        h: k1 + k2,
        abs_a2: k1 * k1 + k2 * k2,
        tr_a3: k1 * k1 * k1 + k2 * k2 * k2,
        gauss: k1 * k2,
        christoffel,
        dh: s * big_r / rho2,
        d2h: big_r * (c * rho + 2.0 * r * s * s) / rho3,
        d_abs_a2: -2.0 * c * s * big_r / rho3,
        d2_abs_a2: -2.0 * big_r * ((c * c - s * s) * rho + 3.0 * r * c * s * s) / (rho2 * rho2),
        sqrt_g: r * rho,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::{PI, SQRT_2};
    use proptest::prelude::*;

    #[test]
    fn clifford_anchor_values() {
        let j = jet(&TorusShape::clifford(), 0.0);
        assert_abs_diff_eq!(j.h, -SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(j.abs_a2, 4.0 - 2.0 * SQRT_2, epsilon = 1e-15);
        let q = jet(&TorusShape::clifford(), PI / 2.0);
        assert_abs_diff_eq!(q.k2, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.h, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.gauss, 0.0, epsilon = 1e-15);
    }

    proptest! {
        #[test]
        fn two_curvature_identity(theta in -PI..PI, ratio in 1.05f64..4.0) {
            let j = jet(&TorusShape::with_ratio(ratio).unwrap(), theta);
            prop_assert!((j.h * j.h - j.abs_a2 - 2.0 * j.gauss).abs() < 1e-13);
        }

        #[test]
        fn reflection_parity(theta in -PI..PI) {
            let s = TorusShape::clifford();
            let (a, b) = (jet(&s, theta), jet(&s, -theta));
            prop_assert_eq!(a.h, b.h);
            prop_assert_eq!(a.abs_a2, b.abs_a2);
            prop_assert!((a.dh + b.dh).abs() < 1e-15);
            prop_assert!((a.d_abs_a2 + b.d_abs_a2).abs() < 1e-15);
            prop_assert!((a.d2h - b.d2h).abs() < 1e-14);
        }
    }
}
