//! Trigonometric collocation on an odd number of equispaced nodes.

use super::math::{cos, sin, PI, TAU};
use alloc::vec;
use alloc::vec::Vec;
use nalgebra::DMatrix;

/// Collocation grid `θ_j = 2πj/M` (M odd) with spectral differentiation
/// matrices. For odd `M` the second-derivative matrix equals `D1²`; its
/// rows are made to sum to zero exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaCollocation {
    nodes: Vec<f64>,
    d1: DMatrix<f64>,
    d2: DMatrix<f64>,
}

impl ThetaCollocation {
    pub fn new(m: usize) -> Self {
        assert!(
            m % 2 == 1 && m >= 3,
            "collocation needs an odd node count >= 3"
        );
        let half = m / 2;
        // Nodes past π are stored as negative angles so that θ_{M−j} = −θ_j
        // holds exactly.
        let nodes: Vec<f64> = (0..m)
            .map(|j| {
                if j <= half {
                    TAU * j as f64 / m as f64
                } else {
                    -TAU * (m - j) as f64 / m as f64
                }
            })
            .collect();
        // First rows of the circulant matrices, with exact (anti)symmetry.
        let mut c1 = vec![0.0; m];
        for d in 1..=half {
            let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
            c1[d] = 0.5 * sign / sin(d as f64 * PI / m as f64);
            c1[m - d] = -c1[d];
        }
        let mut c2 = vec![0.0; m];
        for d in 1..=half {
            let v: f64 = (0..m).map(|k| c1[k] * c1[(m + d - k) % m]).sum();
            let w: f64 = (0..m).map(|k| c1[k] * c1[(2 * m - d - k) % m]).sum();
            c2[d] = 0.5 * (v + w);
            c2[m - d] = c2[d];
        }
        c2[0] = -(1..m).map(|d| c2[d]).sum::<f64>();
        let d1 = DMatrix::from_fn(m, m, |j, k| c1[(m + j - k) % m]);
        let d2 = DMatrix::from_fn(m, m, |j, k| c2[(m + j - k) % m]);
        Self { nodes, d1, d2 }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn d1(&self) -> &DMatrix<f64> {
        &self.d1
    }

    pub fn d2(&self) -> &DMatrix<f64> {
        &self.d2
    }

    /// Highest resolved mode, `(M - 1) / 2`.
    pub fn max_mode(&self) -> usize {
        (self.len() - 1) / 2
    }
}

/// Cosine and sine coefficients of samples on `θ_j = 2πj/M`, so that
/// `f(θ) = Σ_k a_k cos kθ + b_k sin kθ` for `k ≤ (M-1)/2` when `M` is odd.
pub fn coefficients(samples: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let m = samples.len();
    let kmax = (m - 1) / 2;
    let mut a = vec![0.0; kmax + 1];
    let mut b = vec![0.0; kmax + 1];
    for k in 0..=kmax {
        let (mut sa, mut sb) = (0.0, 0.0);
        for (j, f) in samples.iter().enumerate() {
            // Reduce the phase index to keep the argument small.
            let p = (k * j) % m;
            let arg = TAU * p as f64 / m as f64;
            sa += f * cos(arg);
            sb += f * sin(arg);
        }
        let scale = if k == 0 { 1.0 } else { 2.0 } / m as f64;
        a[k] = sa * scale;
        b[k] = sb * scale;
    }
    if m % 2 == 0 {
        a[kmax] *= 0.5;
        b[kmax] = 0.0;
    }
    b[0] = 0.0;
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn spectral_derivatives_are_exact_for_band_limited_data() {
        let c = ThetaCollocation::new(17);
        let f: Vec<f64> = c
            .nodes()
            .iter()
            .map(|t| (3.0 * t).cos() + 0.5 * (8.0 * t).sin())
            .collect();
        let v = nalgebra::DVector::from_vec(f);
        let d1 = c.d1() * &v;
        let d2 = c.d2() * &v;
        for (j, t) in c.nodes().iter().enumerate() {
            assert_abs_diff_eq!(
                d1[j],
                -3.0 * (3.0 * t).sin() + 4.0 * (8.0 * t).cos(),
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                d2[j],
                -9.0 * (3.0 * t).cos() - 32.0 * (8.0 * t).sin(),
                epsilon = 1e-11
            );
        }
    }

    #[test]
    fn coefficients_recover_modes() {
        let m = 15;
        let s: Vec<f64> = (0..m)
            .map(|j| {
                let t = TAU * j as f64 / m as f64;
                1.5 + 2.0 * (2.0 * t).cos() - 0.25 * (7.0 * t).sin()
            })
            .collect();
        let (a, b) = coefficients(&s);
        assert_abs_diff_eq!(a[0], 1.5, epsilon = 1e-14);
        assert_abs_diff_eq!(a[2], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(b[7], -0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(a[5], 0.0, epsilon = 1e-14);
    }
}
