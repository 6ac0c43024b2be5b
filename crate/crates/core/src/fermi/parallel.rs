use crate::geometry::{jet, TorusShape};
use crate::num::math::{cos, sin};
use crate::{Error, Result};

/// Geometry of the parallel surface at unit-scale normal distance `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParallelJet {
    pub theta1: f64,
    pub z: f64,
    pub g_tilde: [[f64; 2]; 2],
    pub g_tilde_inv: [[f64; 2]; 2],
    /// `Σ kᵢ/(1 − z kᵢ)`.
    pub h_tilde: f64,
    /// `b̃^i = (1/√g̃) ∂_j(√g̃ g̃^{ij})`; only the `θ₁` entry is nonzero.
    pub b_tilde: [f64; 2],
}

/// Parallel-surface data; `|z|` must stay below the focal collar `min(r, R − r)`.
pub fn parallel_jet(shape: &TorusShape, theta1: f64, z: f64) -> Result<ParallelJet> {
    let bound = shape.collar();
    if !(z.abs() < bound) {
        return Err(Error::Collar { z, bound });
    }
    Ok(parallel_unchecked(shape, theta1, z))
}

pub(crate) fn parallel_unchecked(shape: &TorusShape, theta1: f64, z: f64) -> ParallelJet {
    let (big_r, r) = (shape.big_r(), shape.small_r());
    let (c, s) = (cos(theta1), sin(theta1));
    let rz = r + z;
    let rho = big_r + rz * c;
    ParallelJet {
        theta1,
        z,
        g_tilde: [[rz * rz, 0.0], [0.0, rho * rho]],
        g_tilde_inv: [[1.0 / (rz * rz), 0.0], [0.0, 1.0 / (rho * rho)]],
        h_tilde: -1.0 / rz - c / rho,
        b_tilde: [-s / (rz * rho), 0.0],
    }
}

/// `Σ_{j=1}^{J} z^{j−1} H_j` with `H_j = Σᵢ kᵢ^j`.
pub fn mean_curvature_series(shape: &TorusShape, theta1: f64, z: f64, terms: usize) -> f64 {
    let j = jet(shape, theta1);
    let (mut p1, mut p2) = (j.k1, j.k2);
    let mut zp = 1.0;
    let mut s = 0.0;
    for _ in 0..terms {
        s += zp * (p1 + p2);
        p1 *= j.k1;
        p2 *= j.k2;
        zp *= z;
    }
    s
}
