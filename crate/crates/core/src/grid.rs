//! Tensor-product `(θ₁, t)` grids around the rescaled torus and fields on them.

use crate::geometry::{CircleField, TorusShape};
use crate::num::fd::{Closure, Stencil};
use crate::num::fourier::ThetaCollocation;
use crate::{Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Stencil half-width of the `t` differences (eighth order).
pub const T_STENCIL_HALF: usize = 4;

/// Resolution and extent of a [`FermiGrid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Odd number of `θ₁` collocation nodes.
    pub theta_nodes: usize,
    /// Target spacing in `t`.
    pub t_spacing: f64,
    /// Explicit half-width; defaults to `min(τ/(2ε) + 8, safety·collar/ε − max|φ|)`.
    pub half_width: Option<f64>,
    /// Bound on `|φ|` used for the collar check instead of the actual sup.
    pub phi_bound: Option<f64>,
    /// Fraction of the focal collar the shifted normal distance may reach.
    pub collar_safety: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            theta_nodes: 33,
            t_spacing: 0.04,
            half_width: None,
            phi_bound: None,
            collar_safety: 0.95,
        }
    }
}

/// Nodes `(θ_i, t_k)` with `θ_i = 2πi/M` and `t_k` uniform on `[−T, T]`.
///
/// The physical point of a node sits at scaled normal distance
/// `z = t + φ(θ)` from `Σ/ε`, i.e. at unit-scale distance `ε(t + φ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FermiGrid {
    pub shape: TorusShape,
    pub eps: f64,
    pub tau: f64,
    pub theta: ThetaCollocation,
    pub t: Vec<f64>,
    pub h: f64,
    pub half_width: f64,
    pub phi: CircleField,
    /// `(φ, φ′, φ″)` at the `θ` nodes.
    pub phi_jet: Vec<[f64; 3]>,
}

impl FermiGrid {
    pub fn new(
        shape: TorusShape,
        eps: f64,
        tau: f64,
        phi: CircleField,
        spec: GridSpec,
    ) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::param(
                "eps",
                format!("must lie in (0, 1), got {eps}"),
            ));
        }
        let collar = shape.collar();
        if !(tau > 0.0 && tau < collar) {
            return Err(Error::param(
                "tau",
                format!("must lie in (0, {collar}), got {tau}"),
            ));
        }
        if spec.theta_nodes < 3 || spec.theta_nodes % 2 == 0 {
            return Err(Error::param("theta_nodes", "must be odd and at least 3"));
        }
        if !(spec.t_spacing > 0.0) {
            return Err(Error::param("t_spacing", "must be positive"));
        }
        let phi_max = spec.phi_bound.unwrap_or_else(|| phi.max_abs());
        let limit = spec.collar_safety * collar / eps;
        let half_width = spec
            .half_width
            .unwrap_or_else(|| (tau / (2.0 * eps) + 8.0).min(limit - phi_max));
        if !(half_width > 0.0) || half_width + phi_max > limit * (1.0 + 1e-12) {
            return Err(Error::Collar {
                z: eps * (half_width + phi_max),
                bound: spec.collar_safety * collar,
            });
        }
        let cells = 2 * libm::ceil(half_width / spec.t_spacing) as usize;
        let k = cells + 1;
        if k < 2 * T_STENCIL_HALF + 1 {
            return Err(Error::Resolution("too few t nodes for the stencil".into()));
        }
        let h = 2.0 * half_width / cells as f64;
        let mid = (cells / 2) as i64;
        let t = (0..k as i64).map(|i| (i - mid) as f64 * h).collect();
        let theta = ThetaCollocation::new(spec.theta_nodes);
        let phi_jet = theta
            .nodes()
            .iter()
            .map(|th| {
                let j = phi.eval_jet(*th);
                [j[0], j[1], j[2]]
            })
            .collect();
        Ok(Self {
            shape,
            eps,
            tau,
            theta,
            t,
            h,
            half_width,
            phi,
            phi_jet,
        })
    }

    pub fn m(&self) -> usize {
        self.theta.len()
    }

    pub fn k(&self) -> usize {
        self.t.len()
    }

    /// Unit-scale normal distance `ε(t + φ(θ))` of node `(i, k)`.
    pub fn zeta(&self, i: usize, k: usize) -> f64 {
        self.eps * (self.t[k] + self.phi_jet[i][0])
    }

    /// `τ/(2ε)`, the half-width of the region where the interface layer lives.
    pub fn inner_radius(&self) -> f64 {
        self.tau / (2.0 * self.eps)
    }

    pub fn field(&self, f: impl Fn(f64, f64) -> f64) -> GridField {
        let mut data = Vec::with_capacity(self.m() * self.k());
        for th in self.theta.nodes() {
            for t in &self.t {
                data.push(f(*th, *t));
            }
        }
        GridField {
            m: self.m(),
            k: self.k(),
            data,
        }
    }

    pub fn zeros(&self) -> GridField {
        GridField::zeros(self.m(), self.k())
    }

    pub fn t_stencil(&self, deriv: usize, closure: Closure) -> Stencil {
        Stencil::new(self.k(), self.h, deriv, T_STENCIL_HALF, closure)
    }

    /// Simpson weights in `t`.
    pub fn t_weights(&self) -> Vec<f64> {
        crate::num::quad::simpson_weights(self.k(), self.h).expect("odd t node count")
    }

    /// `t` derivative of each `θ` row.
    pub fn dt(&self, u: &GridField, deriv: usize, closure: Closure) -> GridField {
        let s = self.t_stencil(deriv, closure);
        let mut out = self.zeros();
        for i in 0..self.m() {
            s.apply_strided(
                &u.data,
                i * self.k(),
                1,
                &mut out.data[i * self.k()..(i + 1) * self.k()],
            );
        }
        out
    }

    /// Spectral `θ` derivative of each `t` column, applied to differences
    /// from the row value so that constants map to exact zeros.
    pub fn dtheta(&self, u: &GridField, deriv: usize) -> GridField {
        let d = match deriv {
            1 => self.theta.d1(),
            2 => self.theta.d2(),
            _ => panic!("θ derivatives of order 1 and 2 only"),
        };
        let (m, k) = (self.m(), self.k());
        let mut out = self.zeros();
        for i in 0..m {
            let dst = &mut out.data[i * k..(i + 1) * k];
            let own = &u.data[i * k..(i + 1) * k];
            for j in 0..m {
                let c = d[(i, j)];
                if j == i || c == 0.0 {
                    continue;
                }
                let src = &u.data[j * k..(j + 1) * k];
                for kk in 0..k {
                    dst[kk] += c * (src[kk] - own[kk]);
                }
            }
        }
        out
    }

    /// `∫ f g dt` for each `θ` node.
    pub fn t_inner(&self, f: &GridField, g: &[f64]) -> Vec<f64> {
        let w = self.t_weights();
        (0..self.m())
            .map(|i| {
                f.row(i)
                    .iter()
                    .zip(g)
                    .zip(&w)
                    .map(|((a, b), c)| a * b * c)
                    .sum()
            })
            .collect()
    }
}

/// Values on the nodes of a [`FermiGrid`], row-major in `θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub m: usize,
    pub k: usize,
    pub data: Vec<f64>,
}

impl GridField {
    pub fn zeros(m: usize, k: usize) -> Self {
        Self {
            m,
            k,
            data: vec![0.0; m * k],
        }
    }

    pub fn at(&self, i: usize, k: usize) -> f64 {
        self.data[i * self.k + k]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.k..(i + 1) * self.k]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            m: self.m,
            k: self.k,
            data: self.data.iter().map(|x| f(*x)).collect(),
        }
    }

    pub fn zip(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!((self.m, self.k), (other.m, other.k), "grid shapes differ");
        Self {
            m: self.m,
            k: self.k,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|x| x * s)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Sup norm over nodes with `|t| ≤ limit`.
    pub fn max_abs_within(&self, t: &[f64], limit: f64) -> f64 {
        let mut m = 0.0_f64;
        for i in 0..self.m {
            for (k, tk) in t.iter().enumerate() {
                if tk.abs() <= limit {
                    m = m.max(self.at(i, k).abs());
                }
            }
        }
        m
    }

    /// The field at `(−θ, t)`: node `i` maps to `(M − i) mod M`.
    pub fn reflect_theta(&self) -> Self {
        let mut out = Self::zeros(self.m, self.k);
        for i in 0..self.m {
            let j = (self.m - i) % self.m;
            out.data[i * self.k..(i + 1) * self.k].copy_from_slice(self.row(j));
        }
        out
    }

    /// The field at `(θ, −t)`.
    pub fn reflect_t(&self) -> Self {
        let mut out = Self::zeros(self.m, self.k);
        for i in 0..self.m {
            for k in 0..self.k {
                out.data[i * self.k + k] = self.at(i, self.k - 1 - k);
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }
}
