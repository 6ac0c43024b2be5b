//! Finite-difference stencils on uniform grids.

use alloc::vec;
use alloc::vec::Vec;
use nalgebra::DMatrix;

/// Fornberg weights for derivatives `0..=m` at `x0` from the nodes `xs`.
///
/// Row `k` of the result holds the weights of the `k`-th derivative.
pub fn fornberg(x0: f64, xs: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; m + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// How a stencil treats nodes near the ends of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    /// Shift the stencil inside the grid (one-sided near the ends).
    OneSided,
    /// Keep the centered stencil and treat values beyond the grid as zero.
    /// Suited to fields that decay to zero before the ends.
    ZeroExtension,
}

/// A banded derivative operator on `n` uniform nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Stencil {
    n: usize,
    deriv: usize,
    rows: Vec<(usize, Vec<f64>)>,
}

impl Stencil {
    /// Derivative of order `deriv` with `2 * half + 1` points, spacing `h`.
    pub fn new(n: usize, h: f64, deriv: usize, half: usize, closure: Closure) -> Self {
        let width = 2 * half + 1;
        assert!(n >= width, "grid too small for the stencil");
        let offsets: Vec<f64> = (0..width).map(|k| k as f64 - half as f64).collect();
        let central = fornberg(0.0, &offsets, deriv).swap_remove(deriv);
        let scale = crate::num::math::powi(h, -(deriv as i32));
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            match closure {
                Closure::ZeroExtension => {
                    let lo = i.saturating_sub(half);
                    let skip = half.saturating_sub(i);
                    let hi = (i + half).min(n - 1);
                    let w: Vec<f64> = central[skip..skip + (hi - lo + 1)]
                        .iter()
                        .map(|c| c * scale)
                        .collect();
                    rows.push((lo, w));
                }
                Closure::OneSided => {
                    let start = i.saturating_sub(half).min(n - width);
                    if start + half == i {
                        rows.push((start, central.iter().map(|c| c * scale).collect()));
                    } else {
                        let xs: Vec<f64> =
                            (0..width).map(|k| (start + k) as f64 - i as f64).collect();
                        let w = fornberg(0.0, &xs, deriv).swap_remove(deriv);
                        rows.push((start, w.iter().map(|c| c * scale).collect()));
                    }
                }
            }
        }
        if deriv > 0 {
            // Annihilate constants exactly.
            for (i, (start, w)) in rows.iter_mut().enumerate() {
                let own = i - *start;
                let rest: f64 = w
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != own)
                    .map(|(_, x)| x)
                    .sum();
                w[own] = -rest;
            }
        }
        Self { n, deriv, rows }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Apply to a strided view: `input[offset + stride * i]` for `i < n`.
    ///
    /// Rows of derivative stencils sum to zero, so each is applied to the
    /// differences `u_k − u_i`; constants then map to exact zeros.
    pub fn apply_strided(&self, input: &[f64], offset: usize, stride: usize, out: &mut [f64]) {
        for (i, (start, w)) in self.rows.iter().enumerate() {
            let own = if self.deriv > 0 {
                input[offset + stride * i]
            } else {
                0.0
            };
            let mut s = 0.0;
            for (k, wk) in w.iter().enumerate() {
                s += wk * (input[offset + stride * (start + k)] - own);
            }
            out[i] = s;
        }
    }

    pub fn apply(&self, input: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        self.apply_strided(input, 0, 1, &mut out);
        out
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for (i, (start, w)) in self.rows.iter().enumerate() {
            for (k, wk) in w.iter().enumerate() {
                m[(i, start + k)] = *wk;
            }
        }
        m
    }
}
