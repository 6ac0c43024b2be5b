//! Chebyshev series on an interval.

use super::math::{cos, PI};
use alloc::vec;
use alloc::vec::Vec;

/// `f(x) ≈ c₀/2 + Σ_{k≥1} c_k T_k(y)` with `y` the image of `x` in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Chebyshev {
    a: f64,
    b: f64,
    coeffs: Vec<f64>,
}

impl Chebyshev {
    /// Interpolate `f` at `n` Chebyshev points of `[a, b]`.
    pub fn fit(a: f64, b: f64, n: usize, mut f: impl FnMut(f64) -> f64) -> Self {
        let bma = 0.5 * (b - a);
        let bpa = 0.5 * (b + a);
        let fx: Vec<f64> = (0..n)
            .map(|k| f(cos(PI * (k as f64 + 0.5) / n as f64) * bma + bpa))
            .collect();
        let mut coeffs = vec![0.0; n];
        for (j, c) in coeffs.iter_mut().enumerate() {
            let mut s = 0.0;
            for (k, v) in fx.iter().enumerate() {
                s += v * cos(PI * j as f64 * (k as f64 + 0.5) / n as f64);
            }
            *c = 2.0 * s / n as f64;
        }
        Self { a, b, coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Largest magnitude among the last `k` coefficients.
    pub fn tail(&self, k: usize) -> f64 {
        let n = self.coeffs.len();
        self.coeffs[n.saturating_sub(k)..]
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, x: f64) -> f64 {
        let y = (2.0 * x - self.a - self.b) / (self.b - self.a);
        let y2 = 2.0 * y;
        let (mut d, mut dd) = (0.0, 0.0);
        for c in self.coeffs.iter().skip(1).rev() {
            let sv = d;
            d = y2 * d - dd + c;
            dd = sv;
        }
        y * d - dd + 0.5 * self.coeffs[0]
    }

    /// Antiderivative series, normalized to vanish at `a`.
    pub fn integral(&self) -> Self {
        let n = self.coeffs.len();
        let con = 0.25 * (self.b - self.a);
        let mut out = vec![0.0; n];
        let mut sum = 0.0;
        let mut fac = 1.0;
        for j in 1..n {
            let next = if j + 1 < n { self.coeffs[j + 1] } else { 0.0 };
            out[j] = con * (self.coeffs[j - 1] - next) / j as f64;
            sum += fac * out[j];
            fac = -fac;
        }
        out[0] = 2.0 * sum;
        Self {
            a: self.a,
            b: self.b,
            coeffs: out,
        }
    }
}
