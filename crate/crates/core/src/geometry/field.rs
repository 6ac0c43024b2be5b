use crate::num::fourier::coefficients;
use crate::num::math::{cos, sin, TAU};
use alloc::vec;
use alloc::vec::Vec;

/// Whether a circle field is restricted to even (cosine) modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Even,
    Full,
}

/// A function of `θ₁` stored as `f(θ) = Σ_{k ≤ N} a_k cos kθ + b_k sin kθ`.
///
/// Even fields keep `b ≡ 0`. Sampling uses `θ_j = 2πj/M`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleField {
    cos: Vec<f64>,
    sin: Vec<f64>,
    symmetry: Symmetry,
}

/// A field together with the RMS size of the modes dropped to fit it
/// into the mode budget.
#[derive(Debug, Clone, PartialEq)]
pub struct Projected {
    pub field: CircleField,
    pub truncation: f64,
}

impl CircleField {
    pub fn zeros(modes: usize, symmetry: Symmetry) -> Self {
        Self {
            cos: vec![0.0; modes + 1],
            sin: vec![0.0; modes + 1],
            symmetry,
        }
    }

    pub fn even(cos: Vec<f64>) -> Self {
        let n = cos.len();
        assert!(n >= 1, "a field needs at least the constant mode");
        Self {
            cos,
            sin: vec![0.0; n],
            symmetry: Symmetry::Even,
        }
    }

    pub fn full(cos: Vec<f64>, sin: Vec<f64>) -> Self {
        assert_eq!(cos.len(), sin.len(), "coefficient lengths differ");
        let mut sin = sin;
        sin[0] = 0.0;
        Self {
            cos,
            sin,
            symmetry: Symmetry::Full,
        }
    }

    pub fn constant(c: f64, modes: usize, symmetry: Symmetry) -> Self {
        let mut f = Self::zeros(modes, symmetry);
        f.cos[0] = c;
        f
    }

    /// Interpolate `f` on `4N + 1` nodes and keep `N` modes.
    pub fn from_fn(modes: usize, symmetry: Symmetry, f: impl Fn(f64) -> f64) -> Self {
        Self::project_fn(modes, symmetry, f).field
    }

    /// As [`CircleField::from_fn`], also reporting the dropped modes.
    pub fn project_fn(modes: usize, symmetry: Symmetry, f: impl Fn(f64) -> f64) -> Projected {
        let m = 4 * modes + 65;
        let samples: Vec<f64> = (0..m).map(|j| f(TAU * j as f64 / m as f64)).collect();
        Self::from_samples(&samples, modes, symmetry)
    }

    /// Field from samples on `θ_j = 2πj/M` with `M` odd and `M ≥ 2N + 1`.
    pub fn from_samples(samples: &[f64], modes: usize, symmetry: Symmetry) -> Projected {
        assert!(samples.len() % 2 == 1, "sample count must be odd");
        let (a, b) = coefficients(samples);
        let mut tail = 0.0;
        let mut cos = vec![0.0; modes + 1];
        let mut sin = vec![0.0; modes + 1];
        for k in 0..a.len() {
            if k <= modes {
                cos[k] = a[k];
                sin[k] = b[k];
            } else {
                tail += 0.5 * (a[k] * a[k] + b[k] * b[k]);
            }
        }
        if symmetry == Symmetry::Even {
            for k in 0..=modes {
                tail += 0.5 * sin[k] * sin[k];
                sin[k] = 0.0;
            }
        }
        Projected {
            field: Self { cos, sin, symmetry },
            truncation: libm::sqrt(tail),
        }
    }

    pub fn modes(&self) -> usize {
        self.cos.len() - 1
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut s = self.cos[0];
        for k in 1..self.cos.len() {
            let kt = k as f64 * theta;
            s += self.cos[k] * cos(kt) + self.sin[k] * sin(kt);
        }
        s
    }

    /// Value and first four derivatives at `θ`.
    pub fn eval_jet(&self, theta: f64) -> [f64; 5] {
        let mut out = [self.cos[0], 0.0, 0.0, 0.0, 0.0];
        for k in 1..self.cos.len() {
            let kf = k as f64;
            let (c, s) = (cos(kf * theta), sin(kf * theta));
            let (a, b) = (self.cos[k], self.sin[k]);
            let p = a * c + b * s;
            let q = -a * s + b * c;
            out[0] += p;
            out[1] += kf * q;
            out[2] -= kf * kf * p;
            out[3] -= kf * kf * kf * q;
            out[4] += kf * kf * kf * kf * p;
        }
        out
    }

    /// Exact spectral derivative of the given order.
    pub fn derivative(&self, order: usize) -> Self {
        let n = self.cos.len();
        let mut cos_out = self.cos.clone();
        let mut sin_out = self.sin.clone();
        for _ in 0..order {
            for k in 0..n {
                let kf = k as f64;
                let (a, b) = (cos_out[k], sin_out[k]);
                cos_out[k] = kf * b;
                sin_out[k] = -kf * a;
            }
        }
        let symmetry = if order % 2 == 0 {
            self.symmetry
        } else {
            Symmetry::Full
        };
        Self {
            cos: cos_out,
            sin: sin_out,
            symmetry,
        }
    }

    /// Samples on `θ_j = 2πj/M`.
    pub fn sample(&self, m: usize) -> Vec<f64> {
        (0..m)
            .map(|j| self.eval(TAU * j as f64 / m as f64))
            .collect()
    }

    /// Mean square from the coefficients: `a₀² + ½Σ(a_k² + b_k²)`.
    pub fn energy(&self) -> f64 {
        let mut e = self.cos[0] * self.cos[0];
        for k in 1..self.cos.len() {
            e += 0.5 * (self.cos[k] * self.cos[k] + self.sin[k] * self.sin[k]);
        }
        e
    }

    /// Mean square of `M` samples; equals [`CircleField::energy`] for `M > 2N`.
    pub fn discrete_energy(&self, m: usize) -> f64 {
        self.sample(m).iter().map(|x| x * x).sum::<f64>() / m as f64
    }

    /// Sup norm estimated on `16N + 1` samples.
    pub fn max_abs(&self) -> f64 {
        let m = 16 * self.modes().max(4) + 1;
        self.sample(m).iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            cos: self.cos.iter().map(|x| x * s).collect(),
            sin: self.sin.iter().map(|x| x * s).collect(),
            symmetry: self.symmetry,
        }
    }

    /// Same coefficients padded or truncated to `modes`.
    pub fn with_modes(&self, modes: usize) -> Self {
        let mut cos = self.cos.clone();
        let mut sin = self.sin.clone();
        cos.resize(modes + 1, 0.0);
        sin.resize(modes + 1, 0.0);
        Self {
            cos,
            sin,
            symmetry: self.symmetry,
        }
    }

    fn combine(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let n = self.modes().max(other.modes());
        let a = self.with_modes(n);
        let b = other.with_modes(n);
        let symmetry = if a.symmetry == Symmetry::Even && b.symmetry == Symmetry::Even {
            Symmetry::Even
        } else {
            Symmetry::Full
        };
        Self {
            cos: a.cos.iter().zip(&b.cos).map(|(x, y)| f(*x, *y)).collect(),
            sin: a.sin.iter().zip(&b.sin).map(|(x, y)| f(*x, *y)).collect(),
            symmetry,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |x, y| x - y)
    }

    /// Dealiased product truncated to the larger mode budget of the factors.
    pub fn mul(&self, other: &Self) -> Projected {
        let n = self.modes().max(other.modes());
        let m = 4 * n + 1;
        let (a, b) = (self.sample(m), other.sample(m));
        let prod: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        let symmetry = if self.symmetry == Symmetry::Even && other.symmetry == Symmetry::Even {
            Symmetry::Even
        } else {
            Symmetry::Full
        };
        Self::from_samples(&prod, n, symmetry)
    }

    /// Coefficient vector in basis order `[a₀, a₁, …, a_N]` for even fields
    /// and `[a₀, a₁, b₁, …, a_N, b_N]` for full fields.
    pub fn to_vector(&self) -> Vec<f64> {
        match self.symmetry {
            Symmetry::Even => self.cos.clone(),
            Symmetry::Full => {
                let mut v = vec![self.cos[0]];
                for k in 1..self.cos.len() {
                    v.push(self.cos[k]);
                    v.push(self.sin[k]);
                }
                v
            }
        }
    }

    pub fn from_vector(v: &[f64], symmetry: Symmetry) -> Self {
        match symmetry {
            Symmetry::Even => Self::even(v.to_vec()),
            Symmetry::Full => {
                let n = (v.len() - 1) / 2;
                let mut cos = vec![v[0]; 1];
                let mut sin = vec![0.0; 1];
                for k in 0..n {
                    cos.push(v[1 + 2 * k]);
                    sin.push(v[2 + 2 * k]);
                }
                Self::full(cos, sin)
            }
        }
    }
}
