use crate::num::math::max_abs;
use crate::{Error, Result};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

/// `W` and its first four derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellJet {
    pub w: f64,
    pub dw: f64,
    pub d2w: f64,
    pub d3w: f64,
    pub d4w: f64,
}

/// Even polynomial double well `W(u) = Σ c_k u^{2k}` with zeros at `±1`.
///
/// Construction factors `W(u) = (1 − u²)² P(u²)` and checks that `P` is
/// positive, which gives `W > 0` away from `±1` and `W″(±1) = 8P(1) > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleWell {
    label: String,
    even: Vec<f64>,
    reduced: Vec<f64>,
    reduced_prime: Vec<f64>,
    quotient: Vec<f64>,
    /// `derivs[m]` holds the power-series coefficients of `W^{(m)}(u)`.
    derivs: Vec<Vec<f64>>,
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, ck| acc * x + ck)
}

/// Divide `p(s)` by `(s − 1)`: returns quotient and remainder.
fn deflate(p: &[f64]) -> (Vec<f64>, f64) {
    let n = p.len();
    if n < 2 {
        return (vec![0.0], p.first().copied().unwrap_or(0.0));
    }
    let mut q = vec![0.0; n - 1];
    let mut carry = 0.0;
    for k in (1..n).rev() {
        carry = p[k] + carry;
        q[k - 1] = carry;
    }
    (q, p[0] + carry)
}

impl DoubleWell {
    /// `W(u) = (1 − u²)²/4`.
    pub fn quartic() -> Self {
        Self::from_even_coefficients("quartic", &[0.25, -0.5, 0.25]).expect("quartic well is valid")
    }

    /// `W(u) = (1 − u²)²(1 + u²)/4`, a non-quartic well with `W″(±1) = 4`.
    pub fn sextic() -> Self {
        Self::from_even_coefficients("sextic", &[0.25, -0.25, -0.25, 0.25])
            .expect("sextic well is valid")
    }

    /// Well from coefficients of `W` in powers of `s = u²`.
    pub fn from_even_coefficients(label: &str, coeffs: &[f64]) -> Result<Self> {
        if coeffs.len() < 3 || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidWell(
                "need finite coefficients of degree at least 2 in u²".to_string(),
            ));
        }
        let scale = coeffs.iter().map(|c| c.abs()).sum::<f64>();
        let tol = 1e-12 * scale;
        let (q1, r1) = deflate(coeffs);
        if r1.abs() > tol {
            return Err(Error::InvalidWell(format!("W(±1) = {r1:e}, expected 0")));
        }
        let (p, r2) = deflate(&q1);
        if r2.abs() > tol {
            return Err(Error::InvalidWell(format!(
                "W′(±1) ≠ 0 (dW/ds at s = 1 is {r2:e})"
            )));
        }
        // P(s) must stay positive on the sampled range |u| ≤ 1.5.
        for i in 0..=2250 {
            let s = i as f64 * 1e-3;
            let ps = horner(&p, s);
            if ps <= 0.0 {
                let u = libm::sqrt(s);
                return Err(Error::InvalidWell(format!(
                    "W is not positive at u = ±{u:.4} (reduced factor {ps:e})"
                )));
            }
        }
        let p1 = horner(&p, 1.0);
        let mut pm = p.clone();
        pm[0] -= p1;
        let (quotient, _) = deflate(&pm);
        let reduced_prime: Vec<f64> = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c)
            .collect();

        let mut series = vec![0.0; 2 * coeffs.len() - 1];
        for (k, c) in coeffs.iter().enumerate() {
            series[2 * k] = *c;
        }
        let mut derivs = vec![series];
        for m in 1..=4 {
            let prev = &derivs[m - 1];
            let d: Vec<f64> = prev
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect();
            derivs.push(if d.is_empty() { vec![0.0] } else { d });
        }
        Ok(Self {
            label: label.to_string(),
            even: coeffs.to_vec(),
            reduced: p,
            reduced_prime: if reduced_prime.is_empty() {
                vec![0.0]
            } else {
                reduced_prime
            },
            quotient,
            derivs,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Coefficients of `W` in powers of `u²`.
    pub fn even_coefficients(&self) -> &[f64] {
        &self.even
    }

    /// `P(s)` in `W = (1 − s)² P(s)`, `s = u²`.
    pub fn reduced(&self, s: f64) -> f64 {
        horner(&self.reduced, s)
    }

    pub fn reduced_derivative(&self, s: f64) -> f64 {
        horner(&self.reduced_prime, s)
    }

    /// `(P(1) − P(s)) / (1 − s)` as a polynomial (no cancellation at `s → 1`).
    pub fn reduced_quotient(&self, s: f64) -> f64 {
        horner(&self.quotient, s)
    }

    /// Whether `P` is constant, in which case `v⋆` is an exact `tanh`.
    pub fn has_constant_reduced_factor(&self) -> bool {
        max_abs(&self.reduced[1..]) == 0.0
    }

    pub fn eval(&self, u: f64) -> WellJet {
        WellJet {
            w: horner(&self.derivs[0], u),
            dw: horner(&self.derivs[1], u),
            d2w: horner(&self.derivs[2], u),
            d3w: horner(&self.derivs[3], u),
            d4w: horner(&self.derivs[4], u),
        }
    }

    pub fn w(&self, u: f64) -> f64 {
        horner(&self.derivs[0], u)
    }

    pub fn dw(&self, u: f64) -> f64 {
        horner(&self.derivs[1], u)
    }

    pub fn d2w(&self, u: f64) -> f64 {
        horner(&self.derivs[2], u)
    }

    pub fn d3w(&self, u: f64) -> f64 {
        horner(&self.derivs[3], u)
    }

    /// `W` and `W′` given `m = 1 − u²` computed without cancellation.
    pub fn w_dw_factored(&self, u: f64, m: f64) -> (f64, f64) {
        let s = u * u;
        let p = self.reduced(s);
        let dp = self.reduced_derivative(s);
        (m * m * p, u * m * (-4.0 * p + 2.0 * m * dp))
    }

    /// `W′(u + h) − W′(u)` by an exact Taylor sum, accurate for tiny `h`.
    pub fn dw_increment(&self, u: f64, h: f64) -> f64 {
        let deg = self.derivs[0].len() - 1;
        let mut coeffs = self.derivs[1].clone();
        let mut sum = 0.0;
        let mut hp = 1.0;
        let mut fact = 1.0;
        for j in 1..deg {
            let d: Vec<f64> = coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect();
            if d.is_empty() {
                break;
            }
            hp *= h;
            fact *= j as f64;
            sum += horner(&d, u) * hp / fact;
            coeffs = d;
        }
        sum
    }

    /// `√(W″(1))`, the exponential rate at which `v⋆ → ±1`.
    pub fn decay_rate(&self) -> f64 {
        libm::sqrt(self.d2w(1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn quartic_values() {
        let w = DoubleWell::quartic();
        let j = w.eval(0.5);
        assert_abs_diff_eq!(j.w, 0.75 * 0.75 / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(j.dw, 0.125 - 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(j.d2w, 3.0 * 0.25 - 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(j.d3w, 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(j.d4w, 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w.decay_rate(), core::f64::consts::SQRT_2, epsilon = 1e-15);
        assert!(w.has_constant_reduced_factor());
    }

    #[test]
    fn sextic_has_curvature_four_at_the_wells() {
        let w = DoubleWell::sextic();
        assert_abs_diff_eq!(w.d2w(1.0), 4.0, epsilon = 1e-14);
        assert_abs_diff_eq!(w.d2w(-1.0), 4.0, epsilon = 1e-14);
        assert_abs_diff_eq!(w.reduced(0.3), 1.3 / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w.reduced_quotient(0.3), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn rejects_invalid_wells() {
        // (1 − u²)⁴/8 is flat at the wells.
        assert!(
            DoubleWell::from_even_coefficients("flat", &[0.125, -0.5, 0.75, -0.5, 0.125]).is_err()
        );
        // 1 − u²: no zero derivative at ±1.
        assert!(DoubleWell::from_even_coefficients("bad", &[1.0, -1.0, 0.0]).is_err());
        // (1 − u²)²(u² − 1/2): changes sign inside (−1, 1).
        assert!(DoubleWell::from_even_coefficients("sign", &[-0.5, 2.0, -2.5, 1.0]).is_err());
    }

    proptest! {
        #[test]
        fn well_is_even(u in -1.5f64..1.5) {
            for w in [DoubleWell::quartic(), DoubleWell::sextic()] {
                let a = w.eval(u);
                let b = w.eval(-u);
                prop_assert!((a.w - b.w).abs() < 1e-14);
                prop_assert!((a.dw + b.dw).abs() < 1e-14);
                prop_assert!((a.d2w - b.d2w).abs() < 1e-14);
                prop_assert!((a.d3w + b.d3w).abs() < 1e-13);
            }
        }

        #[test]
        fn factored_form_matches_expansion(u in -1.2f64..1.2) {
            let w = DoubleWell::sextic();
            let (f, df) = w.w_dw_factored(u, 1.0 - u * u);
            prop_assert!((f - w.w(u)).abs() < 1e-14);
            prop_assert!((df - w.dw(u)).abs() < 1e-13);
        }

        #[test]
        fn increment_matches_difference(u in -1.0f64..1.0, h in -0.3f64..0.3) {
            let w = DoubleWell::sextic();
            let direct = w.dw(u + h) - w.dw(u);
            prop_assert!((w.dw_increment(u, h) - direct).abs() < 1e-13);
        }
    }
}
