use crate::geometry::TorusShape;
use crate::num::jet::Jet;
use crate::{Error, Result};
use alloc::format;

/// `h(x) = e^{−1/x}` for `x > 0`, zero otherwise, as a jet.
fn transition(x: Jet) -> Jet {
    if x.value() <= 0.0 {
        Jet::constant(0.0)
    } else {
        (-x.recip()).exp()
    }
}

/// The smooth step `ζ`: `1` for `s ≤ 1`, `0` for `s ≥ 2`,
/// `h(2 − s)/(h(2 − s) + h(s − 1))` in between.
pub fn bump(s: Jet) -> Jet {
    let x = s.value();
    if x <= 1.0 {
        Jet::constant(1.0)
    } else if x >= 2.0 {
        Jet::constant(0.0)
    } else {
        let a = transition(Jet::constant(2.0) - s);
        let b = transition(s - Jet::constant(1.0));
        a / (a + b)
    }
}

/// The cutoffs `χ_m(t) = ζ(|t| − τ/(2ε) − m)` of the layer around `Σ_ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffSet {
    pub eps: f64,
    pub tau: f64,
}

pub fn build_cutoffs(shape: &TorusShape, eps: f64, tau: f64) -> Result<CutoffSet> {
    let collar = shape.collar();
    if !(tau > 0.0 && tau < collar) {
        return Err(Error::param(
            "tau",
            format!("must lie in (0, {collar}), got {tau}"),
        ));
    }
    if !(eps > 0.0) {
        return Err(Error::param("eps", "must be positive"));
    }
    Ok(CutoffSet { eps, tau })
}

impl CutoffSet {
    /// `τ/(2ε)`.
    pub fn inner_radius(&self) -> f64 {
        self.tau / (2.0 * self.eps)
    }

    /// `χ_m` and its `t`-derivatives through fourth order.
    pub fn chi_jet(&self, m: u32, t: f64) -> [f64; 5] {
        let sign = if t < 0.0 { -1.0 } else { 1.0 };
        let s = t.abs() - self.inner_radius() - m as f64;
        let mut d = bump(Jet::variable(s)).derivatives();
        // d/dt = sign · d/ds.
        d[1] *= sign;
        d[3] *= sign;
        d
    }

    pub fn chi(&self, m: u32, t: f64) -> f64 {
        let s = t.abs() - self.inner_radius() - m as f64;
        bump(Jet::constant(s)).value()
    }

    /// The sign function `ℍ`: `+1` outside the torus (`t > 0`), `−1` inside.
    pub fn sign(&self, t: f64) -> f64 {
        if t >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn set() -> CutoffSet {
        build_cutoffs(&TorusShape::clifford(), 0.1, 0.3).unwrap()
    }

    #[test]
    fn support_and_plateau() {
        let c = set();
        let r = c.inner_radius();
        for m in [1, 2, 4, 5] {
            assert_eq!(c.chi(m, 0.0), 1.0);
            assert_eq!(c.chi(m, r + m as f64 + 0.999), 1.0);
            assert_eq!(c.chi(m, -(r + m as f64 + 2.0)), 0.0);
            let mid = c.chi(m, r + m as f64 + 1.5);
            assert_abs_diff_eq!(mid, 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn nested_cutoffs() {
        let c = set();
        for k in 0..2000 {
            let t = -10.0 + k as f64 * 0.01;
            assert_eq!(c.chi(2, t) * c.chi(1, t), c.chi(1, t));
            let x = c.chi(4, t);
            assert!((0.0..=1.0).contains(&x));
        }
    }

    #[test]
    fn derivatives_match_differences() {
        let c = set();
        // The transition of χ₁ spans 3.5 < |t| < 4.5.
        for t in [3.6, 4.0, -4.2, 4.4, 3.0] {
            let d = c.chi_jet(1, t);
            let h = 1e-4;
            let fd = (c.chi(1, t + h) - c.chi(1, t - h)) / (2.0 * h);
            assert_abs_diff_eq!(d[1], fd, epsilon = 1e-6);
            let h = 1e-4;
            let f2 = (c.chi(1, t + h) - 2.0 * c.chi(1, t) + c.chi(1, t - h)) / (h * h);
            assert_abs_diff_eq!(d[2], f2, epsilon = 1e-5);
        }
    }

    #[test]
    fn rejects_wide_collar() {
        assert!(build_cutoffs(&TorusShape::clifford(), 0.1, 0.5).is_err());
    }
}
