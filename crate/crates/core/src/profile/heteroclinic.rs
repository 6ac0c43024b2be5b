use super::well::DoubleWell;
use crate::num::cheb::Chebyshev;
use crate::num::math::{exp, sqrt};
use crate::{Error, Result};
use alloc::format;

/// Profile value and derivatives at one time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub t: f64,
    /// Angle `a` with `v = tanh a`.
    pub angle: f64,
    pub v: f64,
    /// `1 − |v|`, computed without cancellation.
    pub complement: f64,
    pub dv: f64,
    pub d2v: f64,
    pub d3v: f64,
    pub d4v: f64,
}

/// Heteroclinic solution of `v″ = W′(v)`, `v(0) = 0`, `v(±∞) = ±1`.
///
/// With `v = tanh a` and `q(v) = √(2P(v²))` the first integral
/// `v′ = √(2W(v))` becomes `da/dt = q(tanh a)`, whose inverse is
/// `t(a) = a/q(1) + G(tanh a)` where `G` integrates a polynomial-quotient
/// that stays bounded up to `v = ±1`. `G` is represented by a Chebyshev
/// series, so `t(a)` is exact to roundoff for every `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct Heteroclinic {
    well: DoubleWell,
    q1: f64,
    correction: Option<Chebyshev>,
}

impl Heteroclinic {
    pub fn new(well: DoubleWell) -> Result<Self> {
        let q1 = sqrt(2.0 * well.reduced(1.0));
        let correction = if well.has_constant_reduced_factor() {
            None
        } else {
            let integrand = |v: f64| {
                let s = v * v;
                let q = sqrt(2.0 * well.reduced(s));
                2.0 * well.reduced_quotient(s) / (q * q1 * (q1 + q))
            };
            let mut n = 32;
            loop {
                let c = Chebyshev::fit(-1.0, 1.0, n, integrand);
                let scale = c.coeffs().iter().fold(0.0_f64, |m, x| m.max(x.abs()));
                if c.tail(4) <= 1e-14 * scale.max(1e-300) {
                    break Some(c.integral());
                }
                n *= 2;
                if n > 4096 {
                    return Err(Error::Quadrature(format!(
                        "time map did not resolve near v = ±1 (tail {:e})",
                        c.tail(4)
                    )));
                }
            }
        };
        Ok(Self {
            well,
            q1,
            correction,
        })
    }

    pub fn well(&self) -> &DoubleWell {
        &self.well
    }

    fn q(&self, v: f64) -> f64 {
        sqrt(2.0 * self.well.reduced(v * v))
    }

    fn g(&self, v: f64) -> f64 {
        match &self.correction {
            Some(c) => c.eval(v) - c.eval(0.0),
            None => 0.0,
        }
    }

    /// Time at which the profile reaches the angle `a`.
    pub fn time_of_angle(&self, a: f64) -> f64 {
        a / self.q1 + self.g(libm::tanh(a))
    }

    /// Time at which the profile reaches `v ∈ (−1, 1)`.
    pub fn time_of_value(&self, v: f64) -> f64 {
        self.time_of_angle(libm::atanh(v))
    }

    /// Angle `a(t)` with `v⋆(t) = tanh a(t)`.
    pub fn angle(&self, t: f64) -> f64 {
        if t < 0.0 {
            return -self.angle(-t);
        }
        let mut a = t * self.q1;
        if self.correction.is_none() {
            return a;
        }
        for _ in 0..60 {
            let step = (self.time_of_angle(a) - t) * self.q(libm::tanh(a));
            a -= step;
            if step.abs() <= 1e-16 * a.abs().max(1.0) {
                break;
            }
        }
        a
    }

    /// `v⋆` and derivatives through fourth order at `t`.
    pub fn point(&self, t: f64) -> ProfilePoint {
        let sign = if t < 0.0 { -1.0 } else { 1.0 };
        let a = self.angle(t.abs());
        let e = exp(-2.0 * a);
        let v = (1.0 - e) / (1.0 + e);
        let complement = 2.0 * e / (1.0 + e);
        let m = 4.0 * e / ((1.0 + e) * (1.0 + e));
        let dv = m * self.q(v);
        let (_, dw) = self.well.w_dw_factored(v, m);
        let d2w = self.well.d2w(v);
        let d3w = self.well.d3w(v);
        ProfilePoint {
            t,
            angle: sign * a,
            v: sign * v,
            complement,
            dv,
            d2v: sign * dw,
            d3v: d2w * dv,
            d4v: sign * (d3w * dv * dv + d2w * dw),
        }
    }

    /// `q(tanh a)`, i.e. `da/dt` along the profile.
    pub fn angle_speed(&self, a: f64) -> f64 {
        self.q(libm::tanh(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn quartic_profile_is_tanh() {
        let h = Heteroclinic::new(DoubleWell::quartic()).unwrap();
        for t in [-9.0, -1.0, 0.0, 0.3, 4.0, 15.0] {
            let p = h.point(t);
            let x = t / core::f64::consts::SQRT_2;
            assert_abs_diff_eq!(p.v, libm::tanh(x), epsilon = 1e-15);
            let sech2 = 1.0 / (libm::cosh(x) * libm::cosh(x));
            assert_abs_diff_eq!(p.dv, sech2 / core::f64::consts::SQRT_2, epsilon = 1e-15);
        }
    }

    #[test]
    fn sextic_time_map_matches_direct_quadrature() {
        // Independent oracle: t(v) = ∫₀^v dν / √(2W(ν)) by Gauss–Legendre.
        let well = DoubleWell::sextic();
        let h = Heteroclinic::new(well.clone()).unwrap();
        let gl = crate::num::quad::GaussLegendre::new(40);
        for v in [0.2, 0.6, 0.9] {
            let direct = gl.integrate(0.0, v, |x| 1.0 / libm::sqrt(2.0 * well.w(x)));
            assert_abs_diff_eq!(h.time_of_value(v), direct, epsilon = 1e-12);
        }
    }

    proptest! {
        #[test]
        fn profile_solves_first_integral(t in -20.0f64..20.0) {
            let h = Heteroclinic::new(DoubleWell::sextic()).unwrap();
            let p = h.point(t);
            let w = h.well().w(p.v);
            prop_assert!((0.5 * p.dv * p.dv - w).abs() <= 1e-14 * (1.0 + w));
            prop_assert!((p.d2v - h.well().dw(p.v)).abs() < 1e-13);
            let q = h.point(-t);
            prop_assert_eq!(q.v, -p.v);
            prop_assert_eq!(q.dv, p.dv);
        }
    }
}
