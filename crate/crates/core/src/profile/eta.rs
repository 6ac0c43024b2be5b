use super::heteroclinic::Heteroclinic;
use crate::num::math::{ceil, exp};
use crate::num::quad::GaussLegendre;
use alloc::vec;
use alloc::vec::Vec;

/// The correction `η` and its first two derivatives on a set of nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaColumns {
    pub eta: Vec<f64>,
    pub deta: Vec<f64>,
    pub d2eta: Vec<f64>,
}

const MAX_PANEL: f64 = 0.1;

/// `η = −v⋆′ J` with `J(t) = ∫₀ᵗ K/v⋆′²` and `K(s) = −½∫ₛ^∞ τ v⋆′(τ)² dτ`.
///
/// This is the odd solution of `L⋆η = ½ t v⋆′` that decays at both ends.
/// Both integrals run in the angle variable `a` (`v⋆ = tanh a`), where the
/// growth of `1/v⋆′²` and the decay of `K` are explicit powers of `cosh a`
/// and cancel inside one bounded integrand.
pub(crate) fn eta_on_times(h: &Heteroclinic, times: &[f64]) -> EtaColumns {
    let mut abs: Vec<f64> = times.iter().map(|t| t.abs()).collect();
    abs.push(0.0);
    abs.sort_by(f64::total_cmp);
    abs.dedup();
    let n = abs.len();
    let angles: Vec<f64> = abs.iter().map(|t| h.angle(*t)).collect();

    let sech2 = |a: f64| {
        let e = exp(-2.0 * a);
        4.0 * e / ((1.0 + e) * (1.0 + e))
    };
    // Integrand of K in the angle variable: t(a) sech⁴a q(tanh a).
    let kk = |a: f64| {
        let s = sech2(a);
        h.time_of_angle(a) * s * s * h.angle_speed(a)
    };
    let gl = GaussLegendre::new(8);
    let panels = |lo: f64, hi: f64, f: &dyn Fn(f64) -> f64| -> f64 {
        let pieces = (ceil((hi - lo) / MAX_PANEL) as usize).max(1);
        let w = (hi - lo) / pieces as f64;
        (0..pieces)
            .map(|p| gl.integrate(lo + p as f64 * w, lo + (p + 1) as f64 * w, f))
            .sum()
    };

    let a_end = angles[n - 1];
    let tail: f64 = (0..400)
        .map(|p| {
            let lo = a_end + p as f64 * MAX_PANEL;
            gl.integrate(lo, lo + MAX_PANEL, kk)
        })
        .sum();
    let mut k = vec![0.0; n];
    k[n - 1] = -0.5 * tail;
    for i in (0..n - 1).rev() {
        k[i] = k[i + 1] - 0.5 * panels(angles[i], angles[i + 1], &kk);
    }

    let mut j = vec![0.0; n];
    for i in 0..n - 1 {
        let (lo, hi, k_hi) = (angles[i], angles[i + 1], k[i + 1]);
        let integrand = |b: f64| {
            let kb = k_hi - 0.5 * panels(b, hi, &kk);
            let s = sech2(b);
            let q = h.angle_speed(b);
            kb / (s * s * q * q * q)
        };
        j[i + 1] = j[i] + panels(lo, hi, &integrand);
    }

    let mut out = EtaColumns {
        eta: Vec::with_capacity(times.len()),
        deta: Vec::with_capacity(times.len()),
        d2eta: Vec::with_capacity(times.len()),
    };
    for t in times {
        let i = abs.partition_point(|x| *x < t.abs());
        let p = h.point(t.abs());
        let eta = -p.dv * j[i];
        let deta = -p.d2v * j[i] - k[i] / p.dv;
        let d2eta = h.well().d2w(p.v) * eta - 0.5 * t.abs() * p.dv;
        let sign = if *t < 0.0 { -1.0 } else { 1.0 };
        out.eta.push(sign * eta);
        out.deta.push(deta);
        out.d2eta.push(sign * d2eta);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::DoubleWell;
    use approx::assert_abs_diff_eq;

    #[test]
    fn eta_is_odd_and_vanishes_at_zero() {
        let h = Heteroclinic::new(DoubleWell::quartic()).unwrap();
        let ts = [-3.0, -0.5, 0.0, 0.5, 3.0];
        let e = eta_on_times(&h, &ts);
        assert_eq!(e.eta[2], 0.0);
        assert_eq!(e.eta[0], -e.eta[4]);
        assert_eq!(e.deta[1], e.deta[3]);
    }

    #[test]
    fn eta_satisfies_its_ode_by_finite_differences() {
        // L⋆η = ½ t v⋆′ checked with a centered difference on a fine step.
        for well in [DoubleWell::quartic(), DoubleWell::sextic()] {
            let h = Heteroclinic::new(well.clone()).unwrap();
            let step = 1e-2;
            for t0 in [0.7, 2.0, 5.0] {
                let ts = [t0 - 2.0 * step, t0 - step, t0, t0 + step, t0 + 2.0 * step];
                let e = eta_on_times(&h, &ts);
                let d2 = (-e.eta[0] + 16.0 * e.eta[1] - 30.0 * e.eta[2] + 16.0 * e.eta[3]
                    - e.eta[4])
                    / (12.0 * step * step);
                let p = h.point(t0);
                let lhs = -d2 + well.d2w(p.v) * e.eta[2];
                assert_abs_diff_eq!(lhs, 0.5 * t0 * p.dv, epsilon = 1e-7);
                let d1 = (e.eta[0] - 8.0 * e.eta[1] + 8.0 * e.eta[3] - e.eta[4]) / (12.0 * step);
                assert_abs_diff_eq!(d1, e.deta[2], epsilon = 1e-8);
            }
        }
    }
}
