use crate::num::math::{exp, ln_1p};
use crate::{Error, Result};
use alloc::format;

/// `ψ_δ(t) = (1 + eᵗ)^δ (1 + e⁻ᵗ)^δ`, evaluated as `exp(δ(|t| + 2 ln(1 + e^{−|t|})))`.
pub fn psi_weight(t: f64, delta: f64) -> f64 {
    let a = t.abs();
    exp(delta * (a + 2.0 * ln_1p(exp(-a))))
}

/// Discrete weighted sup norm `max |f(t)| ψ_δ(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedNorm {
    pub value: f64,
    pub argmax: f64,
    /// The maximum sits at an end node, so the value is set by the grid
    /// rather than by the field (typical when the field does not decay
    /// faster than `e^{−δ|t|}`).
    pub at_boundary: bool,
}

pub fn weighted_sup_norm(
    t: &[f64],
    values: &[f64],
    delta: f64,
    decay_rate: f64,
) -> Result<WeightedNorm> {
    if !(delta > 0.0 && delta < decay_rate) {
        return Err(Error::param(
            "delta",
            format!("must lie in (0, {decay_rate}), got {delta}"),
        ));
    }
    if t.len() != values.len() || t.is_empty() {
        return Err(Error::param("values", "length must match the node count"));
    }
    let mut best = (0.0, t[0], 0usize);
    for (i, (ti, fi)) in t.iter().zip(values).enumerate() {
        let w = fi.abs() * psi_weight(*ti, delta);
        if w > best.0 {
            best = (w, *ti, i);
        }
    }
    let n = t.len();
    let at_boundary = best.0 > 0.0 && (best.2 == 0 || best.2 == n - 1);
    Ok(WeightedNorm {
        value: best.0,
        argmax: best.1,
        at_boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn rejects_delta_out_of_range() {
        let t = [0.0, 1.0];
        assert!(weighted_sup_norm(&t, &[1.0, 1.0], 0.0, 1.0).is_err());
        assert!(weighted_sup_norm(&t, &[1.0, 1.0], 1.0, 1.0).is_err());
    }

    #[test]
    fn constant_field_peaks_at_the_end() {
        let t: Vec<f64> = (-100..=100).map(|i| i as f64 * 0.1).collect();
        let ones = alloc::vec![1.0; t.len()];
        let n = weighted_sup_norm(&t, &ones, 0.5, 1.0).unwrap();
        assert!(n.at_boundary);
        let zeros = alloc::vec![0.0; t.len()];
        assert_eq!(weighted_sup_norm(&t, &zeros, 0.5, 1.0).unwrap().value, 0.0);
    }

    proptest! {
        #[test]
        fn log_form_matches_direct_product(t in -30.0f64..30.0, d in 0.01f64..1.4) {
            let direct = (1.0 + t.exp()).powf(d) * (1.0 + (-t).exp()).powf(d);
            let got = psi_weight(t, d);
            prop_assert!((got - direct).abs() <= 1e-12 * direct);
            prop_assert!(got >= 1.0);
        }
    }

    #[test]
    fn weight_at_zero() {
        assert_abs_diff_eq!(psi_weight(0.0, 0.5), 2.0, epsilon = 1e-15);
    }
}
