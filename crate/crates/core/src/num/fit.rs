//! Least-squares power-law fits in log-log coordinates.

use super::math::{exp, ln, sqrt};
use alloc::vec::Vec;

/// Fit of `y ≈ C·x^slope`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerFit {
    pub slope: f64,
    pub prefactor: f64,
    /// Standard deviation of the log residuals, `sqrt(Σr²/(n−2))`.
    pub sigma: f64,
    /// Log residual of each input point against the full fit.
    pub residuals: Vec<f64>,
    /// Whether the point with the largest `x` was dropped.
    pub excluded_largest: bool,
    /// Slope of the fit over all points.
    pub full_slope: f64,
}

fn line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Plain least-squares fit of `ln y` against `ln x` over all points.
///
/// Panics if fewer than two points are given or any value is not positive.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> PowerFit {
    assert!(
        xs.len() == ys.len() && xs.len() >= 2,
        "need at least two points"
    );
    assert!(
        xs.iter().chain(ys).all(|v| *v > 0.0 && v.is_finite()),
        "power-law fit needs positive finite data"
    );
    let lx: Vec<f64> = xs.iter().map(|x| ln(*x)).collect();
    let ly: Vec<f64> = ys.iter().map(|y| ln(*y)).collect();
    let (slope, icpt) = line(&lx, &ly);
    let residuals: Vec<f64> = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| y - (icpt + slope * x))
        .collect();
    let dof = xs.len().saturating_sub(2).max(1) as f64;
    let sigma = sqrt(residuals.iter().map(|r| r * r).sum::<f64>() / dof);
    PowerFit {
        slope,
        prefactor: exp(icpt),
        sigma,
        residuals,
        excluded_largest: false,
        full_slope: slope,
    }
}

/// Power-law fit that drops the point with the largest `x` when it deviates
/// from the line through the remaining points by more than twice their
/// residual standard deviation (a deleted-residual test; the residual of a
/// point against a fit that includes it is damped by its own leverage).
pub fn fit_power_law_trimmed(xs: &[f64], ys: &[f64]) -> PowerFit {
    let full = fit_power_law(xs, ys);
    if xs.len() < 4 {
        return full;
    }
    let (imax, xmax) = xs
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bx), (i, x)| {
            if *x > bx {
                (i, *x)
            } else {
                (bi, bx)
            }
        });
    let kx: Vec<f64> = xs
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != imax)
        .map(|(_, x)| *x)
        .collect();
    let ky: Vec<f64> = ys
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != imax)
        .map(|(_, y)| *y)
        .collect();
    let mut rest = fit_power_law(&kx, &ky);
    let predicted = ln(rest.prefactor) + rest.slope * ln(xmax);
    if (ln(ys[imax]) - predicted).abs() <= 2.0 * rest.sigma {
        return full;
    }
    rest.residuals = full.residuals;
    rest.excluded_largest = true;
    rest.full_slope = full.slope;
    rest
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn exact_power_law_is_recovered() {
        let xs = [0.1, 0.07, 0.05, 0.035];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(2.5)).collect();
        let f = fit_power_law(&xs, &ys);
        assert_abs_diff_eq!(f.slope, 2.5, epsilon = 1e-12);
        assert_abs_diff_eq!(f.prefactor, 3.0, epsilon = 1e-10);
        assert!(f.sigma < 1e-12);
    }

    #[test]
    fn outlier_at_largest_x_is_dropped_only_when_clear() {
        let xs: Vec<f64> = (0..12).map(|i| 0.2 * 0.8f64.powi(i)).collect();
        let mut ys: Vec<f64> = xs
            .iter()
            .map(|x: &f64| x.powi(3) * (1.0 + 0.01 * x.sin()))
            .collect();
        ys[0] *= 20.0;
        let f = fit_power_law_trimmed(&xs, &ys);
        assert!(f.excluded_largest);
        assert!((f.slope - 3.0).abs() < 0.05);
        let g = fit_power_law_trimmed(&xs[..4], &ys[..4]);
        assert!(g.excluded_largest);
        assert!((g.slope - 3.0).abs() < 0.05);
        // A point on the trend of noisy data is kept.
        let noisy = [
            0.1f64.powi(3) * 1.02,
            0.07f64.powi(3) * 0.97,
            0.05f64.powi(3) * 1.03,
            0.035f64.powi(3),
        ];
        let h = fit_power_law_trimmed(&[0.1, 0.07, 0.05, 0.035], &noisy);
        assert!(!h.excluded_largest);
    }

    proptest! {
        #[test]
        fn slope_is_invariant_under_rescaling(c in 0.01f64..100.0, p in -3.0f64..6.0) {
            let xs = [0.1, 0.07, 0.05, 0.035];
            let ys: Vec<f64> = xs.iter().map(|x: &f64| x.powf(p) * (1.0 + 0.1 * (10.0 * x).sin())).collect();
            let scaled: Vec<f64> = ys.iter().map(|y| c * y).collect();
            let a = fit_power_law(&xs, &ys);
            let b = fit_power_law(&xs, &scaled);
            prop_assert!((a.slope - b.slope).abs() < 1e-9);
        }
    }
}
