use super::cutoff::CutoffSet;
use crate::grid::{FermiGrid, GridField};
use crate::profile::DoubleWell;

/// `Γ = (1 − χ₁)W″(v) + χ₁W″(1)` and its range on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaReport {
    pub field: GridField,
    pub min: f64,
    pub max: f64,
    pub gamma: f64,
    /// `γ² < min Γ`.
    pub bounded_below: bool,
}

/// `gamma` defaults to `0.9 √W″(1)` when `None`.
pub fn evaluate_gamma(
    grid: &FermiGrid,
    cutoffs: &CutoffSet,
    v: &GridField,
    well: &DoubleWell,
    gamma: Option<f64>,
) -> GammaReport {
    let far = well.d2w(1.0);
    let gamma = gamma.unwrap_or(0.9 * well.decay_rate());
    let mut field = v.clone();
    for i in 0..grid.m() {
        for (k, t) in grid.t.iter().enumerate() {
            let chi = cutoffs.chi(1, *t);
            let n = i * grid.k() + k;
            field.data[n] = (1.0 - chi) * well.d2w(v.data[n]) + chi * far;
        }
    }
    let min = field.data.iter().copied().fold(f64::INFINITY, f64::min);
    let max = field.data.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    GammaReport {
        field,
        min,
        max,
        gamma,
        bounded_below: gamma * gamma < min,
    }
}
