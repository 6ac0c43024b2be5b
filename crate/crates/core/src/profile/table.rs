use super::eta::{eta_on_times, EtaColumns};
use super::heteroclinic::Heteroclinic;
use super::well::DoubleWell;
use crate::num::fd::{Closure, Stencil};
use crate::num::math::{exp, max_abs};
use crate::num::quad::simpson_weights;
use crate::{Error, Result};
use alloc::format;
use alloc::vec::Vec;

/// `v⋆` and its derivatives (and optionally `η`) on a symmetric uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileTable {
    heteroclinic: Heteroclinic,
    pub t: Vec<f64>,
    pub spacing: f64,
    pub half_width: f64,
    pub v: Vec<f64>,
    /// `1 − |v|` without cancellation.
    pub complement: Vec<f64>,
    pub dv: Vec<f64>,
    pub d2v: Vec<f64>,
    pub d3v: Vec<f64>,
    pub d4v: Vec<f64>,
    pub eta: Option<EtaColumns>,
    pub c_star: f64,
    pub b_star: f64,
    pub d_const: f64,
    pub decay_rate: f64,
}

/// `c⋆ = ∫v⋆′²`, `b⋆ = ∫v⋆″²` and `d = −4b⋆/c⋆`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileConstants {
    pub c_star: f64,
    pub b_star: f64,
    pub d_const: f64,
}

/// Finite-difference checks of the `η` equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaResiduals {
    /// `max |L⋆η − ½ t v⋆′|`.
    pub lstar: f64,
    /// `max |L⋆²η + v⋆″|`.
    pub lstar_squared: f64,
    /// `∫ η v⋆′ dt`.
    pub orthogonality: f64,
    /// `max |η(t) + η(−t)|`.
    pub oddness: f64,
}

/// Target spacing for derivative checks; 8th-order differences at this step
/// sit well below `1e−10` while keeping roundoff amplification small.
const CHECK_SPACING: f64 = 0.025;

/// Sample `v⋆` on `node_count` nodes of `[−half_width, half_width]`.
pub fn solve_heteroclinic(
    well: DoubleWell,
    half_width: f64,
    node_count: usize,
) -> Result<ProfileTable> {
    let decay_rate = well.decay_rate();
    if !(half_width.is_finite() && half_width >= 8.0 / decay_rate * (1.0 - 1e-12)) {
        return Err(Error::param(
            "half_width",
            format!("must be at least 8/decay_rate = {}", 8.0 / decay_rate),
        ));
    }
    if node_count < 5 || node_count % 2 == 0 {
        return Err(Error::param("node_count", "must be odd and at least 5"));
    }
    let heteroclinic = Heteroclinic::new(well)?;
    let spacing = 2.0 * half_width / (node_count - 1) as f64;
    let mid = (node_count / 2) as i64;
    let t: Vec<f64> = (0..node_count as i64)
        .map(|i| (i - mid) as f64 * spacing)
        .collect();
    let pts: Vec<_> = t.iter().map(|ti| heteroclinic.point(*ti)).collect();
    let mut table = ProfileTable {
        heteroclinic,
        spacing,
        half_width,
        v: pts.iter().map(|p| p.v).collect(),
        complement: pts.iter().map(|p| p.complement).collect(),
        dv: pts.iter().map(|p| p.dv).collect(),
        d2v: pts.iter().map(|p| p.d2v).collect(),
        d3v: pts.iter().map(|p| p.d3v).collect(),
        d4v: pts.iter().map(|p| p.d4v).collect(),
        t,
        eta: None,
        c_star: 0.0,
        b_star: 0.0,
        d_const: 0.0,
        decay_rate,
    };
    let c = profile_constants(&table)?;
    table.c_star = c.c_star;
    table.b_star = c.b_star;
    table.d_const = c.d_const;
    Ok(table)
}

/// Fill the `η` columns of a profile table.
pub fn build_eta(profile: &ProfileTable) -> Result<ProfileTable> {
    if let Some(i) = profile.dv.iter().position(|d| !(*d > 0.0)) {
        return Err(Error::param(
            "profile",
            format!("v⋆′ is not positive at t = {}", profile.t[i]),
        ));
    }
    let mut out = profile.clone();
    out.eta = Some(eta_on_times(&profile.heteroclinic, &profile.t));
    Ok(out)
}

/// Composite Simpson evaluation of `c⋆`, `b⋆` and `d`.
pub fn profile_constants(profile: &ProfileTable) -> Result<ProfileConstants> {
    let w = simpson_weights(profile.t.len(), profile.spacing)?;
    let c_star: f64 = w.iter().zip(&profile.dv).map(|(w, d)| w * d * d).sum();
    let b_star: f64 = w.iter().zip(&profile.d2v).map(|(w, d)| w * d * d).sum();
    Ok(ProfileConstants {
        c_star,
        b_star,
        d_const: -4.0 * b_star / c_star,
    })
}

impl ProfileTable {
    /// Default grid: `T = max(12, 8/decay_rate)` with 4097 nodes.
    pub fn default_for(well: DoubleWell) -> Result<Self> {
        let t = (8.0 / well.decay_rate()).max(12.0);
        solve_heteroclinic(well, t, 4097)
    }

    pub fn well(&self) -> &DoubleWell {
        self.heteroclinic.well()
    }

    pub fn heteroclinic(&self) -> &Heteroclinic {
        &self.heteroclinic
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn simpson_weights(&self) -> Vec<f64> {
        simpson_weights(self.t.len(), self.spacing).expect("table has an odd node count")
    }

    /// Stride of the coarser grid used for derivative checks.
    pub fn check_stride(&self) -> usize {
        let cells = self.t.len() - 1;
        let mut best = 1;
        for s in 1..=cells {
            if cells % s == 0 && (cells / s) % 2 == 0 && s as f64 * self.spacing <= CHECK_SPACING {
                best = s;
            }
        }
        best
    }

    /// Strided copy of a column.
    pub fn coarse(&self, col: &[f64]) -> Vec<f64> {
        col.iter().step_by(self.check_stride()).copied().collect()
    }

    /// Eighth-order difference of order `deriv` on the check grid.
    pub fn coarse_derivative(&self, col: &[f64], deriv: usize) -> Vec<f64> {
        let c = self.coarse(col);
        let h = self.spacing * self.check_stride() as f64;
        Stencil::new(c.len(), h, deriv, 4, Closure::OneSided).apply(&c)
    }

    pub fn coarse_weights(&self) -> Vec<f64> {
        let n = self.coarse(&self.t).len();
        simpson_weights(n, self.spacing * self.check_stride() as f64)
            .expect("check grid has an odd node count")
    }

    /// `max |−v″ + W′(v)|` with `v″` from differences of the sampled `v`,
    /// over nodes at least four check steps from the ends.
    pub fn ode_residual(&self) -> f64 {
        let d2 = self.coarse_derivative(&self.v, 2);
        let v = self.coarse(&self.v);
        let n = v.len();
        (4..n - 4)
            .map(|i| (-d2[i] + self.well().dw(v[i])).abs())
            .fold(0.0, f64::max)
    }

    /// `max |½ v′² − W(v)|` with `v′` from differences of the sampled `v`.
    pub fn first_integral_residual(&self) -> f64 {
        let d1 = self.coarse_derivative(&self.v, 1);
        let v = self.coarse(&self.v);
        let n = v.len();
        (4..n - 4)
            .map(|i| (0.5 * d1[i] * d1[i] - self.well().w(v[i])).abs())
            .fold(0.0, f64::max)
    }

    /// `max |v(t) + v(−t)|`.
    pub fn oddness(&self) -> f64 {
        let n = self.v.len();
        (0..n)
            .map(|i| (self.v[i] + self.v[n - 1 - i]).abs())
            .fold(0.0, f64::max)
    }

    /// Smallest `C` with `1 − |v(t)| ≤ C e^{−decay_rate·|t|}` on the grid.
    pub fn decay_prefactor(&self) -> f64 {
        self.t
            .iter()
            .zip(&self.complement)
            .map(|(t, c)| c * exp(self.decay_rate * t.abs()))
            .fold(0.0, f64::max)
    }

    fn eta_columns(&self) -> Result<&EtaColumns> {
        self.eta
            .as_ref()
            .ok_or_else(|| Error::param("profile", "η columns are missing; call build_eta first"))
    }

    /// Residuals of `L⋆η = ½tv⋆′` and `L⋆²η = −v⋆″` from differences of `η`.
    pub fn eta_residuals(&self) -> Result<EtaResiduals> {
        let e = self.eta_columns()?;
        let v = self.coarse(&self.v);
        let dv = self.coarse(&self.dv);
        let d2v = self.coarse(&self.d2v);
        let t = self.coarse(&self.t);
        let eta = self.coarse(&e.eta);
        let d2eta = self.coarse_derivative(&e.eta, 2);
        let w2: Vec<f64> = v.iter().map(|x| self.well().d2w(*x)).collect();
        let l1: Vec<f64> = (0..v.len()).map(|i| -d2eta[i] + w2[i] * eta[i]).collect();
        let h = self.spacing * self.check_stride() as f64;
        let d2l1 = Stencil::new(l1.len(), h, 2, 4, Closure::OneSided).apply(&l1);
        let mut lstar = 0.0_f64;
        let mut lstar_squared = 0.0_f64;
        for i in 0..v.len() {
            lstar = lstar.max((l1[i] - 0.5 * t[i] * dv[i]).abs());
            lstar_squared = lstar_squared.max((-d2l1[i] + w2[i] * l1[i] + d2v[i]).abs());
        }
        let w = self.simpson_weights();
        let orthogonality = w
            .iter()
            .zip(&e.eta)
            .zip(&self.dv)
            .map(|((w, a), b)| w * a * b)
            .sum();
        let n = e.eta.len();
        let oddness = max_abs(
            &(0..n)
                .map(|i| e.eta[i] + e.eta[n - 1 - i])
                .collect::<Vec<_>>(),
        );
        Ok(EtaResiduals {
            lstar,
            lstar_squared,
            orthogonality,
            oddness,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rejects_bad_grids() {
        let w = DoubleWell::quartic();
        assert!(solve_heteroclinic(w.clone(), 12.0, 4096).is_err());
        assert!(solve_heteroclinic(w.clone(), 4.0, 4097).is_err());
        assert!(solve_heteroclinic(w, 12.0, 4097).is_ok());
    }

    #[test]
    fn profile_is_centred() {
        let p = ProfileTable::default_for(DoubleWell::sextic()).unwrap();
        assert_eq!(p.v[p.len() / 2], 0.0);
        assert_eq!(p.t[p.len() / 2], 0.0);
        assert_eq!(p.oddness(), 0.0);
        assert_eq!(p.check_stride(), 4);
    }

    #[test]
    fn constants_converge_under_refinement() {
        let a = solve_heteroclinic(DoubleWell::quartic(), 12.0, 1025).unwrap();
        let b = solve_heteroclinic(DoubleWell::quartic(), 12.0, 2049).unwrap();
        let exact = 2.0 * core::f64::consts::SQRT_2 / 3.0;
        assert!((b.c_star - exact).abs() <= (a.c_star - exact).abs() + 1e-15);
        assert_abs_diff_eq!(b.c_star, exact, epsilon = 1e-9);
    }
}
