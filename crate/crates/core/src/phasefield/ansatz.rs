use super::cutoff::CutoffSet;
use crate::geometry::jet;
use crate::geometry::ops::{a_hessian, laplacian_from_jet};
use crate::grid::{FermiGrid, GridField};
use crate::profile::eta::eta_on_times;
use crate::profile::ProfileTable;
use alloc::vec::Vec;

/// The profile `v⋆` and the correction `η` sampled on the grid `t` nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileColumns {
    pub v: Vec<f64>,
    pub dv: Vec<f64>,
    pub d2v: Vec<f64>,
    pub eta: Vec<f64>,
}

pub fn sample_profile(profile: &ProfileTable, t: &[f64]) -> ProfileColumns {
    let h = profile.heteroclinic();
    let (mut v, mut dv, mut d2v) = (Vec::new(), Vec::new(), Vec::new());
    for tk in t {
        let p = h.point(*tk);
        v.push(p.v);
        dv.push(p.dv);
        d2v.push(p.d2v);
    }
    ProfileColumns {
        v,
        dv,
        d2v,
        eta: eta_on_times(h, t).eta,
    }
}

/// `ṽ = v⋆(t) + ε²(ψ + εLφ)(θ₁) η(t)` with
/// `ψ = H² − 2|A|² + d|∇φ|²` and
/// `Lφ = −4⟨A, ∇²φ⟩ + 2HΔφ + φ(2H|A|² − 4 trA³)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ansatz {
    pub profile: ProfileColumns,
    /// `ψ` at the `θ` nodes.
    pub psi: Vec<f64>,
    /// `Lφ` at the `θ` nodes.
    pub l_phi: Vec<f64>,
    pub v_star: GridField,
    pub correction: GridField,
    pub total: GridField,
}

pub fn assemble_vtilde(grid: &FermiGrid, profile: &ProfileTable) -> Ansatz {
    assemble_with(grid, profile, sample_profile(profile, &grid.t))
}

/// As [`assemble_vtilde`] with a precomputed profile sample.
pub fn assemble_with(grid: &FermiGrid, profile: &ProfileTable, columns: ProfileColumns) -> Ansatz {
    let eps = grid.eps;
    let r2 = grid.shape.small_r() * grid.shape.small_r();
    let mut psi = Vec::with_capacity(grid.m());
    let mut l_phi = Vec::with_capacity(grid.m());
    for (i, th) in grid.theta.nodes().iter().enumerate() {
        let j = jet(&grid.shape, *th);
        let d = grid.phi_jet[i];
        psi.push(j.h * j.h - 2.0 * j.abs_a2 + profile.d_const * d[1] * d[1] / r2);
        l_phi.push(
            -4.0 * a_hessian(&j, &d)
                + 2.0 * j.h * laplacian_from_jet(&grid.shape, &j, &d)
                + d[0] * (2.0 * j.h * j.abs_a2 - 4.0 * j.tr_a3),
        );
    }
    let mut v_star = grid.zeros();
    let mut correction = grid.zeros();
    for i in 0..grid.m() {
        let amp = eps * eps * (psi[i] + eps * l_phi[i]);
        for k in 0..grid.k() {
            v_star.data[i * grid.k() + k] = columns.v[k];
            correction.data[i * grid.k() + k] = amp * columns.eta[k];
        }
    }
    let total = v_star.add(&correction);
    Ansatz {
        profile: columns,
        psi,
        l_phi,
        v_star,
        correction,
        total,
    }
}

impl Ansatz {
    /// The same decomposition with the correction dropped: `u = v⋆(t)`.
    pub fn profile_only(&self) -> Ansatz {
        Ansatz {
            correction: self.correction.scale(0.0),
            total: self.v_star.clone(),
            ..self.clone()
        }
    }
}

/// `v = χ₅ ṽ + (1 − χ₅) ℍ`.
pub fn assemble_global_v(grid: &FermiGrid, cutoffs: &CutoffSet, vtilde: &GridField) -> GridField {
    let mut out = vtilde.clone();
    for i in 0..grid.m() {
        for (k, t) in grid.t.iter().enumerate() {
            let chi = cutoffs.chi(5, *t);
            let n = i * grid.k() + k;
            out.data[n] = chi * vtilde.data[n] + (1.0 - chi) * cutoffs.sign(*t);
        }
    }
    out
}
