use super::ansatz::Ansatz;
use crate::fermi::{Coefficients, FermiLaplacian};
use crate::grid::{FermiGrid, GridField};
use crate::num::fd::Closure;
use crate::num::quad::GaussLegendre;
use crate::profile::DoubleWell;
use crate::Result;

/// `F(u) = −Δμ + W″(u)μ` with `μ = −Δu + W′(u)`, and its first two
/// derivatives, on one grid with the exact Fermi Laplacian.
#[derive(Debug, Clone)]
pub struct PhaseOperator<'a> {
    grid: &'a FermiGrid,
    well: DoubleWell,
    lap: FermiLaplacian,
    closure: Closure,
}

impl<'a> PhaseOperator<'a> {
    pub fn new(grid: &'a FermiGrid, well: DoubleWell) -> Result<Self> {
        Ok(Self {
            grid,
            well,
            lap: FermiLaplacian::new(grid, Coefficients::Exact)?,
            closure: Closure::OneSided,
        })
    }

    pub fn grid(&self) -> &FermiGrid {
        self.grid
    }

    pub fn well(&self) -> &DoubleWell {
        &self.well
    }

    pub fn laplacian(&self, u: &GridField) -> GridField {
        self.lap.apply(self.grid, u, self.closure)
    }

    /// `μ = −Δu + W′(u)`.
    pub fn chemical_potential(&self, u: &GridField) -> GridField {
        let w = &self.well;
        u.map(|x| w.dw(x)).sub(&self.laplacian(u))
    }

    fn outer(&self, u: &GridField, mu: &GridField) -> GridField {
        let w = &self.well;
        let curv = u.zip(mu, |x, m| w.d2w(x) * m);
        curv.sub(&self.laplacian(mu))
    }

    pub fn apply(&self, u: &GridField) -> GridField {
        self.outer(u, &self.chemical_potential(u))
    }

    /// `F(ṽ)` with the `O(1)` profile balance `v⋆″ = W′(v⋆)` removed
    /// analytically before differencing.
    pub fn apply_ansatz(&self, ansatz: &Ansatz) -> GridField {
        let g = self.grid;
        let k = g.k();
        let p = &ansatz.profile;
        let mut mu = self.laplacian(&ansatz.correction).scale(-1.0);
        for i in 0..g.m() {
            for kk in 0..k {
                let n = i * k + kk;
                let (ctt, ct) = self.lap.t_coefficients(n);
                let flat = (ctt - 1.0) * p.d2v[kk] + ct * p.dv[kk];
                mu.data[n] += self.well.dw_increment(p.v[kk], ansatz.correction.data[n]) - flat;
            }
        }
        self.outer(&ansatz.total, &mu)
    }

    /// `F′(u)v = −Δ(μ′v) + W″(u)μ′v + W‴(u)vμ` with `μ′v = −Δv + W″(u)v`.
    pub fn derivative(&self, u: &GridField, v: &GridField) -> GridField {
        let w = &self.well;
        let mu = self.chemical_potential(u);
        let dmu = u.zip(v, |x, y| w.d2w(x) * y).sub(&self.laplacian(v));
        let mut out = self.outer(u, &dmu);
        for n in 0..out.data.len() {
            out.data[n] += w.d3w(u.data[n]) * v.data[n] * mu.data[n];
        }
        out
    }

    /// `F″(u)[v, w]`.
    pub fn second_derivative(&self, u: &GridField, v: &GridField, w: &GridField) -> GridField {
        let well = &self.well;
        let mu = self.chemical_potential(u);
        let lin = |x: &GridField| x.zip(u, |y, z| well.d2w(z) * y).sub(&self.laplacian(x));
        let (mv, mw) = (lin(v), lin(w));
        let mut vw = u.clone();
        for n in 0..vw.data.len() {
            vw.data[n] = well.d3w(u.data[n]) * v.data[n] * w.data[n];
        }
        let mut out = self.laplacian(&vw).scale(-1.0);
        for n in 0..out.data.len() {
            let j = well.eval(u.data[n]);
            out.data[n] += j.d4w * v.data[n] * w.data[n] * mu.data[n]
                + j.d3w * (v.data[n] * mw.data[n] + w.data[n] * mv.data[n])
                + j.d2w * vw.data[n];
        }
        out
    }

    /// `Q(w) = ∫₀¹ (1 − s) F″(u + sw)[w, w] ds = F(u + w) − F(u) − F′(u)w`,
    /// by Gauss–Legendre in `s` (exact for polynomial wells of degree ≤ 8).
    pub fn quadratic_remainder(&self, u: &GridField, w: &GridField) -> GridField {
        let gl = GaussLegendre::new(6);
        let mut out = self.grid.zeros();
        for (x, wt) in gl.nodes().iter().zip(gl.weights()) {
            let s = 0.5 * (x + 1.0);
            let us = u.add(&w.scale(s));
            let term = self.second_derivative(&us, w, w);
            out = out.add(&term.scale(0.5 * wt * (1.0 - s)));
        }
        out
    }
}

/// `F(u)` on the grid.
pub fn evaluate_f(grid: &FermiGrid, u: &GridField, well: &DoubleWell) -> Result<GridField> {
    Ok(PhaseOperator::new(grid, well.clone())?.apply(u))
}

/// `F′(u)v` on the grid.
pub fn evaluate_f_prime(
    grid: &FermiGrid,
    u: &GridField,
    v: &GridField,
    well: &DoubleWell,
) -> Result<GridField> {
    Ok(PhaseOperator::new(grid, well.clone())?.derivative(u, v))
}

/// `F″(u)[v, w]` on the grid.
pub fn evaluate_f_second(
    grid: &FermiGrid,
    u: &GridField,
    v: &GridField,
    w: &GridField,
    well: &DoubleWell,
) -> Result<GridField> {
    Ok(PhaseOperator::new(grid, well.clone())?.second_derivative(u, v, w))
}
