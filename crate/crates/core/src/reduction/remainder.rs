//! The remainder `R(U) = F′(ṽ)U − 𝓛_ε²U` of the linearized residual.

use crate::fermi::{Coefficients, FermiLaplacian};
use crate::grid::{FermiGrid, GridField};
use crate::num::fd::Closure;
use crate::phasefield::{assemble_vtilde, PhaseOperator};
use crate::profile::ProfileTable;
use crate::Result;

/// `R(U) = 𝓛BU + B𝓛U + B²U + W‴(ṽ)μ(ṽ)U` with
/// `𝓛 = −(∂_tt + ε²Δ_Σ) + W″(v⋆)` and `B = −D + W″(ṽ) − W″(v⋆)`, where
/// `D = Δ − (∂_tt + ε²Δ_Σ)`. Since `−Δ + W″(ṽ) = 𝓛 + B`, this equals
/// `F′(ṽ)U − 𝓛²U` with every operator discretized on the same grid.
#[derive(Debug, Clone)]
pub struct RemainderOperator<'a> {
    grid: &'a FermiGrid,
    lap: FermiLaplacian,
    closure: Closure,
    /// `W″(v⋆)`.
    base: GridField,
    /// `W″(ṽ) − W″(v⋆)`.
    shift: GridField,
    /// `W‴(ṽ)μ(ṽ)`.
    drift: GridField,
}

impl<'a> RemainderOperator<'a> {
    pub fn new(
        grid: &'a FermiGrid,
        op: &PhaseOperator<'_>,
        vtilde: &GridField,
        vstar: &GridField,
    ) -> Result<Self> {
        let well = op.well();
        let base = vstar.map(|x| well.d2w(x));
        let shift = vtilde.map(|x| well.d2w(x)).sub(&base);
        let mu = op.chemical_potential(vtilde);
        let drift = vtilde.zip(&mu, |x, m| well.d3w(x) * m);
        Ok(Self {
            grid,
            lap: FermiLaplacian::new(grid, Coefficients::Exact)?,
            closure: Closure::OneSided,
            base,
            shift,
            drift,
        })
    }

    /// `𝓛u`.
    pub fn inner(&self, u: &GridField) -> GridField {
        let flat = self.lap.apply_reference(self.grid, u, self.closure);
        self.base.mul(u).sub(&flat)
    }

    /// `Bu`.
    pub fn perturbation(&self, u: &GridField) -> GridField {
        let full = self.lap.apply(self.grid, u, self.closure);
        let flat = self.lap.apply_reference(self.grid, u, self.closure);
        self.shift.mul(u).sub(&full.sub(&flat))
    }

    pub fn apply(&self, u: &GridField) -> GridField {
        let bu = self.perturbation(u);
        let lu = self.inner(u);
        self.inner(&bu)
            .add(&self.perturbation(&lu))
            .add(&self.perturbation(&bu))
            .add(&self.drift.mul(u))
    }
}

/// `R(U)` around `ṽ_{ε,φ}` on `grid`.
pub fn evaluate_r(grid: &FermiGrid, profile: &ProfileTable, u: &GridField) -> Result<GridField> {
    let op = PhaseOperator::new(grid, profile.well().clone())?;
    let ansatz = assemble_vtilde(grid, profile);
    Ok(RemainderOperator::new(grid, &op, &ansatz.total, &ansatz.v_star)?.apply(u))
}
