use crate::geometry::{CircleField, Symmetry};
use crate::grid::{FermiGrid, GridField};
use alloc::vec::Vec;

/// `q(θ₁) = ∫ F v⋆′ dt` at the `θ` nodes and as a trigonometric field.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionCurve {
    pub theta: Vec<f64>,
    pub values: Vec<f64>,
    pub field: CircleField,
}

impl ProjectionCurve {
    pub fn sup(&self) -> f64 {
        self.values.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Simpson quadrature over the full `t` extent of each `θ` row.
pub fn project_residual(
    grid: &FermiGrid,
    f: &GridField,
    dv: &[f64],
    symmetry: Symmetry,
) -> ProjectionCurve {
    let values = grid.t_inner(f, dv);
    let modes = grid.theta.max_mode();
    let field = CircleField::from_samples(&values, modes, symmetry).field;
    ProjectionCurve {
        theta: grid.theta.nodes().to_vec(),
        values,
        field,
    }
}
