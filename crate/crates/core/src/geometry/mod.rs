//! Tori of revolution: curvature jets, circle fields and the surface
//! operators used by the reduced equation.

mod field;
mod jet;
pub(crate) mod ops;
mod shape;

pub use field::{CircleField, Projected, Symmetry};
pub use jet::{jet, GeometryJet};
pub use ops::{
    covariant_forms, laplace_beltrami, project_pointwise, scalar_field, surface_integral,
    willmore_residual, CovariantForms,
};
pub use shape::TorusShape;
