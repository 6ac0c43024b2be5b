//! The inner linear theory around the interface, the remainder of the
//! linearized residual, volume formulas and the reduced equation for `φ`.

mod bifurcation;
mod inner;
mod remainder;
mod volume;

pub use bifurcation::{solve_bifurcation, BifurcationConfig, IterationRecord, ReducedState};
pub use inner::{
    assemble_inner, solve_inner, InnerOperator, InnerSolution, KernelReport, KERNEL_TOLERANCE,
    ORTHOGONALITY_TOLERANCE,
};
pub use remainder::{evaluate_r, RemainderOperator};
pub use volume::{
    interior_volume, mass_defect, profile_integral, total_mean_curvature, volume_residual,
    MassDefect,
};
