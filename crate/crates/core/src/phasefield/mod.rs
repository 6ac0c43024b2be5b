//! The approximate solution `ṽ` around `Σ_ε`, the fourth-order residual
//! `F`, its derivatives, and the projection of the residual on `v⋆′`.

mod ansatz;
mod cutoff;
mod gamma;
mod operator;
mod orders;
mod projection;

pub use ansatz::{
    assemble_global_v, assemble_vtilde, assemble_with, sample_profile, Ansatz, ProfileColumns,
};
pub use cutoff::{build_cutoffs, bump, CutoffSet};
pub use gamma::{evaluate_gamma, GammaReport};
pub use operator::{evaluate_f, evaluate_f_prime, evaluate_f_second, PhaseOperator};
pub use orders::{
    linear_response, residual_orders, residual_sample, LinearResponse, ResidualOrders,
    ResidualSample,
};
pub use projection::{project_residual, ProjectionCurve};
