//! Parallel surfaces and the Laplacian in shifted Fermi coordinates.

mod ambient;
mod expansion;
mod laplacian;
mod orders;
mod parallel;

pub use ambient::ambient_laplacian;
pub use expansion::{
    b1_covariant, b1_from_definition, b1_routes, expansion_coeffs, ExpansionCoeffs,
};
pub use laplacian::{
    apply_d, apply_d_truncated, fermi_laplacian_exact, Coefficients, FermiLaplacian,
};
pub use orders::{d_remainder_study, metric_expansion_study, OrderStudy};
pub use parallel::{mean_curvature_series, parallel_jet, ParallelJet};
