//! The Jacobi operator `L₀ = −Δ_Σ − |A|²`, the linearized Willmore operator
//! `L̃₀` and the bordered system `(φ, λ) ↦ (L̃₀φ + λ, ∫φ dσ)`.

mod assemble;
mod extended;
mod terms;

pub use assemble::{
    assemble_jacobi, assemble_ltilde, assemble_ltilde_term, basis_jet, KernelResidual,
    OperatorMatrix, LTILDE_TERMS,
};
pub use extended::{solve_extended, solve_with, spectrum_report, ExtendedSolution, SpectrumReport};
pub use terms::{jacobi_pointwise, ltilde_pointwise, ltilde_terms_pointwise};
