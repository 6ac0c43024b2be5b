use super::assemble::{assemble_ltilde, basis_integrals, OperatorMatrix};
use crate::geometry::{surface_integral, CircleField, Symmetry, TorusShape};
use crate::num::linalg::min_singular_value;
use crate::{Error, Result};
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

/// Solution of `L̃₀φ + λ = f`, `∫φ dσ = m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedSolution {
    pub phi: CircleField,
    pub lambda: f64,
    /// `‖L̃₀φ + λ − f‖ / max(1, ‖f‖)` in `L²(dσ)`.
    pub equation_residual: f64,
    /// `|∫φ dσ − m|`.
    pub constraint_residual: f64,
    /// Smallest singular value of the bordered matrix.
    pub sigma_min: f64,
}

/// The symmetric bordered matrix `[[A, s], [sᵀ, 0]]` with `s_k = ∫ b_k dσ`.
pub(crate) fn bordered(op: &OperatorMatrix, shape: &TorusShape) -> DMatrix<f64> {
    let n = op.dimension();
    let s = basis_integrals(shape, op.modes, op.symmetry);
    let a = 0.5 * (&op.weak + op.weak.transpose());
    let mut b = DMatrix::zeros(n + 1, n + 1);
    b.view_mut((0, 0), (n, n)).copy_from(&a);
    for k in 0..n {
        b[(k, n)] = s[k];
        b[(n, k)] = s[k];
    }
    b
}

/// Solve the bordered system on an already assembled (even) operator.
pub fn solve_with(
    op: &OperatorMatrix,
    shape: &TorusShape,
    f: &CircleField,
    m: f64,
) -> Result<ExtendedSolution> {
    if op.symmetry != Symmetry::Even || f.symmetry() != Symmetry::Even {
        return Err(Error::param(
            "symmetry",
            "the bordered system acts on even fields",
        ));
    }
    let n = op.dimension();
    let b = bordered(op, shape);
    let sigma_min = min_singular_value(&b);
    if sigma_min <= 1e-13 * b.norm() {
        return Err(Error::Singular { sigma: sigma_min });
    }
    let fc = DVector::from_vec(f.with_modes(op.modes).to_vector());
    let gf = &op.gram * &fc;
    let mut rhs = DVector::zeros(n + 1);
    rhs.rows_mut(0, n).copy_from(&gf);
    rhs[n] = m;
    let x = b
        .lu()
        .solve(&rhs)
        .ok_or(Error::Singular { sigma: sigma_min })?;
    let phi = CircleField::even(x.rows(0, n).iter().copied().collect::<Vec<_>>());
    let lambda = x[n];
    let lhs = op
        .apply(&phi)
        .add(&CircleField::constant(lambda, op.modes, Symmetry::Even));
    let diff = lhs.sub(&f.with_modes(op.modes));
    let equation_residual = op.norm(&diff) / op.norm(f).max(1.0);
    let constraint_residual = (surface_integral(shape, &phi) - m).abs();
    Ok(ExtendedSolution {
        phi,
        lambda,
        equation_residual,
        constraint_residual,
        sigma_min,
    })
}

/// Assemble `L̃₀` in the even sector and solve the bordered system.
pub fn solve_extended(
    shape: &TorusShape,
    modes: usize,
    f: &CircleField,
    m: f64,
) -> Result<ExtendedSolution> {
    let op = assemble_ltilde(shape, modes, Symmetry::Even);
    solve_with(&op, shape, f, m)
}

/// Eigenvalues of `L̃₀` and the conditioning of the bordered system.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    pub max_imaginary: f64,
    /// Smallest singular value of the even-sector bordered matrix.
    pub bordered_sigma_min: f64,
    pub self_adjointness: f64,
}

impl SpectrumReport {
    /// Number of eigenvalues with `|μ| ≤ tol`.
    pub fn near_zero(&self, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|m| m.abs() <= tol).count()
    }
}

pub fn spectrum_report(
    shape: &TorusShape,
    modes: usize,
    symmetry: Symmetry,
) -> Result<SpectrumReport> {
    let op = assemble_ltilde(shape, modes, symmetry);
    let even = if symmetry == Symmetry::Even {
        op.clone()
    } else {
        assemble_ltilde(shape, modes, Symmetry::Even)
    };
    Ok(SpectrumReport {
        eigenvalues: op.eigenvalues()?,
        max_imaginary: op.max_imaginary(),
        bordered_sigma_min: min_singular_value(&bordered(&even, shape)),
        self_adjointness: op.self_adjointness(),
    })
}
