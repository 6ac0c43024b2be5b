//! Dense linear-algebra helpers on top of `nalgebra`.

use crate::{Error, Result};
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

/// Solve `A x = b` by LU with partial pivoting; a zero pivot is an error.
pub fn lu_solve(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    a.clone()
        .lu()
        .solve(b)
        .ok_or(Error::Singular { sigma: 0.0 })
}

/// Smallest singular value.
pub fn min_singular_value(a: &DMatrix<f64>) -> f64 {
    a.clone()
        .singular_values()
        .iter()
        .fold(f64::INFINITY, |m, s| m.min(*s))
}

/// Eigenvalues of the symmetric-definite pencil `(A, G)`, ascending.
///
/// `A` is symmetrized first; `G` must be positive definite.
pub fn generalized_symmetric_eigenvalues(a: &DMatrix<f64>, g: &DMatrix<f64>) -> Result<Vec<f64>> {
    let chol = g
        .clone()
        .cholesky()
        .ok_or_else(|| Error::param("gram", "matrix is not positive definite"))?;
    let l = chol.l();
    let sym = 0.5 * (a + a.transpose());
    let linv = l
        .clone()
        .try_inverse()
        .ok_or(Error::Singular { sigma: 0.0 })?;
    let c = &linv * sym * linv.transpose();
    let c = 0.5 * (&c + c.transpose());
    let mut ev: Vec<f64> = c.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Ascending eigenvalues of a symmetric matrix.
pub fn symmetric_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    let sym = 0.5 * (a + a.transpose());
    let mut ev: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Relative asymmetry `‖A − Aᵀ‖_F / ‖A‖_F`.
pub fn asymmetry(a: &DMatrix<f64>) -> f64 {
    let n = a.norm();
    if n == 0.0 {
        return 0.0;
    }
    (a - a.transpose()).norm() / n
}
