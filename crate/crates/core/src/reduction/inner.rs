//! The inner operator `𝓛_ε = −Δ_{Σ_ε} − ∂_tt + W″(v⋆(t))` on a `θ₁ × t`
//! grid and its solution operator on fields orthogonal to `v⋆′`.

use crate::geometry::TorusShape;
use crate::grid::{FermiGrid, GridField, T_STENCIL_HALF};
use crate::num::fd::{Closure, Stencil};
use crate::num::fourier::ThetaCollocation;
use crate::num::linalg::symmetric_eigenvalues;
use crate::num::math::{sqrt, TAU};
use crate::num::quad::simpson_weights;
use crate::profile::ProfileTable;
use crate::{Error, Result};
use alloc::format;
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector, Dyn, LU};

/// Threshold below which an eigenvalue counts as a kernel direction.
pub const KERNEL_TOLERANCE: f64 = 1e-6;

/// Largest relative overlap `|∫f v⋆′ dt|` a right-hand side may have.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-8;

/// Largest tensor grid for which the full spectrum is computed densely.
const FULL_SPECTRUM_LIMIT: usize = 3000;

/// Tensor discretization of `𝓛_ε`.
///
/// In `θ₁` the surface Laplacian is the Galerkin pencil `(K, W)` with
/// `K = D₁ᵀ diag(ρ/r) D₁`, `W = diag(rρ)` (times the node spacing); its
/// `W`-orthonormal eigenvectors diagonalize the `θ₁` part so that the
/// operator splits into `t` problems `−∂_tt + W″(v⋆) + ε²λ_j`. Each is
/// solved with the constraint `∫U v⋆′ dt = 0` by a bordered LU.
#[derive(Debug, Clone)]
pub struct InnerOperator {
    pub eps: f64,
    pub theta: Vec<f64>,
    pub t: Vec<f64>,
    pub h: f64,
    /// Eigenvalues `λ_j` of `−Δ_Σ` on the `θ₁` nodes, ascending.
    pub lambda: Vec<f64>,
    /// Whether eigenvector `j` is even under `θ₁ ↦ −θ₁`.
    pub even_mode: Vec<bool>,
    /// `v⋆′` on the `t` nodes.
    pub dv: Vec<f64>,
    /// `W″(v⋆)` on the `t` nodes.
    pub potential: Vec<f64>,
    basis: DMatrix<f64>,
    theta_weights: Vec<f64>,
    theta_op: DMatrix<f64>,
    theta_sym: DMatrix<f64>,
    t_op: DMatrix<f64>,
    t_weights: Vec<f64>,
    kernel_norm: f64,
    factors: Vec<LU<f64, Dyn, Dyn>>,
}

/// Result of [`solve_inner`].
#[derive(Debug, Clone, PartialEq)]
pub struct InnerSolution {
    pub u: GridField,
    /// `sup|P𝓛U − f| / sup|f|` (or with `𝓛²` in squared mode), where `P`
    /// removes the `v⋆′` component absorbed by the constraint multiplier.
    pub residual: f64,
    /// Relative overlap of `U` with `v⋆′`, worst over `θ₁`.
    pub orthogonality: f64,
    /// Relative overlap of the right-hand side with `v⋆′`.
    pub rhs_overlap: f64,
}

/// Low end of the spectrum and the kernel direction.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelReport {
    /// Two smallest eigenvalues of `−∂_tt + W″(v⋆)`.
    pub mu: [f64; 2],
    /// Number of tensor eigenvalues `μ_k + ε²λ_j` with modulus at most
    /// [`KERNEL_TOLERANCE`].
    pub multiplicity: usize,
    /// `|cos∠(e₀, v⋆′)|` for the lowest `t` eigenvector `e₀`.
    pub cosine: f64,
    /// Smallest positive `λ_j` among modes even in `θ₁`.
    pub lambda1_even: f64,
    /// Second smallest tensor eigenvalue in the even sector.
    pub second_even: f64,
}

fn reflect_index(i: usize, m: usize) -> usize {
    (m - i) % m
}

impl InnerOperator {
    /// Operator on the nodes of `grid`.
    pub fn for_grid(grid: &FermiGrid, profile: &ProfileTable) -> Result<Self> {
        Self::build(
            grid.eps,
            &grid.shape,
            profile,
            &grid.theta,
            grid.t.clone(),
            grid.h,
        )
    }

    fn build(
        eps: f64,
        shape: &TorusShape,
        profile: &ProfileTable,
        theta: &ThetaCollocation,
        t: Vec<f64>,
        h: f64,
    ) -> Result<Self> {
        let m = theta.len();
        let k = t.len();
        let (r, dth) = (shape.small_r(), TAU / m as f64);
        let rho: Vec<f64> = theta.nodes().iter().map(|th| shape.rho(*th)).collect();
        let theta_weights: Vec<f64> = rho.iter().map(|p| r * p * dth).collect();
        let d1 = theta.d1();
        let mut stiff = DMatrix::zeros(m, m);
        for a in 0..m {
            for b in 0..m {
                let mut s = 0.0;
                for q in 0..m {
                    s += d1[(q, a)] * (rho[q] * dth / r) * d1[(q, b)];
                }
                stiff[(a, b)] = s;
            }
        }
        stiff = 0.5 * (&stiff + stiff.transpose());
        let inv_sqrt: Vec<f64> = theta_weights.iter().map(|w| 1.0 / sqrt(*w)).collect();
        let theta_sym = DMatrix::from_fn(m, m, |a, b| inv_sqrt[a] * stiff[(a, b)] * inv_sqrt[b]);
        let theta_sym = 0.5 * (&theta_sym + theta_sym.transpose());
        let eig = theta_sym.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|a, b| eig.eigenvalues[*a].total_cmp(&eig.eigenvalues[*b]));
        let lambda: Vec<f64> = order.iter().map(|j| eig.eigenvalues[*j]).collect();
        let basis = DMatrix::from_fn(m, m, |i, j| inv_sqrt[i] * eig.eigenvectors[(i, order[j])]);
        let even_mode = (0..m)
            .map(|j| {
                let (mut plus, mut minus) = (0.0, 0.0);
                for i in 0..m {
                    let (a, b) = (basis[(i, j)], basis[(reflect_index(i, m), j)]);
                    plus += (a - b) * (a - b);
                    minus += (a + b) * (a + b);
                }
                plus < minus
            })
            .collect();
        let theta_op = DMatrix::from_fn(m, m, |a, b| stiff[(a, b)] / theta_weights[a]);

        let hc = profile.heteroclinic();
        let well = profile.well();
        let (mut dv, mut potential) = (Vec::with_capacity(k), Vec::with_capacity(k));
        for tk in &t {
            let p = hc.point(tk.abs());
            dv.push(p.dv);
            potential.push(well.d2w(p.v));
        }
        let d2 = Stencil::new(k, h, 2, T_STENCIL_HALF, Closure::ZeroExtension).to_dense();
        let mut t_op = -d2;
        for (q, w) in potential.iter().enumerate() {
            t_op[(q, q)] += w;
        }
        let t_op = 0.5 * (&t_op + t_op.transpose());
        let t_weights = simpson_weights(k, h)?;
        let kernel_norm: f64 = dv.iter().zip(&t_weights).map(|(d, w)| w * d * d).sum();
        let factors = lambda
            .iter()
            .map(|l| {
                let mut b = DMatrix::zeros(k + 1, k + 1);
                b.view_mut((0, 0), (k, k)).copy_from(&t_op);
                for q in 0..k {
                    b[(q, q)] += eps * eps * l;
                    b[(q, k)] = dv[q];
                    b[(k, q)] = t_weights[q] * dv[q];
                }
                b.lu()
            })
            .collect();
        let op = Self {
            eps,
            theta: theta.nodes().to_vec(),
            t,
            h,
            lambda,
            even_mode,
            dv,
            potential,
            basis,
            theta_weights,
            theta_op,
            theta_sym,
            t_op,
            t_weights,
            kernel_norm,
            factors,
        };
        let report = op.kernel_report();
        if report.multiplicity > 1 {
            return Err(Error::Resolution(format!(
                "{} eigenvalues below {KERNEL_TOLERANCE:e}; the t grid does not resolve the profile",
                report.multiplicity
            )));
        }
        Ok(op)
    }

    pub fn m(&self) -> usize {
        self.theta.len()
    }

    pub fn k(&self) -> usize {
        self.t.len()
    }

    fn to_matrix(&self, f: &GridField) -> DMatrix<f64> {
        assert_eq!(
            (f.m, f.k),
            (self.m(), self.k()),
            "field does not match the operator grid"
        );
        DMatrix::from_row_slice(f.m, f.k, &f.data)
    }

    fn from_matrix(&self, a: &DMatrix<f64>) -> GridField {
        let mut out = GridField::zeros(self.m(), self.k());
        for i in 0..self.m() {
            for q in 0..self.k() {
                out.data[i * self.k() + q] = a[(i, q)];
            }
        }
        out
    }

    /// `𝓛_ε u`.
    pub fn apply(&self, u: &GridField) -> GridField {
        let a = self.to_matrix(u);
        let out = (self.eps * self.eps) * (&self.theta_op * &a) + &a * self.t_op.transpose();
        self.from_matrix(&out)
    }

    /// `∫ f v⋆′ dt` for each `θ₁` node.
    pub fn overlaps(&self, f: &GridField) -> Vec<f64> {
        (0..f.m)
            .map(|i| {
                f.row(i)
                    .iter()
                    .zip(&self.dv)
                    .zip(&self.t_weights)
                    .map(|((a, b), w)| a * b * w)
                    .sum()
            })
            .collect()
    }

    /// Worst `|∫f v⋆′ dt| / (‖v⋆′‖ max_θ ‖f‖)` over the `θ₁` nodes, with
    /// `L²(dt)` norms.
    pub fn relative_overlap(&self, f: &GridField) -> f64 {
        let norm = (0..f.m)
            .map(|i| {
                sqrt(
                    f.row(i)
                        .iter()
                        .zip(&self.t_weights)
                        .map(|(a, w)| w * a * a)
                        .sum::<f64>(),
                )
            })
            .fold(0.0, f64::max);
        if norm == 0.0 {
            return 0.0;
        }
        let worst = self.overlaps(f).iter().fold(0.0_f64, |m, o| m.max(o.abs()));
        worst / (sqrt(self.kernel_norm) * norm)
    }

    /// `f − (∫f v⋆′/∫v⋆′²) v⋆′` on each `θ₁` row.
    pub fn project(&self, f: &GridField) -> GridField {
        let mut out = f.clone();
        for (i, o) in self.overlaps(f).iter().enumerate() {
            let c = o / self.kernel_norm;
            for q in 0..self.k() {
                out.data[i * self.k() + q] -= c * self.dv[q];
            }
        }
        out
    }

    fn modal_solve(&self, a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let k = self.k();
        let mut out = DMatrix::zeros(self.m(), k);
        let mut rhs = DVector::zeros(k + 1);
        for (j, lu) in self.factors.iter().enumerate() {
            for q in 0..k {
                rhs[q] = a[(j, q)];
            }
            rhs[k] = 0.0;
            let x = lu.solve(&rhs).ok_or(Error::Singular { sigma: 0.0 })?;
            for q in 0..k {
                out[(j, q)] = x[q];
            }
        }
        Ok(out)
    }

    /// Solve `𝓛_ε U = f` (or `𝓛_ε² U = f`) with `∫U v⋆′ dt = 0` on every
    /// `θ₁` row.
    pub fn solve(&self, f: &GridField, squared: bool) -> Result<InnerSolution> {
        let rhs_overlap = self.relative_overlap(f);
        if rhs_overlap > ORTHOGONALITY_TOLERANCE {
            return Err(Error::NonOrthogonal {
                overlap: rhs_overlap,
            });
        }
        let w = DMatrix::from_diagonal(&DVector::from_vec(self.theta_weights.clone()));
        let modal = self.basis.transpose() * w * self.to_matrix(f);
        let mut sol = self.modal_solve(&modal)?;
        if squared {
            sol = self.modal_solve(&sol)?;
        }
        let u = self.from_matrix(&(&self.basis * sol));
        let mut image = self.apply(&u);
        if squared {
            image = self.apply(&image);
        }
        let scale = f.max_abs();
        let diff = self.project(&image).sub(f).max_abs();
        Ok(InnerSolution {
            residual: if scale > 0.0 { diff / scale } else { diff },
            orthogonality: self.relative_overlap(&u),
            rhs_overlap,
            u,
        })
    }

    /// Ascending eigenvalues of `−∂_tt + W″(v⋆)` on the `t` nodes.
    pub fn t_spectrum(&self) -> Vec<f64> {
        symmetric_eigenvalues(&self.t_op)
    }

    /// Outer sums `μ_k + ε²λ_j`, ascending.
    pub fn separable_spectrum(&self) -> Vec<f64> {
        let mu = self.t_spectrum();
        let e2 = self.eps * self.eps;
        let mut out: Vec<f64> = self
            .lambda
            .iter()
            .flat_map(|l| mu.iter().map(move |m| m + e2 * l))
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }

    /// Eigenvalues of the assembled tensor operator, which is similar to
    /// `ε² W^{-1/2}KW^{-1/2} ⊗ I + I ⊗ B`. Only for small grids.
    pub fn full_spectrum(&self) -> Result<Vec<f64>> {
        let (m, k) = (self.m(), self.k());
        if m * k > FULL_SPECTRUM_LIMIT {
            return Err(Error::param(
                "grid",
                format!("{m}×{k} nodes exceed the dense spectrum limit {FULL_SPECTRUM_LIMIT}"),
            ));
        }
        let e2 = self.eps * self.eps;
        let n = m * k;
        let mut a = DMatrix::zeros(n, n);
        for i in 0..m {
            for j in 0..m {
                let s = e2 * self.theta_sym[(i, j)];
                if s != 0.0 {
                    for q in 0..k {
                        a[(i * k + q, j * k + q)] += s;
                    }
                }
            }
            for p in 0..k {
                for q in 0..k {
                    a[(i * k + p, i * k + q)] += self.t_op[(p, q)];
                }
            }
        }
        Ok(symmetric_eigenvalues(&a))
    }

    pub fn kernel_report(&self) -> KernelReport {
        let eig = self.t_op.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..self.k()).collect();
        order.sort_by(|a, b| eig.eigenvalues[*a].total_cmp(&eig.eigenvalues[*b]));
        let mu = [eig.eigenvalues[order[0]], eig.eigenvalues[order[1]]];
        let e0 = eig.eigenvectors.column(order[0]);
        let dv = DVector::from_vec(self.dv.clone());
        let cosine = (e0.dot(&dv) / (e0.norm() * dv.norm())).abs();
        let e2 = self.eps * self.eps;
        let mut multiplicity = 0;
        for l in &self.lambda {
            for q in &order {
                if (eig.eigenvalues[*q] + e2 * l).abs() <= KERNEL_TOLERANCE {
                    multiplicity += 1;
                }
            }
        }
        let lambda1_even = self
            .lambda
            .iter()
            .zip(&self.even_mode)
            .filter(|(l, e)| **e && **l > KERNEL_TOLERANCE)
            .map(|(l, _)| *l)
            .fold(f64::INFINITY, f64::min);
        let mut even: Vec<f64> = self
            .lambda
            .iter()
            .zip(&self.even_mode)
            .filter(|(_, e)| **e)
            .flat_map(|(l, _)| mu.iter().map(move |m| m + e2 * l))
            .collect();
        even.sort_by(f64::total_cmp);
        KernelReport {
            mu,
            multiplicity,
            cosine,
            lambda1_even,
            second_even: even.get(1).copied().unwrap_or(f64::INFINITY),
        }
    }

    /// `(θ, t) ↦ (θ, −t)` splitting: sup of the part with the opposite
    /// parity to `parity` (`+1` even, `−1` odd).
    pub fn parity_defect(u: &GridField, parity: f64) -> f64 {
        let r = u.reflect_t();
        u.zip(&r, |a, b| 0.5 * (a - parity * b)).max_abs()
    }
}

/// `𝓛_ε` on a fresh uniform grid of `t_nodes` points on `[−T, T]` and
/// `theta_nodes` collocation nodes.
pub fn assemble_inner(
    eps: f64,
    shape: &TorusShape,
    profile: &ProfileTable,
    theta_nodes: usize,
    t_nodes: usize,
    half_width: f64,
) -> Result<InnerOperator> {
    if theta_nodes < 3 || theta_nodes % 2 == 0 {
        return Err(Error::param("theta_nodes", "must be odd and at least 3"));
    }
    if t_nodes % 2 == 0 || t_nodes < 2 * T_STENCIL_HALF + 1 {
        return Err(Error::param("t_nodes", "must be odd and cover the stencil"));
    }
    if !(half_width > 0.0) {
        return Err(Error::param("half_width", "must be positive"));
    }
    let h = 2.0 * half_width / (t_nodes - 1) as f64;
    let mid = (t_nodes / 2) as i64;
    let t = (0..t_nodes as i64).map(|i| (i - mid) as f64 * h).collect();
    InnerOperator::build(
        eps,
        shape,
        profile,
        &ThetaCollocation::new(theta_nodes),
        t,
        h,
    )
}

/// Solve `𝓛_ε U = f` or `𝓛_ε² U = f` on fields orthogonal to `v⋆′`.
pub fn solve_inner(op: &InnerOperator, f: &GridField, squared: bool) -> Result<InnerSolution> {
    op.solve(f, squared)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::DoubleWell;

    fn small() -> InnerOperator {
        let p = ProfileTable::default_for(DoubleWell::quartic()).unwrap();
        assemble_inner(0.1, &TorusShape::clifford(), &p, 9, 161, 8.0).unwrap()
    }

    #[test]
    fn zero_maps_to_zero() {
        let op = small();
        let s = op.solve(&GridField::zeros(op.m(), op.k()), true).unwrap();
        assert_eq!(s.u.max_abs(), 0.0);
    }

    #[test]
    fn constants_in_theta_have_zero_surface_eigenvalue() {
        let op = small();
        assert!(op.lambda[0].abs() < 1e-12);
        assert!(op.even_mode[0]);
        assert!(op.lambda[1] > 0.1);
    }

    #[test]
    fn kernel_direction_is_rejected() {
        let op = small();
        let mut f = GridField::zeros(op.m(), op.k());
        for i in 0..op.m() {
            for q in 0..op.k() {
                f.data[i * op.k() + q] = op.dv[q];
            }
        }
        assert!(matches!(
            op.solve(&f, false),
            Err(Error::NonOrthogonal { .. })
        ));
        let pf = op.project(&f);
        assert!(op.relative_overlap(&pf) < 1e-14);
    }
}
