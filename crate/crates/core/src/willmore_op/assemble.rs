use super::terms::{jacobi_pointwise, ltilde_terms_pointwise};
use crate::geometry::{jet, CircleField, GeometryJet, Symmetry, TorusShape};
use crate::num::linalg::{asymmetry, generalized_symmetric_eigenvalues};
use crate::num::math::{cos, sin, PI, TAU};
use crate::Result;
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

pub const LTILDE_TERMS: usize = 6;

/// Galerkin matrix of a circle operator.
///
/// `weak[k][l] = ∫ b_k (L b_l) dσ`, `gram[k][l] = ∫ b_k b_l dσ` and
/// `matrix = gram⁻¹ weak` maps coefficient vectors to coefficient vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub matrix: DMatrix<f64>,
    pub weak: DMatrix<f64>,
    pub gram: DMatrix<f64>,
    pub modes: usize,
    pub symmetry: Symmetry,
}

/// Basis function `index` (see [`CircleField::to_vector`]) and its first
/// four derivatives at `θ`.
pub fn basis_jet(index: usize, symmetry: Symmetry, theta: f64) -> [f64; 5] {
    let (k, is_sin) = match symmetry {
        Symmetry::Even => (index, false),
        Symmetry::Full if index == 0 => (0, false),
        Symmetry::Full => ((index + 1) / 2, index % 2 == 0),
    };
    let kf = k as f64;
    let (c, s) = (cos(kf * theta), sin(kf * theta));
    let k2 = kf * kf;
    if is_sin {
        [s, kf * c, -k2 * s, -k2 * kf * c, k2 * k2 * s]
    } else {
        [c, -kf * s, -k2 * c, k2 * kf * s, k2 * k2 * c]
    }
}

fn dimension(modes: usize, symmetry: Symmetry) -> usize {
    match symmetry {
        Symmetry::Even => modes + 1,
        Symmetry::Full => 2 * modes + 1,
    }
}

fn assemble(
    shape: &TorusShape,
    modes: usize,
    symmetry: Symmetry,
    op: impl Fn(&GeometryJet, &[f64; 5]) -> f64,
) -> OperatorMatrix {
    let dim = dimension(modes, symmetry);
    let mq = 4 * modes + 101;
    let r = shape.small_r();
    let jets: Vec<GeometryJet> = (0..mq)
        .map(|q| jet(shape, TAU * q as f64 / mq as f64))
        .collect();
    let weights: Vec<f64> = jets
        .iter()
        .map(|j| TAU / mq as f64 * TAU * r * shape.rho(j.theta1))
        .collect();
    let mut basis = DMatrix::zeros(mq, dim);
    let mut image = DMatrix::zeros(mq, dim);
    for (q, j) in jets.iter().enumerate() {
        for l in 0..dim {
            let b = basis_jet(l, symmetry, j.theta1);
            basis[(q, l)] = b[0] * weights[q];
            image[(q, l)] = op(j, &b);
        }
    }
    let values = DMatrix::from_fn(mq, dim, |q, l| basis_jet(l, symmetry, jets[q].theta1)[0]);
    let weak = basis.transpose() * image;
    let gram = basis.transpose() * values;
    let matrix = gram
        .clone()
        .cholesky()
        .expect("Gram matrix of a Fourier basis is positive definite")
        .solve(&weak);
    OperatorMatrix {
        matrix,
        weak,
        gram,
        modes,
        symmetry,
    }
}

/// `L₀ = −Δ_Σ − |A|²` on `modes` Fourier modes.
pub fn assemble_jacobi(shape: &TorusShape, modes: usize, symmetry: Symmetry) -> OperatorMatrix {
    assemble(shape, modes, symmetry, |j, f| jacobi_pointwise(shape, j, f))
}

/// The linearized Willmore operator `L̃₀`.
pub fn assemble_ltilde(shape: &TorusShape, modes: usize, symmetry: Symmetry) -> OperatorMatrix {
    assemble(shape, modes, symmetry, |j, f| {
        ltilde_terms_pointwise(shape, j, f).iter().sum()
    })
}

/// One term of `L̃₀` (index as in [`super::ltilde_terms_pointwise`]).
pub fn assemble_ltilde_term(
    shape: &TorusShape,
    modes: usize,
    symmetry: Symmetry,
    term: usize,
) -> OperatorMatrix {
    assert!(term < LTILDE_TERMS, "term index out of range");
    assemble(shape, modes, symmetry, |j, f| {
        ltilde_terms_pointwise(shape, j, f)[term]
    })
}

/// `‖Lf‖` relative to the largest of the term norms `‖T_i f‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelResidual {
    pub absolute: f64,
    pub scale: f64,
    pub relative: f64,
}

impl OperatorMatrix {
    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    fn coeffs(&self, field: &CircleField) -> DVector<f64> {
        let f = field.with_modes(self.modes);
        let v = match (self.symmetry, f.symmetry()) {
            (Symmetry::Full, Symmetry::Even) => {
                CircleField::full(f.cos_coeffs().to_vec(), f.sin_coeffs().to_vec()).to_vector()
            }
            _ => f.to_vector(),
        };
        assert_eq!(
            v.len(),
            self.dimension(),
            "field symmetry does not match the operator"
        );
        DVector::from_vec(v)
    }

    pub fn apply(&self, field: &CircleField) -> CircleField {
        let out = &self.matrix * self.coeffs(field);
        CircleField::from_vector(out.as_slice(), self.symmetry)
    }

    /// `L²(dσ)` norm of a field in this basis.
    pub fn norm(&self, field: &CircleField) -> f64 {
        let c = self.coeffs(field);
        libm::sqrt(c.dot(&(&self.gram * &c)).max(0.0))
    }

    /// Relative asymmetry of the weak form, `‖A − Aᵀ‖/‖A‖`.
    pub fn self_adjointness(&self) -> f64 {
        asymmetry(&self.weak)
    }

    /// Eigenvalues of the symmetric pencil, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        generalized_symmetric_eigenvalues(&self.weak, &self.gram)
    }

    /// Largest imaginary part among the eigenvalues of the (non-symmetric)
    /// coefficient matrix.
    pub fn max_imaginary(&self) -> f64 {
        self.matrix
            .complex_eigenvalues()
            .iter()
            .fold(0.0, |m, z| m.max(z.im.abs()))
    }

    /// Energy of the coupling between cosine and sine blocks relative to
    /// the whole matrix (zero when the operator preserves evenness).
    pub fn off_block_energy(&self) -> f64 {
        if self.symmetry == Symmetry::Even {
            return 0.0;
        }
        let is_sin = |i: usize| i > 0 && i % 2 == 0;
        let mut off = 0.0;
        for i in 0..self.dimension() {
            for j in 0..self.dimension() {
                if is_sin(i) != is_sin(j) {
                    off += self.matrix[(i, j)] * self.matrix[(i, j)];
                }
            }
        }
        libm::sqrt(off) / self.matrix.norm()
    }

    /// Residual of `f` against the sum operator, normalized by the largest
    /// of the given term operators applied to `f`.
    pub fn kernel_residual(&self, terms: &[OperatorMatrix], field: &CircleField) -> KernelResidual {
        let absolute = self.norm(&self.apply(field));
        let scale = terms
            .iter()
            .map(|t| self.norm(&t.apply(field)))
            .fold(0.0, f64::max);
        KernelResidual {
            absolute,
            scale,
            relative: if scale > 0.0 {
                absolute / scale
            } else {
                absolute
            },
        }
    }
}

/// `∫ b dσ` for every basis function.
pub(crate) fn basis_integrals(
    shape: &TorusShape,
    modes: usize,
    symmetry: Symmetry,
) -> DVector<f64> {
    let dim = dimension(modes, symmetry);
    let mut s = DVector::zeros(dim);
    let scale = 4.0 * PI * PI * shape.small_r();
    s[0] = scale * shape.big_r();
    if modes >= 1 {
        s[1] = scale * 0.5 * shape.small_r();
    }
    s
}
