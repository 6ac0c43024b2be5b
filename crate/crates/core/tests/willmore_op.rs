use clifford_phase_core::geometry::{surface_integral, CircleField, Symmetry, TorusShape};
use clifford_phase_core::willmore_op::*;
use proptest::prelude::*;
use std::f64::consts::{PI, SQRT_2, TAU};

fn clifford() -> TorusShape {
    TorusShape::clifford()
}

fn dilation() -> CircleField {
    CircleField::even(vec![1.0, SQRT_2])
}

fn translation() -> CircleField {
    CircleField::full(vec![0.0, 0.0], vec![0.0, 1.0])
}

fn terms(shape: &TorusShape, modes: usize, symmetry: Symmetry) -> Vec<OperatorMatrix> {
    (0..LTILDE_TERMS)
        .map(|t| assemble_ltilde_term(shape, modes, symmetry, t))
        .collect()
}

fn l2_inner(op: &OperatorMatrix, f: &CircleField, g: &CircleField) -> f64 {
    let a = op.norm(&f.add(g));
    let b = op.norm(&f.sub(g));
    0.25 * (a * a - b * b)
}

/// `∫(|∇f|² − |A|²f²) dσ` for `f = sin θ₁` on a torus of revolution, from the
/// principal curvatures `−1/r` and `−cos θ₁/ρ` and `dσ = rρ dθ₁ dθ₂`.
fn jacobi_form_of_sine(shape: &TorusShape) -> f64 {
    let (big_r, r) = (shape.big_r(), shape.small_r());
    let n = 4096;
    let mut s = 0.0;
    for j in 0..n {
        let th = TAU * j as f64 / n as f64;
        let rho = big_r + r * th.cos();
        let grad2 = (th.cos() / r).powi(2);
        let a2 = 1.0 / (r * r) + (th.cos() / rho).powi(2);
        s += (grad2 - a2 * th.sin().powi(2)) * r * rho;
    }
    s * TAU / n as f64 * TAU
}

#[test]
fn jacobi_operator_on_constants_multiplies_by_curvature() {
    let shape = clifford();
    let op = assemble_jacobi(&shape, 48, Symmetry::Even);
    let image = op.apply(&CircleField::constant(1.0, 48, Symmetry::Even));
    for th in [0.0, 0.7, 2.0, PI] {
        let rho = shape.big_r() + shape.small_r() * f64::cos(th);
        let a2 = 1.0 / shape.small_r().powi(2) + (th.cos() / rho).powi(2);
        assert!((image.eval(th) + a2).abs() <= 1e-10, "{th}");
    }
}

#[test]
fn jacobi_quadratic_form_matches_direct_quadrature() {
    for shape in [clifford(), TorusShape::with_ratio(1.8).unwrap()] {
        let op = assemble_jacobi(&shape, 16, Symmetry::Full);
        let f = translation().with_modes(16);
        let image = op.apply(&f);
        let matrix_form = l2_inner(&op, &image, &f);
        let direct = jacobi_form_of_sine(&shape);
        assert!(
            (matrix_form - direct).abs() <= 1e-9 * direct.abs().max(1.0),
            "{matrix_form} {direct}"
        );
    }
}

#[test]
fn assemblies_are_self_adjoint() {
    for shape in [clifford(), TorusShape::with_ratio(1.8).unwrap()] {
        for symmetry in [Symmetry::Even, Symmetry::Full] {
            assert!(assemble_jacobi(&shape, 24, symmetry).self_adjointness() <= 1e-8);
            assert!(assemble_ltilde(&shape, 24, symmetry).self_adjointness() <= 1e-8);
        }
    }
}

#[test]
fn even_fields_stay_even() {
    let op = assemble_ltilde(&clifford(), 24, Symmetry::Full);
    assert!(op.off_block_energy() <= 1e-12);
}

#[test]
fn conformal_directions_are_in_the_kernel() {
    let shape = clifford();
    let full = assemble_ltilde(&shape, 32, Symmetry::Full);
    let r = full.kernel_residual(&terms(&shape, 32, Symmetry::Full), &translation());
    assert!(r.relative <= 1e-6, "{r:?}");
    let even = assemble_ltilde(&shape, 32, Symmetry::Even);
    let r = even.kernel_residual(&terms(&shape, 32, Symmetry::Even), &dilation());
    assert!(r.relative <= 1e-6, "{r:?}");
}

#[test]
fn kernel_is_specific_to_the_clifford_ratio() {
    let shape = TorusShape::with_ratio(1.8).unwrap();
    let full = assemble_ltilde(&shape, 32, Symmetry::Full);
    let r = full.kernel_residual(&terms(&shape, 32, Symmetry::Full), &translation());
    assert!(r.relative >= 1e-2, "{r:?}");
    let even = assemble_ltilde(&shape, 32, Symmetry::Even);
    let r = even.kernel_residual(&terms(&shape, 32, Symmetry::Even), &dilation());
    assert!(r.relative >= 1e-2, "{r:?}");
}

#[test]
fn termwise_and_assembled_operators_agree() {
    let shape = clifford();
    let modes = 12;
    let op = assemble_ltilde(&shape, modes, Symmetry::Even);
    let parts = terms(&shape, modes, Symmetry::Even);
    let mut state = 0x2545_f491_u64;
    for _ in 0..10 {
        let coeffs: Vec<f64> = (0..=modes)
            .map(|k| {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                ((state >> 11) as f64 / (1u64 << 53) as f64 - 0.5) / (1.0 + (k * k) as f64)
            })
            .collect();
        let f = CircleField::even(coeffs);
        let sum = parts
            .iter()
            .fold(CircleField::zeros(modes, Symmetry::Even), |acc, t| {
                acc.add(&t.apply(&f))
            });
        let whole = op.apply(&f);
        assert!(whole.sub(&sum).max_abs() <= 1e-9 * whole.max_abs().max(1.0));
    }
}

#[test]
fn bordered_solve_of_zero_data() {
    let sol = solve_extended(
        &clifford(),
        16,
        &CircleField::zeros(16, Symmetry::Even),
        0.0,
    )
    .unwrap();
    assert!(sol.phi.max_abs() <= 1e-14);
    assert!(sol.lambda.abs() <= 1e-14);
}

#[test]
fn bordered_solve_recovers_a_manufactured_pair() {
    let shape = clifford();
    let modes = 24;
    let area = 4.0 * SQRT_2 * PI * PI;
    let raw = CircleField::even(vec![0.0, 0.0, 1.0]);
    let avg = surface_integral(&shape, &raw) / area;
    let exact = raw
        .sub(&CircleField::constant(avg, 0, Symmetry::Even))
        .with_modes(modes);
    let op = assemble_ltilde(&shape, modes, Symmetry::Even);
    let f = op
        .apply(&exact)
        .add(&CircleField::constant(0.3, modes, Symmetry::Even));
    let sol = solve_with(&op, &shape, &f, 0.0).unwrap();
    assert!(sol.phi.sub(&exact).max_abs() <= 1e-8);
    assert!((sol.lambda - 0.3).abs() <= 1e-8);
    assert!(sol.equation_residual <= 1e-9);
    assert!(sol.constraint_residual <= 1e-9);
}

#[test]
fn bordered_solve_with_unit_mass() {
    let shape = clifford();
    let sol = solve_extended(&shape, 24, &CircleField::zeros(24, Symmetry::Even), 1.0).unwrap();
    assert!(sol.equation_residual <= 1e-9);
    assert!(sol.constraint_residual <= 1e-9);
    let area = 4.0 * SQRT_2 * PI * PI;
    assert!((sol.phi.cos_coeffs()[0] - 1.0 / area).abs() <= 0.5 / area);
}

#[test]
fn odd_data_are_refused_by_the_bordered_solve() {
    let f = CircleField::full(vec![0.0, 1.0], vec![0.0, 1.0]);
    assert!(solve_extended(&clifford(), 8, &f, 0.0).is_err());
}

#[test]
fn clifford_spectrum_has_conformal_zeros() {
    let rep = spectrum_report(&clifford(), 32, Symmetry::Full).unwrap();
    assert!(rep.near_zero(1e-6) >= 2, "{:?}", &rep.eigenvalues[..4]);
    assert!(rep.max_imaginary <= 1e-10);
    assert!(rep.self_adjointness <= 1e-8);
}

#[test]
fn bordered_system_stays_nondegenerate_under_refinement() {
    let coarse = spectrum_report(&clifford(), 32, Symmetry::Even).unwrap();
    let fine = spectrum_report(&clifford(), 64, Symmetry::Even).unwrap();
    assert!(coarse.bordered_sigma_min > 0.0);
    let drift =
        (fine.bordered_sigma_min - coarse.bordered_sigma_min).abs() / coarse.bordered_sigma_min;
    assert!(
        drift <= 0.01,
        "{} {}",
        coarse.bordered_sigma_min,
        fine.bordered_sigma_min
    );
}

#[test]
fn low_eigenvalues_converge_under_mode_doubling() {
    let coarse = spectrum_report(&clifford(), 24, Symmetry::Even).unwrap();
    let fine = spectrum_report(&clifford(), 48, Symmetry::Even).unwrap();
    for (a, b) in coarse.eigenvalues.iter().zip(&fine.eigenvalues).take(6) {
        assert!((a - b).abs() <= 1e-6 * b.abs().max(1.0), "{a} {b}");
    }
}

proptest! {
    #[test]
    fn weak_form_is_symmetric(
        a in prop::collection::vec(-1.0f64..1.0, 9),
        b in prop::collection::vec(-1.0f64..1.0, 9),
    ) {
        let op = assemble_ltilde(&clifford(), 8, Symmetry::Even);
        let (f, g) = (CircleField::even(a), CircleField::even(b));
        let lhs = l2_inner(&op, &op.apply(&f), &g);
        let rhs = l2_inner(&op, &f, &op.apply(&g));
        let scale = op.norm(&op.apply(&f)) * op.norm(&g) + op.norm(&f) * op.norm(&op.apply(&g));
        prop_assert!((lhs - rhs).abs() <= 1e-9 * scale.max(1.0));
    }
}
