use approx::assert_abs_diff_eq;
use clifford_phase_core::fermi::{
    ambient_laplacian, apply_d, apply_d_truncated, b1_covariant, b1_from_definition,
    d_remainder_study, expansion_coeffs, fermi_laplacian_exact, mean_curvature_series,
    metric_expansion_study, parallel_jet,
};
use clifford_phase_core::geometry::{jet, CircleField, Symmetry, TorusShape};
use clifford_phase_core::grid::{FermiGrid, GridSpec};
use clifford_phase_core::num::fd::Closure;
use proptest::prelude::*;
use std::f64::consts::{PI, SQRT_2};

fn tau() -> f64 {
    0.8 * (SQRT_2 - 1.0)
}

fn shapes() -> [TorusShape; 2] {
    [TorusShape::clifford(), TorusShape::new(2.0, 0.5).unwrap()]
}

/// Five separable test fields `u(θ₁, t)`.
fn suite() -> Vec<(&'static str, fn(f64, f64) -> f64)> {
    vec![
        ("gauss_cos", |th, t| (-t * t).exp() * th.cos()),
        ("kink", |_, t| (t / SQRT_2).tanh()),
        ("sech2_cos2", |th, t| {
            (1.0 / t.cosh()).powi(2) * (1.0 + 0.3 * (2.0 * th).cos())
        }),
        ("odd_sin", |th, t| t * (-0.5 * t * t).exp() * th.sin()),
        ("shifted_cos3", |th, t| {
            (-(t - 0.5) * (t - 0.5)).exp() * (3.0 * th).cos()
        }),
    ]
}

fn diff1(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

fn diff2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h))
        / (12.0 * h * h)
}

#[test]
fn log_det_derivative_is_minus_mean_curvature() {
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut uniform = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for shape in shapes() {
        let bound = 0.9 * shape.collar();
        for _ in 0..64 {
            let th = (2.0 * uniform() - 1.0) * PI;
            let z = (2.0 * uniform() - 1.0) * bound;
            let logdet = |z: f64| {
                let g = parallel_jet(&shape, th, z).unwrap().g_tilde;
                (g[0][0] * g[1][1]).ln()
            };
            let p = parallel_jet(&shape, th, z).unwrap();
            // Scale the step to the distance from the nearest focal point.
            let reach = p.g_tilde[0][0].sqrt().min(p.g_tilde[1][1].sqrt());
            let (h, step) = (p.h_tilde, 1e-3 * reach);
            assert!((0.5 * diff1(logdet, z, step) + h).abs() <= 1e-10);
        }
    }
}

#[test]
fn second_order_coefficients_match_z_differences() {
    for shape in shapes() {
        for th in [0.0, 0.4, 1.3, 2.2, 3.0, -0.9] {
            let ex = expansion_coeffs(&shape, th);
            let j = jet(&shape, th);
            let g = |z: f64, a: usize| parallel_jet(&shape, th, z).unwrap().g_tilde_inv[a][a];
            let b = |z: f64| parallel_jet(&shape, th, z).unwrap().b_tilde[0];
            let h = 1e-3;
            for a in 0..2 {
                assert_abs_diff_eq!(diff1(|z| g(z, a), 0.0, h), ex.a1[a][a], epsilon = 1e-7);
                assert_abs_diff_eq!(
                    0.5 * diff2(|z| g(z, a), 0.0, h),
                    ex.a2[a][a],
                    epsilon = 1e-6
                );
                // a₁ = 2A^{ij}.
                assert_abs_diff_eq!(ex.a1[a][a], 2.0 * j.a_up[a][a], epsilon = 1e-12);
            }
            assert_abs_diff_eq!(diff1(b, 0.0, h), ex.b1[0], epsilon = 1e-7);
            assert_abs_diff_eq!(0.5 * diff2(b, 0.0, h), ex.b2[0], epsilon = 1e-6);
            assert_eq!(ex.a1[0][1], 0.0);
            assert_eq!(ex.a2[1][0], 0.0);
        }
    }
}

#[test]
fn b1_routes_agree() {
    for shape in shapes() {
        for k in 0..40 {
            let th = -PI + k as f64 * 0.157;
            let j = jet(&shape, th);
            let (a, b) = (b1_from_definition(&j), b1_covariant(&j));
            assert!((a - b).abs() <= 1e-9);
            assert_abs_diff_eq!(a, expansion_coeffs(&shape, th).b1[0], epsilon = 1e-12);
        }
    }
}

#[test]
fn clifford_outer_equator_first_coefficient() {
    let ex = expansion_coeffs(&TorusShape::clifford(), 0.0);
    assert_abs_diff_eq!(ex.a1[0][0], -2.0, epsilon = 1e-14);
}

#[test]
fn metric_expansion_error_is_quadratic_near_zero() {
    // The leading coefficient of the remainder is a₂; at the outer equator of
    // the Clifford torus its dominant entry is 3.
    let zs: Vec<f64> = (1..=8).map(|k| 1e-4 * k as f64).collect();
    let study = metric_expansion_study(&TorusShape::clifford(), 0.0, &zs).unwrap();
    for (z, e) in zs.iter().zip(&study.errors) {
        assert!((e / (z * z) - 3.0).abs() <= 4.0 * z + 1e-6);
    }
    assert!((study.fit.slope - 2.0).abs() < 0.01);
}

#[test]
fn mean_curvature_series_converges() {
    for shape in shapes() {
        let z = 0.3 * shape.collar();
        for th in [0.0, 1.0, 2.5] {
            let exact = parallel_jet(&shape, th, z).unwrap().h_tilde;
            let kmax = jet(&shape, th).k1.abs().max(jet(&shape, th).k2.abs());
            for terms in [2, 4, 8] {
                let err = (mean_curvature_series(&shape, th, z, terms) - exact).abs();
                let q = (z * kmax).powi(terms as i32);
                assert!(err <= 2.0 * kmax * q / (1.0 - z * kmax));
            }
        }
    }
}

fn phi_even() -> CircleField {
    CircleField::even(vec![0.1, 0.5, 0.2]).with_modes(8)
}

#[test]
fn exact_laplacian_matches_ambient_differences() {
    let shape = TorusShape::clifford();
    let eps = 0.1;
    let phi = CircleField::full(vec![0.1, 0.5, 0.2], vec![0.0, -0.3, 0.1]).with_modes(8);
    let grid = FermiGrid::new(shape, eps, tau(), phi.clone(), GridSpec::default()).unwrap();
    for (name, u) in suite() {
        let lap = fermi_laplacian_exact(&grid, &grid.field(u), Closure::OneSided).unwrap();
        let mut worst = 0.0_f64;
        for i in (0..grid.m()).step_by(3) {
            let th = grid.theta.nodes()[i];
            for k in (0..grid.k()).step_by(7) {
                let t = grid.t[k];
                if t.abs() > 2.5 {
                    continue;
                }
                let oracle = ambient_laplacian(&shape, eps, &phi, u, th, t, 0.02);
                worst = worst.max((lap.at(i, k) - oracle).abs());
            }
        }
        assert!(worst <= 1e-5, "{name}: {worst:e}");
    }
}

#[test]
fn ambient_agreement_improves_with_refinement() {
    let shape = TorusShape::clifford();
    let u = |th: f64, t: f64| (-t * t).exp() * th.cos();
    let phi = phi_even();
    let mut errs = Vec::new();
    for spacing in [0.2, 0.1] {
        let spec = GridSpec {
            t_spacing: spacing,
            ..GridSpec::default()
        };
        let grid = FermiGrid::new(shape, 0.1, tau(), phi.clone(), spec).unwrap();
        let lap = fermi_laplacian_exact(&grid, &grid.field(u), Closure::OneSided).unwrap();
        let mid = grid.k() / 2;
        let th = grid.theta.nodes()[2];
        let oracle = ambient_laplacian(&shape, 0.1, &phi, u, th, grid.t[mid], 0.01);
        errs.push((lap.at(2, mid) - oracle).abs());
    }
    assert!(errs[1] < errs[0] / 50.0, "{errs:?}");
}

#[test]
fn radial_field_without_shift() {
    let shape = TorusShape::clifford();
    let eps = 0.07;
    let grid = FermiGrid::new(
        shape,
        eps,
        tau(),
        CircleField::zeros(4, Symmetry::Even),
        GridSpec::default(),
    )
    .unwrap();
    let v = |_: f64, t: f64| (t / SQRT_2).tanh();
    let dv = |t: f64| 1.0 / (SQRT_2 * (t / SQRT_2).cosh().powi(2));
    let d2v = |t: f64| -(t / SQRT_2).tanh() / (t / SQRT_2).cosh().powi(2);
    let field = grid.field(v);
    let lap = fermi_laplacian_exact(&grid, &field, Closure::OneSided).unwrap();
    let d = apply_d(&grid, &field, Closure::OneSided).unwrap();
    for i in 0..grid.m() {
        let th = grid.theta.nodes()[i];
        for k in 0..grid.k() {
            let t = grid.t[k];
            if t.abs() > 5.0 {
                continue;
            }
            let h = parallel_jet(&shape, th, eps * t).unwrap().h_tilde;
            assert_abs_diff_eq!(lap.at(i, k), d2v(t) - eps * h * dv(t), epsilon = 1e-8);
            assert_abs_diff_eq!(d.at(i, k), -eps * h * dv(t), epsilon = 1e-8);
        }
    }
}

#[test]
fn d_annihilates_constants_and_is_linear() {
    let grid = FermiGrid::new(
        TorusShape::clifford(),
        0.1,
        tau(),
        phi_even(),
        GridSpec::default(),
    )
    .unwrap();
    let one = grid.field(|_, _| 1.0);
    assert!(apply_d(&grid, &one, Closure::OneSided).unwrap().max_abs() < 1e-10);
    assert!(
        apply_d_truncated(&grid, &one, Closure::OneSided)
            .unwrap()
            .max_abs()
            < 1e-10
    );
    let (u, w) = (grid.field(suite()[0].1), grid.field(suite()[2].1));
    let lhs =
        fermi_laplacian_exact(&grid, &u.scale(2.0).add(&w.scale(-0.5)), Closure::OneSided).unwrap();
    let rhs = fermi_laplacian_exact(&grid, &u, Closure::OneSided)
        .unwrap()
        .scale(2.0)
        .add(
            &fermi_laplacian_exact(&grid, &w, Closure::OneSided)
                .unwrap()
                .scale(-0.5),
        );
    assert!(lhs.sub(&rhs).max_abs() < 1e-11);
}

#[test]
fn laplacian_commutes_with_theta_reflection() {
    let grid = FermiGrid::new(
        TorusShape::clifford(),
        0.1,
        tau(),
        phi_even(),
        GridSpec::default(),
    )
    .unwrap();
    let u = grid.field(|th, t| (-t * t).exp() * (th.cos() + 0.4 * (2.0 * th).sin()));
    let a = fermi_laplacian_exact(&grid, &u.reflect_theta(), Closure::OneSided).unwrap();
    let b = fermi_laplacian_exact(&grid, &u, Closure::OneSided)
        .unwrap()
        .reflect_theta();
    assert!(a.sub(&b).max_abs() < 1e-11);
}

#[test]
fn truncated_d_remainder_is_at_least_cubic() {
    let u = suite()[2].1;
    let study = d_remainder_study(
        &TorusShape::clifford(),
        tau(),
        &[0.1, 0.07, 0.05, 0.035],
        &phi_even(),
        GridSpec::default(),
        3.0,
        u,
    )
    .unwrap();
    assert!(study.fit.slope >= 3.0, "{:?}", study);
}

#[test]
fn collar_violation_is_rejected() {
    let spec = GridSpec {
        half_width: Some(6.0),
        ..GridSpec::default()
    };
    let phi = CircleField::zeros(4, Symmetry::Even);
    assert!(FermiGrid::new(TorusShape::clifford(), 0.1, tau(), phi, spec).is_err());
}

proptest! {
    #[test]
    fn parallel_jet_at_zero_is_the_surface(th in -PI..PI, ratio in 1.3f64..4.0) {
        let shape = TorusShape::with_ratio(ratio).unwrap();
        let p = parallel_jet(&shape, th, 0.0).unwrap();
        let j = jet(&shape, th);
        prop_assert!((p.h_tilde - j.h).abs() < 1e-13);
        prop_assert!((p.g_tilde[1][1] - j.g[1][1]).abs() < 1e-13);
    }
}
