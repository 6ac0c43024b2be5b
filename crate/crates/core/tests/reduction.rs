use clifford_phase_core::geometry::{surface_integral, CircleField, Symmetry, TorusShape};
use clifford_phase_core::grid::{FermiGrid, GridField, GridSpec};
use clifford_phase_core::num::fit::fit_power_law;
use clifford_phase_core::phasefield::{
    assemble_global_v, assemble_vtilde, build_cutoffs, PhaseOperator,
};
use clifford_phase_core::profile::{DoubleWell, ProfileTable};
use clifford_phase_core::reduction::*;
use std::f64::consts::{PI, SQRT_2};
use std::sync::OnceLock;

fn tau() -> f64 {
    0.8 * (SQRT_2 - 1.0)
}

fn quartic() -> &'static ProfileTable {
    static P: OnceLock<ProfileTable> = OnceLock::new();
    P.get_or_init(|| ProfileTable::default_for(DoubleWell::quartic()).unwrap())
}

fn clifford() -> TorusShape {
    TorusShape::clifford()
}

fn grid(eps: f64, phi: CircleField) -> FermiGrid {
    FermiGrid::new(clifford(), eps, tau(), phi, GridSpec::default()).unwrap()
}

fn small_inner(eps: f64) -> InnerOperator {
    assemble_inner(eps, &clifford(), quartic(), 9, 101, 8.0).unwrap()
}

/// Smooth field decaying in `t` with both parities and several `θ₁` modes.
fn bump_field(op: &InnerOperator) -> GridField {
    let mut f = GridField::zeros(op.m(), op.k());
    for (i, th) in op.theta.iter().enumerate() {
        for (k, t) in op.t.iter().enumerate() {
            let g = (-t * t / 2.0).exp();
            f.data[i * op.k() + k] = g * (1.0 + 0.4 * th.cos() - 0.2 * (2.0 * th).sin())
                + 0.3 * t * g * (3.0 * th).cos();
        }
    }
    f
}

#[test]
fn transverse_spectrum_is_poschl_teller() {
    let op = assemble_inner(0.05, &clifford(), quartic(), 3, 1001, 20.0).unwrap();
    let mu = op.t_spectrum();
    assert!(mu[0].abs() <= 1e-4, "{}", mu[0]);
    assert!((mu[1] - 1.5).abs() <= 1e-4, "{}", mu[1]);
    assert!(mu[2] > 1.5 + 1e-2);
}

#[test]
fn tensor_spectrum_is_the_sum_of_factor_spectra() {
    for eps in [0.1, 0.05] {
        let op = small_inner(eps);
        let full = op.full_spectrum().unwrap();
        let sep = op.separable_spectrum();
        assert_eq!(full.len(), sep.len());
        let scale = sep.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
        let worst = full
            .iter()
            .zip(&sep)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        assert!(worst <= 1e-9 * scale, "{worst}");
    }
}

#[test]
fn dense_spectrum_is_refused_on_large_grids() {
    let op = assemble_inner(0.05, &clifford(), quartic(), 33, 201, 8.0).unwrap();
    assert!(op.full_spectrum().is_err());
}

#[test]
fn even_data_give_even_solutions() {
    let op = small_inner(0.07);
    let f = bump_field(&op);
    let even = op.project(&f.add(&f.reflect_t()).scale(0.5));
    for squared in [false, true] {
        let sol = op.solve(&even, squared).unwrap();
        assert!(InnerOperator::parity_defect(&sol.u, 1.0) <= 1e-10 * sol.u.max_abs());
    }
    let odd = op.project(&f.sub(&f.reflect_t()).scale(0.5));
    let sol = op.solve(&odd, false).unwrap();
    assert!(InnerOperator::parity_defect(&sol.u, -1.0) <= 1e-10 * sol.u.max_abs());
}

#[test]
fn manufactured_solution_round_trip() {
    for eps in [0.1, 0.05] {
        let op = assemble_inner(eps, &clifford(), quartic(), 17, 401, 10.0).unwrap();
        let exact = op.project(&bump_field(&op));
        for squared in [false, true] {
            let mut f = op.apply(&exact);
            if squared {
                f = op.apply(&f);
            }
            let f = op.project(&f);
            let sol = op.solve(&f, squared).unwrap();
            let err = sol.u.sub(&exact).max_abs() / exact.max_abs();
            assert!(err <= 1e-7, "eps {eps} squared {squared}: {err}");
            assert!(sol.residual <= 1e-9, "{}", sol.residual);
            assert!(sol.orthogonality <= 1e-10);
        }
    }
}

#[test]
fn nonorthogonal_data_are_rejected() {
    let op = small_inner(0.07);
    let f = GridField {
        m: op.m(),
        k: op.k(),
        data: (0..op.m()).flat_map(|_| op.dv.clone()).collect(),
    };
    assert!(op.solve(&f, false).is_err());
    let bump = op.project(&bump_field(&op));
    assert!(op.solve(&bump.add(&f.scale(1e-3)), false).is_err());
    let base = op.solve(&bump, false).unwrap().u;
    let cleaned = op.solve(&op.project(&bump.add(&f)), false).unwrap().u;
    assert!(cleaned.sub(&base).max_abs() <= 1e-10 * base.max_abs());
}

#[test]
fn kernel_is_spanned_by_the_profile_slope() {
    let eps = 0.05;
    let op = assemble_inner(eps, &clifford(), quartic(), 33, 801, 16.0).unwrap();
    let rep = op.kernel_report();
    assert_eq!(rep.multiplicity, 1);
    assert!(rep.cosine >= 0.9999);
    assert!(rep.mu[0].abs() <= KERNEL_TOLERANCE);
    assert!(rep.second_even >= eps * eps * rep.lambda1_even * (1.0 - 0.05));
}

#[test]
fn remainder_matches_linearization_minus_squared_inner_operator() {
    let eps = 0.07;
    let phi = CircleField::even(vec![-0.02, 0.05, 0.01]);
    let g = grid(eps, phi);
    let op = PhaseOperator::new(&g, DoubleWell::quartic()).unwrap();
    let a = assemble_vtilde(&g, quartic());
    let rem = RemainderOperator::new(&g, &op, &a.total, &a.v_star).unwrap();
    let u = g.field(|th, t| (-t * t / 3.0).exp() * (1.0 + 0.5 * th.cos()));
    let lhs = rem.apply(&u);
    let rhs = op.derivative(&a.total, &u).sub(&rem.inner(&rem.inner(&u)));
    let scale = rhs.max_abs().max(lhs.max_abs());
    assert!(lhs.sub(&rhs).max_abs() <= 1e-9 * scale);
}

fn remainder_sample(eps: f64, amplitude: f64) -> (f64, f64, f64) {
    let g = grid(eps, CircleField::zeros(0, Symmetry::Even));
    let u = g.field(|th, t| amplitude * (-t * t / 2.0).exp() * (1.0 + 0.3 * th.cos()));
    let r = evaluate_r(&g, quartic(), &u).unwrap();
    let cut = build_cutoffs(&clifford(), eps, tau()).unwrap();
    let chi: Vec<f64> = g.t.iter().map(|t| cut.chi(4, *t)).collect();
    let mut masked = r.clone();
    for i in 0..g.m() {
        for (k, c) in chi.iter().enumerate() {
            masked.data[i * g.k() + k] *= c;
        }
    }
    let dv = &assemble_vtilde(&g, quartic()).profile.dv;
    let p4 = g
        .t_inner(&masked, dv)
        .iter()
        .fold(0.0_f64, |m, x| m.max(x.abs()))
        / quartic().c_star;
    let limit = g.inner_radius();
    (r.max_abs_within(&g.t, limit), u.max_abs(), p4)
}

#[test]
fn remainder_is_first_order_in_eps() {
    let eps = [0.1, 0.07, 0.05, 0.035];
    let ratio: Vec<f64> = eps
        .iter()
        .map(|e| {
            let (r, u, _) = remainder_sample(*e, 1.0);
            r / u
        })
        .collect();
    let fit = fit_power_law(&eps, &ratio);
    assert!(fit.slope >= 0.9, "{fit:?}");
}

#[test]
fn remainder_projection_is_fifth_order_for_even_fields() {
    let eps = [0.1, 0.07, 0.05, 0.035];
    let p4: Vec<f64> = eps
        .iter()
        .map(|e| remainder_sample(*e, e.powi(3)).2)
        .collect();
    let fit = fit_power_law(&eps, &p4);
    assert!(fit.slope >= 4.5, "{fit:?}");
    let scaled: Vec<f64> = eps.iter().zip(&p4).map(|(e, p)| p / e.powi(5)).collect();
    let (lo, hi) = scaled
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(a, b), x| (a.min(*x), b.max(*x)));
    assert!(hi <= 2.0 * lo, "{scaled:?}");
}

#[test]
fn unshifted_interior_volume() {
    for eps in [0.2, 0.1, 0.05] {
        let v = interior_volume(&clifford(), eps, &CircleField::zeros(4, Symmetry::Even));
        let exact = 2.0 * SQRT_2 * PI * PI / eps.powi(3);
        assert!((v - exact).abs() <= 1e-10 * exact);
    }
}

#[test]
fn constant_shift_adds_area_to_first_order() {
    let eps = 0.05;
    let c = 0.3;
    let base = interior_volume(&clifford(), eps, &CircleField::zeros(0, Symmetry::Even));
    let v = interior_volume(
        &clifford(),
        eps,
        &CircleField::constant(c, 0, Symmetry::Even),
    );
    let area = 4.0 * SQRT_2 * PI * PI;
    let quad = 2.0 * PI * c * c * (SQRT_2 / 2.0) * 2.0 * PI;
    assert!((v - base - c * area / (eps * eps) - quad / eps).abs() <= 1e-9 * v);
}

/// Volume of the region enclosed by the shifted torus in toric coordinates
/// `(s, θ, θ₂)` with Jacobian `s(R + s cos θ)`, integrated numerically in `s`
/// and `θ`.
fn toric_volume(shape: &TorusShape, eps: f64, phi: &CircleField) -> f64 {
    let (big_r, r) = (shape.big_r() / eps, shape.small_r() / eps);
    let nodes = [
        (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
        (-0.538_469_310_105_683, 0.478_628_670_499_366_5),
        (0.0, 0.568_888_888_888_888_9),
        (0.538_469_310_105_683, 0.478_628_670_499_366_5),
        (0.906_179_845_938_664, 0.236_926_885_056_189_1),
    ];
    let n = 720;
    let mut total = 0.0;
    for j in 0..n {
        let th = 2.0 * PI * j as f64 / n as f64;
        let outer = r + phi.eval(th);
        let inner: f64 = nodes
            .iter()
            .map(|(x, w)| {
                let s = 0.5 * outer * (x + 1.0);
                0.5 * outer * w * s * (big_r + s * th.cos())
            })
            .sum();
        total += inner * 2.0 * PI / n as f64;
    }
    2.0 * PI * total
}

#[test]
fn interior_volume_matches_toric_quadrature() {
    let eps = 0.2;
    let phi = CircleField::even(vec![-0.1 / (2.0 * SQRT_2), 0.1]);
    let closed = interior_volume(&clifford(), eps, &phi);
    let brute = toric_volume(&clifford(), eps, &phi);
    assert!((closed - brute).abs() <= 1e-6 * brute, "{closed} {brute}");
    let wavy = CircleField::even(vec![0.05, -0.2, 0.1, 0.03]);
    let closed = interior_volume(&clifford(), 0.1, &wavy);
    let brute = toric_volume(&clifford(), 0.1, &wavy);
    assert!((closed - brute).abs() <= 1e-10 * brute);
}

#[test]
fn quartic_profile_integral() {
    let v = profile_integral(quartic(), f64::INFINITY);
    assert!((v - PI * PI / 12.0).abs() <= 1e-8, "{v}");
    assert!(profile_integral(quartic(), 0.0) == 0.0);
    assert!(profile_integral(quartic(), 2.0) < v);
}

#[test]
fn total_mean_curvature_of_the_clifford_torus() {
    let h = total_mean_curvature(&clifford());
    assert!((h + 4.0 * SQRT_2 * PI * PI).abs() <= 1e-10);
}

fn mass_at(eps: f64) -> MassDefect {
    let g = grid(eps, CircleField::zeros(0, Symmetry::Even));
    let cut = build_cutoffs(&clifford(), eps, tau()).unwrap();
    let a = assemble_vtilde(&g, quartic());
    mass_defect(&g, quartic(), &assemble_global_v(&g, &cut, &a.total))
}

#[test]
fn mass_defect_term_stays_bounded() {
    let gs: Vec<f64> = [0.1, 0.07, 0.05]
        .iter()
        .map(|e| mass_at(*e).g_term)
        .collect();
    for g in &gs {
        assert!(g.abs() <= 5.0);
    }
}

#[test]
fn volume_residual_examples() {
    let shape = clifford();
    let area = 4.0 * SQRT_2 * PI * PI;
    let pi2 = PI * PI / 12.0;
    for eps in [0.1, 0.05] {
        let zero = CircleField::zeros(0, Symmetry::Even);
        let v = volume_residual(&shape, eps, &zero, quartic(), f64::INFINITY, 0.0);
        assert!((v - area * eps * pi2).abs() <= 1e-9);
        let c = -eps * pi2;
        let phi = CircleField::constant(c, 0, Symmetry::Even);
        assert!((surface_integral(&shape, &phi) - c * area).abs() <= 1e-10);
        let g = 0.7;
        let v = volume_residual(&shape, eps, &phi, quartic(), f64::INFINITY, g);
        assert!((v - eps * eps * g).abs() <= 1e-10);
    }
}

fn solve(eps: f64) -> ReducedState {
    solve_bifurcation(&clifford(), quartic(), eps, &BifurcationConfig::default()).unwrap()
}

fn solved() -> &'static [ReducedState] {
    static S: OnceLock<Vec<ReducedState>> = OnceLock::new();
    S.get_or_init(|| [0.07, 0.05].iter().map(|e| solve(*e)).collect())
}

#[test]
fn reduced_equation_converges() {
    for st in solved() {
        assert!(st.converged, "eps {}", st.eps);
        assert!(st.trace.len() <= 30);
        assert!(st.volume_residual.abs() <= 1e-8);
        assert!(st.inner_residual <= 1e-3);
        assert!(st.u_odd_over_eps4 <= 50.0);
        assert!(st.p4_over_eps5 <= 200.0);
        assert!(st.phi.cos_coeffs().iter().all(|c| c.is_finite()));
    }
}

#[test]
fn shift_scales_with_eps() {
    let c: Vec<f64> = solved().iter().map(|s| s.phi_sup_over_eps).collect();
    let (lo, hi) = (c[0].min(c[1]), c[0].max(c[1]));
    assert!(hi <= 2.0 * lo, "{c:?}");
}

#[test]
fn multiplier_decays_with_eps() {
    let s = solved();
    let fit = fit_power_law(
        &[s[0].eps, s[1].eps],
        &[s[0].lambda.abs(), s[1].lambda.abs()],
    );
    assert!(fit.slope >= 1.0, "{fit:?}");
}

#[test]
fn updates_contract_geometrically() {
    for st in solved() {
        let tail: Vec<f64> = st.trace.iter().skip(2).map(|r| r.update_norm).collect();
        let steps = (tail.len() - 1) as f64;
        let rate = (tail[tail.len() - 1] / tail[0]).powf(1.0 / steps);
        assert!(rate <= 0.5, "eps {} rate {rate}", st.eps);
    }
}

#[test]
fn invalid_damping_is_rejected() {
    let config = BifurcationConfig {
        omega: 0.0,
        ..Default::default()
    };
    assert!(solve_bifurcation(&clifford(), quartic(), 0.05, &config).is_err());
}
