//! The twelve acceptance criteria, each a list of checks with fixed
//! tolerances. Settings here do not follow the run configuration.

use crate::artifact::Check;
use clifford_phase_core::fermi::{
    ambient_laplacian, d_remainder_study, fermi_laplacian_exact, metric_expansion_study,
};
use clifford_phase_core::geometry::{
    jet, laplace_beltrami, scalar_field, willmore_residual, CircleField, Symmetry, TorusShape,
};
use clifford_phase_core::grid::{FermiGrid, GridField, GridSpec};
use clifford_phase_core::num::fd::Closure;
use clifford_phase_core::phasefield::{
    assemble_global_v, assemble_vtilde, build_cutoffs, linear_response, residual_orders,
};
use clifford_phase_core::profile::{build_eta, verify_identities, DoubleWell, ProfileTable};
use clifford_phase_core::reduction::{
    assemble_inner, interior_volume, mass_defect, profile_integral, solve_bifurcation,
    BifurcationConfig, InnerOperator,
};
use clifford_phase_core::willmore_op::{
    assemble_ltilde, assemble_ltilde_term, spectrum_report, OperatorMatrix, LTILDE_TERMS,
};
use clifford_phase_core::Result;
use serde::Serialize;
use std::f64::consts::{PI, SQRT_2, TAU};
use std::sync::OnceLock;

/// Number and short title of every criterion.
pub const CRITERIA: [(u8, &str); 12] = [
    (1, "heteroclinic exactness"),
    (2, "profile constants"),
    (3, "projection identities"),
    (4, "eta contract"),
    (5, "Willmore verification"),
    (6, "conformal kernel"),
    (7, "Fermi expansion orders"),
    (8, "residual orders"),
    (9, "projection orders"),
    (10, "inner solver"),
    (11, "volume"),
    (12, "reduction"),
];

/// The ε values of the residual and projection order fits.
pub const ORDER_EPS: [f64; 4] = [0.1, 0.07, 0.05, 0.035];
/// The ε values of the reduced solve.
pub const SOLVE_EPS: [f64; 3] = [0.1, 0.07, 0.05];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl CriterionResult {
    /// `PASS 7 Fermi expansion orders` followed by the failing check names.
    pub fn line(&self) -> String {
        let mut s = format!(
            "{} {:>2} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title
        );
        let failed: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{} = {:e} (want {})", c.name, c.value, c.condition))
            .collect();
        if !failed.is_empty() {
            s.push_str(": ");
            s.push_str(&failed.join("; "));
        }
        s
    }
}

pub fn tau() -> f64 {
    0.8 * (SQRT_2 - 1.0)
}

fn quartic() -> &'static ProfileTable {
    static P: OnceLock<ProfileTable> = OnceLock::new();
    P.get_or_init(|| ProfileTable::default_for(DoubleWell::quartic()).expect("quartic profile"))
}

fn with_eta(well: DoubleWell) -> Result<ProfileTable> {
    build_eta(&ProfileTable::default_for(well)?)
}

/// Run criterion `id` (1 to 12).
pub fn run_criterion(id: u8) -> CriterionResult {
    let (_, title) = CRITERIA[usize::from(id) - 1];
    let outcome = match id {
        1 => heteroclinic(),
        2 => constants(),
        3 => identities(),
        4 => eta_contract(),
        5 => willmore(),
        6 => conformal_kernel(),
        7 => fermi_orders(),
        8 => residual_order_fits(),
        9 => projection_orders(),
        10 => inner_solver(),
        11 => volume(),
        12 => reduction(),
        _ => unreachable!("criteria are numbered 1 to 12"),
    };
    let checks = outcome.unwrap_or_else(|e| {
        vec![Check::holds(
            "numerical failure",
            f64::NAN,
            e.to_string(),
            false,
        )]
    });
    let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
    CriterionResult {
        id,
        title,
        checks,
        passed,
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().map(|(id, _)| run_criterion(*id)).collect()
}

fn heteroclinic() -> Result<Vec<Check>> {
    let p = quartic();
    let err =
        p.t.iter()
            .zip(&p.v)
            .filter(|(t, _)| t.abs() <= 10.0)
            .map(|(t, v)| (v - (t / SQRT_2).tanh()).abs())
            .fold(0.0, f64::max);
    Ok(vec![
        Check::at_most("max |v - tanh(t/sqrt2)| on |t| <= 10", err, 1e-8),
        Check::at_most("ODE residual", p.ode_residual(), 1e-8),
    ])
}

fn constants() -> Result<Vec<Check>> {
    let p = quartic();
    Ok(vec![
        Check::within("c_star", p.c_star, 2.0 * SQRT_2 / 3.0, 1e-7),
        Check::within("b_star", p.b_star, 4.0 * SQRT_2 / 15.0, 1e-7),
        Check::within("d", p.d_const, -1.6, 1e-7),
    ])
}

fn identities() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for well in [DoubleWell::quartic(), DoubleWell::sextic()] {
        let label = well.label().to_string();
        let r = verify_identities(&with_eta(well)?)?;
        for (name, v) in [
            ("int1", r.int1),
            ("int2", r.int2),
            ("int3", r.int3),
            ("int4", r.int4),
            ("int5", r.int5),
        ] {
            checks.push(Check::at_most(format!("{label} {name}"), v, 1e-7));
        }
    }
    Ok(checks)
}

fn eta_contract() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for well in [DoubleWell::quartic(), DoubleWell::sextic()] {
        let label = well.label().to_string();
        let r = with_eta(well)?.eta_residuals()?;
        checks.push(Check::at_most(
            format!("{label} |L eta - t v'/2|"),
            r.lstar,
            1e-7,
        ));
        checks.push(Check::at_most(
            format!("{label} |L^2 eta + v''|"),
            r.lstar_squared,
            1e-6,
        ));
    }
    Ok(checks)
}

fn willmore() -> Result<Vec<Check>> {
    let clifford = TorusShape::clifford();
    let control = TorusShape::with_ratio(1.8)?;
    let h = scalar_field(&clifford, 64, |j| j.h);
    let lap_h = laplace_beltrami(&clifford, &h).field.eval(0.0);
    let j = jet(&clifford, 0.0);
    Ok(vec![
        Check::at_most(
            "Clifford residual sup (64 modes)",
            willmore_residual(&clifford, 64).field.max_abs(),
            1e-8,
        ),
        Check::at_least(
            "R/r = 1.8 residual sup",
            willmore_residual(&control, 64).field.max_abs(),
            1e-2,
        ),
        Check::within(
            "Laplace-Beltrami of H at theta = 0",
            lap_h,
            3.0 * SQRT_2 - 4.0,
            1e-8,
        ),
        Check::within(
            "H(H^2 - 2|A|^2)/2 at theta = 0",
            0.5 * j.h * (j.h * j.h - 2.0 * j.abs_a2),
            3.0 * SQRT_2 - 4.0,
            1e-8,
        ),
    ])
}

fn terms(shape: &TorusShape, modes: usize, symmetry: Symmetry) -> Vec<OperatorMatrix> {
    (0..LTILDE_TERMS)
        .map(|t| assemble_ltilde_term(shape, modes, symmetry, t))
        .collect()
}

fn conformal_kernel() -> Result<Vec<Check>> {
    let shape = TorusShape::clifford();
    let modes = 32;
    let full = assemble_ltilde(&shape, modes, Symmetry::Full);
    let translation = CircleField::full(vec![0.0, 0.0], vec![0.0, 1.0]);
    let t = full.kernel_residual(&terms(&shape, modes, Symmetry::Full), &translation);
    let even = assemble_ltilde(&shape, modes, Symmetry::Even);
    let dilation = CircleField::even(vec![1.0, SQRT_2]);
    let d = even.kernel_residual(&terms(&shape, modes, Symmetry::Even), &dilation);
    let coarse = spectrum_report(&shape, 32, Symmetry::Even)?;
    let fine = spectrum_report(&shape, 64, Symmetry::Even)?;
    let drift =
        (fine.bordered_sigma_min - coarse.bordered_sigma_min).abs() / coarse.bordered_sigma_min;
    Ok(vec![
        Check::at_most("relative |L sin theta|", t.relative, 1e-6),
        Check::at_most("relative |L (1 + sqrt2 cos theta)|", d.relative, 1e-6),
        Check::holds(
            "sigma_0 (32 modes)",
            coarse.bordered_sigma_min,
            "> 0",
            coarse.bordered_sigma_min > 0.0,
        ),
        Check::at_most("sigma_0 drift 32 -> 64 modes", drift, 0.01),
    ])
}

type TestField = fn(f64, f64) -> f64;

/// Separable fields `u(θ₁, t)` for the ambient comparison.
fn laplacian_suite() -> [(&'static str, TestField); 5] {
    [
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

fn fermi_orders() -> Result<Vec<Check>> {
    let shape = TorusShape::clifford();
    let zs: Vec<f64> = (1..=8).map(|k| 0.02 * k as f64).collect();
    let metric = metric_expansion_study(&shape, 0.0, &zs)?;
    let phi_even = CircleField::even(vec![0.1, 0.5, 0.2]).with_modes(8);
    let d = d_remainder_study(
        &shape,
        tau(),
        &ORDER_EPS,
        &phi_even,
        GridSpec::default(),
        3.0,
        laplacian_suite()[2].1,
    )?;
    let eps = 0.1;
    let phi = CircleField::full(vec![0.1, 0.5, 0.2], vec![0.0, -0.3, 0.1]).with_modes(8);
    let grid = FermiGrid::new(shape, eps, tau(), phi.clone(), GridSpec::default())?;
    let mut worst = 0.0_f64;
    for (_, u) in laplacian_suite() {
        let lap = fermi_laplacian_exact(&grid, &grid.field(u), Closure::OneSided)?;
        for i in (0..grid.m()).step_by(3) {
            let th = grid.theta.nodes()[i];
            for k in (0..grid.k()).step_by(7) {
                let t = grid.t[k];
                if t.abs() <= 2.5 {
                    let oracle = ambient_laplacian(&shape, eps, &phi, u, th, t, 0.02);
                    worst = worst.max((lap.at(i, k) - oracle).abs());
                }
            }
        }
    }
    Ok(vec![
        Check::within(
            "metric expansion slope on z = 0.02..0.16",
            metric.fit.slope,
            2.0,
            0.05,
        ),
        Check::at_least("truncated D remainder slope", d.fit.slope, 3.0),
        Check::at_most("exact vs ambient Laplacian, |t| <= 2.5", worst, 1e-5),
    ])
}

fn residual_order_fits() -> Result<Vec<Check>> {
    let o = residual_orders(
        &TorusShape::clifford(),
        quartic(),
        &ORDER_EPS,
        tau(),
        GridSpec::default(),
    )?;
    Ok(vec![
        Check::within("|F(v_star)| slope", o.vstar.slope, 2.0, 0.3),
        Check::within("|F(v_tilde)| slope", o.vtilde.slope, 3.0, 0.3),
    ])
}

fn projection_orders() -> Result<Vec<Check>> {
    let shape = TorusShape::clifford();
    let o = residual_orders(&shape, quartic(), &ORDER_EPS, tau(), GridSpec::default())?;
    let phi = CircleField::even(vec![-0.5 / (2.0 * SQRT_2), 0.5]);
    let errs = [0.07, 0.05, 0.035]
        .iter()
        .map(|e| {
            linear_response(&shape, quartic(), *e, tau(), &phi, GridSpec::default())
                .map(|r| r.relative_error)
        })
        .collect::<Result<Vec<_>>>()?;
    let decreasing = errs[2] < errs[1] && errs[1] < errs[0];
    Ok(vec![
        Check::at_least("projection sup slope at phi = 0", o.projection.slope, 4.3),
        Check::at_most("linear response relative error at eps = 0.05", errs[1], 0.5),
        Check::holds(
            "linear response error at eps = 0.035 (0.07 and 0.05 larger)",
            errs[2],
            format!("< {:e} < {:e}", errs[1], errs[0]),
            decreasing,
        ),
    ])
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

fn inner_solver() -> Result<Vec<Check>> {
    let shape = TorusShape::clifford();
    let p = quartic();
    let mut checks = Vec::new();
    let mu = assemble_inner(0.05, &shape, p, 3, 1001, 20.0)?.t_spectrum();
    checks.push(Check::within("mu_0", mu[0], 0.0, 1e-4));
    checks.push(Check::within("mu_1", mu[1], 1.5, 1e-4));
    let mut law = 0.0_f64;
    for eps in [0.1, 0.05] {
        let op = assemble_inner(eps, &shape, p, 9, 101, 8.0)?;
        let full = op.full_spectrum()?;
        let sep = op.separable_spectrum();
        let scale = sep.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
        let worst = full
            .iter()
            .zip(&sep)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        law = law.max(worst / scale);
    }
    checks.push(Check::at_most(
        "tensor spectrum vs mu_k + eps^2 lambda_j (relative)",
        law,
        1e-9,
    ));
    let op = assemble_inner(0.07, &shape, p, 9, 101, 8.0)?;
    let f = bump_field(&op);
    let mut parity = 0.0_f64;
    let even = op.project(&f.add(&f.reflect_t()).scale(0.5));
    for squared in [false, true] {
        let u = op.solve(&even, squared)?.u;
        parity = parity.max(InnerOperator::parity_defect(&u, 1.0) / u.max_abs());
    }
    let odd = op.project(&f.sub(&f.reflect_t()).scale(0.5));
    let u = op.solve(&odd, false)?.u;
    parity = parity.max(InnerOperator::parity_defect(&u, -1.0) / u.max_abs());
    checks.push(Check::at_most(
        "parity defect of solutions (relative)",
        parity,
        1e-10,
    ));
    let mut trip = 0.0_f64;
    for eps in [0.1, 0.05] {
        let op = assemble_inner(eps, &shape, p, 17, 401, 10.0)?;
        let exact = op.project(&bump_field(&op));
        for squared in [false, true] {
            let mut f = op.apply(&exact);
            if squared {
                f = op.apply(&f);
            }
            let sol = op.solve(&op.project(&f), squared)?;
            trip = trip.max(sol.u.sub(&exact).max_abs() / exact.max_abs());
        }
    }
    checks.push(Check::at_most(
        "manufactured solution round trip",
        trip,
        1e-7,
    ));
    Ok(checks)
}

/// Volume enclosed by the shifted, rescaled torus in toric coordinates
/// `(s, θ₁, θ₂)` with Jacobian `s(R + s cos θ₁)`; Gauss–Legendre in `s`,
/// trapezoid in `θ₁`.
pub fn toric_volume(shape: &TorusShape, eps: f64, phi: &CircleField) -> f64 {
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
        let th = TAU * j as f64 / n as f64;
        let outer = r + phi.eval(th);
        let inner: f64 = nodes
            .iter()
            .map(|(x, w)| {
                let s = 0.5 * outer * (x + 1.0);
                0.5 * outer * w * s * (big_r + s * th.cos())
            })
            .sum();
        total += inner * TAU / n as f64;
    }
    TAU * total
}

fn volume() -> Result<Vec<Check>> {
    let shape = TorusShape::clifford();
    let mut flat = 0.0_f64;
    for eps in [0.2, 0.1, 0.05] {
        let v = interior_volume(&shape, eps, &CircleField::zeros(4, Symmetry::Even));
        let exact = 2.0 * SQRT_2 * PI * PI / (eps * eps * eps);
        flat = flat.max((v - exact).abs() / exact);
    }
    let mut quad = 0.0_f64;
    for (eps, phi) in [
        (0.2, CircleField::even(vec![-0.1 / (2.0 * SQRT_2), 0.1])),
        (0.1, CircleField::even(vec![0.05, -0.2, 0.1, 0.03])),
    ] {
        let closed = interior_volume(&shape, eps, &phi);
        let brute = toric_volume(&shape, eps, &phi);
        quad = quad.max((closed - brute).abs() / brute);
    }
    let mut g = 0.0_f64;
    for eps in [0.1, 0.05] {
        let grid = FermiGrid::new(
            shape,
            eps,
            tau(),
            CircleField::zeros(0, Symmetry::Even),
            GridSpec::default(),
        )?;
        let cut = build_cutoffs(&shape, eps, tau())?;
        let a = assemble_vtilde(&grid, quartic());
        g = g.max(
            mass_defect(&grid, quartic(), &assemble_global_v(&grid, &cut, &a.total))
                .g_term
                .abs(),
        );
    }
    Ok(vec![
        Check::at_most(
            "interior volume at phi = 0 vs 2 sqrt2 pi^2 / eps^3 (relative)",
            flat,
            1e-10,
        ),
        Check::at_most("interior volume vs toric quadrature (relative)", quad, 1e-6),
        Check::within(
            "integral of t(1 - v) over t > 0",
            profile_integral(quartic(), f64::INFINITY),
            PI * PI / 12.0,
            1e-8,
        ),
        Check::at_most("sup |G| over eps in {0.1, 0.05}", g, MASS_DEFECT_BOUND),
    ])
}

/// Uniform bound imposed on the mass-defect term `G_ε`.
pub const MASS_DEFECT_BOUND: f64 = 5.0;
/// Ceiling on `sup|U_odd|/ε⁴` along the solve.
pub const ODD_PART_BOUND: f64 = 50.0;
/// Ceiling on `sup|p₄|/ε⁵` along the solve.
pub const P4_BOUND: f64 = 200.0;

fn reduction() -> Result<Vec<Check>> {
    let shape = TorusShape::clifford();
    let config = BifurcationConfig::default();
    let mut checks = Vec::new();
    let mut ratios = Vec::new();
    for eps in SOLVE_EPS {
        let st = solve_bifurcation(&shape, quartic(), eps, &config)?;
        let last = st.trace.last().map_or(f64::NAN, |r| r.update_norm);
        checks.push(Check::holds(
            format!("eps = {eps}: iterations"),
            st.trace.len() as f64,
            "converged within 30",
            st.converged && st.trace.len() <= 30,
        ));
        checks.push(Check::at_most(
            format!("eps = {eps}: last update"),
            last,
            1e-8,
        ));
        checks.push(Check::at_most(
            format!("eps = {eps}: volume residual"),
            st.volume_residual.abs(),
            1e-8,
        ));
        checks.push(Check::at_most(
            format!("eps = {eps}: |U_odd| / eps^4"),
            st.u_odd_over_eps4,
            ODD_PART_BOUND,
        ));
        checks.push(Check::at_most(
            format!("eps = {eps}: |p4| / eps^5"),
            st.p4_over_eps5,
            P4_BOUND,
        ));
        ratios.push(st.phi_sup_over_eps);
    }
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(0.0, f64::max);
    checks.push(Check::at_most(
        "spread of |phi| / eps over eps (max / min)",
        hi / lo,
        2.0,
    ));
    Ok(checks)
}
