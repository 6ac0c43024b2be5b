//! One pipeline per subcommand. Each returns its grid description, results
//! and checks, and writes any side files named in the configuration.

use crate::acceptance::{self, toric_volume, CRITERIA};
use crate::artifact::{csv, json_lines, write_matrix, write_text, Check};
use crate::config::{Command, RunConfig};
use crate::error::CliError;
use clifford_phase_core::fermi::{
    ambient_laplacian, d_remainder_study, fermi_laplacian_exact, metric_expansion_study, OrderStudy,
};
use clifford_phase_core::geometry::{
    jet, laplace_beltrami, scalar_field, surface_integral, willmore_residual, CircleField,
    Symmetry, TorusShape,
};
use clifford_phase_core::grid::{FermiGrid, GridField};
use clifford_phase_core::num::fd::Closure;
use clifford_phase_core::num::fit::{fit_power_law, fit_power_law_trimmed, PowerFit};
use clifford_phase_core::phasefield::{
    assemble_global_v, assemble_vtilde, build_cutoffs, linear_response, residual_orders,
    residual_sample,
};
use clifford_phase_core::profile::{build_eta, verify_identities, ProfileTable};
use clifford_phase_core::reduction::{
    interior_volume, mass_defect, profile_integral, solve_bifurcation, total_mean_curvature,
    volume_residual, BifurcationConfig, InnerOperator, ReducedState, KERNEL_TOLERANCE,
};
use clifford_phase_core::willmore_op::{
    assemble_ltilde, assemble_ltilde_term, spectrum_report, OperatorMatrix, LTILDE_TERMS,
};
use serde::Serialize;
use serde_json::{json, Value};
use std::f64::consts::{PI, SQRT_2, TAU};

/// What a pipeline hands back for the artifact.
pub struct Report {
    pub grid: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    /// Replaces the per-check lines of text output.
    pub summary: Option<String>,
}

pub fn execute(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.command {
        Command::Profile => profile(cfg),
        Command::Geometry => geometry(cfg),
        Command::Willmore => willmore(cfg),
        Command::Expansion => expansion(cfg),
        Command::Residual => residual(cfg),
        Command::Project => project(cfg),
        Command::Inner => inner(cfg),
        Command::Volume => volume(cfg),
        Command::Solve => solve(cfg),
        Command::Sweep => sweep(cfg),
        Command::All => all(),
    }
}

fn profile_table(cfg: &RunConfig) -> Result<ProfileTable, CliError> {
    Ok(ProfileTable::default_for(cfg.double_well()?)?)
}

fn fermi_grid(
    cfg: &RunConfig,
    shape: TorusShape,
    eps: f64,
    phi: CircleField,
) -> Result<FermiGrid, CliError> {
    Ok(FermiGrid::new(shape, eps, cfg.tau, phi, cfg.grid_spec())?)
}

fn grid_json(g: &FermiGrid) -> Value {
    json!({
        "eps": g.eps,
        "theta_nodes": g.m(),
        "t_nodes": g.k(),
        "t_spacing": g.h,
        "half_width": g.half_width,
        "inner_radius": g.inner_radius(),
    })
}

fn fit_json(fit: &PowerFit) -> Value {
    json!({
        "slope": fit.slope,
        "prefactor": fit.prefactor,
        "sigma": fit.sigma,
        "full_slope": fit.full_slope,
        "excluded_largest": fit.excluded_largest,
    })
}

fn study_json(s: &OrderStudy) -> Value {
    json!({ "xs": s.xs, "errors": s.errors, "fit": fit_json(&s.fit) })
}

fn maybe_csv(cfg: &RunConfig, text: impl FnOnce() -> String) -> Result<(), CliError> {
    match &cfg.csv {
        Some(path) => write_text(path, &text()),
        None => Ok(()),
    }
}

fn zero_phi() -> CircleField {
    CircleField::zeros(0, Symmetry::Even)
}

/// Even, zero-average shift `(cos θ₁ − 1/(2√2))/2`.
fn response_phi() -> CircleField {
    CircleField::even(vec![-0.5 / (2.0 * SQRT_2), 0.5])
}

fn profile(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = build_eta(&profile_table(cfg)?)?;
    let ids = verify_identities(&p)?;
    let eta = p.eta_residuals()?;
    let mut checks = vec![
        Check::at_most("ODE residual", p.ode_residual(), 1e-8),
        Check::at_most(
            "first integral residual",
            p.first_integral_residual(),
            1e-10,
        ),
        Check::at_most("projection identities", ids.max(), 1e-7),
        Check::at_most("|L eta - t v'/2|", eta.lstar, 1e-7),
        Check::at_most("|L^2 eta + v''|", eta.lstar_squared, 1e-6),
    ];
    if cfg.well == "quartic" {
        checks.push(Check::within("c_star", p.c_star, 2.0 * SQRT_2 / 3.0, 1e-8));
        checks.push(Check::within("b_star", p.b_star, 4.0 * SQRT_2 / 15.0, 1e-8));
        checks.push(Check::within("d", p.d_const, -1.6, 1e-7));
    }
    let e = p.eta.as_ref().expect("eta was built");
    maybe_csv(cfg, || {
        csv(
            &["t", "v", "dv", "d2v", "d3v", "eta", "deta", "d2eta"],
            &[&p.t, &p.v, &p.dv, &p.d2v, &p.d3v, &e.eta, &e.deta, &e.d2eta],
        )
    })?;
    Ok(Report {
        grid: json!({ "nodes": p.len(), "spacing": p.spacing, "half_width": p.half_width }),
        results: json!({
            "well": p.well().label(),
            "even_coefficients": p.well().even_coefficients(),
            "c_star": p.c_star,
            "b_star": p.b_star,
            "d": p.d_const,
            "decay_rate": p.decay_rate,
            "decay_prefactor": p.decay_prefactor(),
            "ode_residual": p.ode_residual(),
            "first_integral_residual": p.first_integral_residual(),
            "identities": {
                "int1": ids.int1, "int2": ids.int2, "int3": ids.int3, "int4": ids.int4, "int5": ids.int5,
                "lstar_eta_against_dv": ids.lstar_eta_against_dv,
            },
            "eta": {
                "lstar": eta.lstar,
                "lstar_squared": eta.lstar_squared,
                "orthogonality": eta.orthogonality,
                "oddness": eta.oddness,
            },
        }),
        checks,
        summary: None,
    })
}

fn geometry(cfg: &RunConfig) -> Result<Report, CliError> {
    let shape = cfg.shape()?;
    let residual = willmore_residual(&shape, cfg.modes);
    let h = scalar_field(&shape, cfg.modes, |j| j.h);
    let lap_h = laplace_beltrami(&shape, &h).field;
    let n = 2 * cfg.modes + 1;
    let theta: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
    let jets: Vec<_> = theta.iter().map(|t| jet(&shape, *t)).collect();
    let column = |f: fn(&clifford_phase_core::geometry::GeometryJet) -> f64| {
        jets.iter().map(f).collect::<Vec<f64>>()
    };
    let w: Vec<f64> = theta.iter().map(|t| residual.field.eval(*t)).collect();
    maybe_csv(cfg, || {
        csv(
            &["theta", "k1", "k2", "h", "abs_a2", "willmore_residual"],
            &[
                &theta,
                &column(|j| j.k1),
                &column(|j| j.k2),
                &column(|j| j.h),
                &column(|j| j.abs_a2),
                &w,
            ],
        )
    })?;
    let mut checks = Vec::new();
    if shape.is_clifford() {
        checks.push(Check::at_most(
            "Willmore residual sup",
            residual.field.max_abs(),
            1e-8,
        ));
        checks.push(Check::within(
            "Laplace-Beltrami of H at theta = 0",
            lap_h.eval(0.0),
            3.0 * SQRT_2 - 4.0,
            1e-8,
        ));
    }
    Ok(Report {
        grid: json!({ "modes": cfg.modes, "sample_nodes": n }),
        results: json!({
            "big_r": shape.big_r(),
            "small_r": shape.small_r(),
            "clifford": shape.is_clifford(),
            "area": shape.area(),
            "enclosed_volume": shape.enclosed_volume(),
            "total_mean_curvature": total_mean_curvature(&shape),
            "willmore_residual_sup": residual.field.max_abs(),
            "willmore_residual_truncation": residual.truncation,
            "laplace_h_at_0": lap_h.eval(0.0),
        }),
        checks,
        summary: None,
    })
}

fn terms(shape: &TorusShape, modes: usize, symmetry: Symmetry) -> Vec<OperatorMatrix> {
    (0..LTILDE_TERMS)
        .map(|t| assemble_ltilde_term(shape, modes, symmetry, t))
        .collect()
}

fn willmore(cfg: &RunConfig) -> Result<Report, CliError> {
    let shape = cfg.shape()?;
    let modes = cfg.modes;
    let residual = willmore_residual(&shape, modes).field.max_abs();
    let full = assemble_ltilde(&shape, modes, Symmetry::Full);
    let translation = CircleField::full(vec![0.0, 0.0], vec![0.0, 1.0]);
    let t = full.kernel_residual(&terms(&shape, modes, Symmetry::Full), &translation);
    let even = assemble_ltilde(&shape, modes, Symmetry::Even);
    let dilation = CircleField::even(vec![1.0, SQRT_2]);
    let d = even.kernel_residual(&terms(&shape, modes, Symmetry::Even), &dilation);
    let spec = spectrum_report(&shape, modes, Symmetry::Full)?;
    if let Some(path) = &cfg.matrix {
        let m = &even.matrix;
        write_matrix(path, m.nrows(), m.ncols(), |i, j| m[(i, j)])?;
    }
    maybe_csv(cfg, || {
        let index: Vec<f64> = (0..spec.eigenvalues.len()).map(|i| i as f64).collect();
        csv(&["index", "eigenvalue"], &[&index, &spec.eigenvalues])
    })?;
    let mut checks = vec![
        Check::holds(
            "bordered sigma_0",
            spec.bordered_sigma_min,
            "> 0",
            spec.bordered_sigma_min > 0.0,
        ),
        Check::at_most("self-adjointness defect", spec.self_adjointness, 1e-8),
    ];
    if shape.is_clifford() {
        checks.insert(0, Check::at_most("Willmore residual sup", residual, 1e-8));
        checks.push(Check::at_most("relative |L sin theta|", t.relative, 1e-6));
        checks.push(Check::at_most(
            "relative |L (1 + sqrt2 cos theta)|",
            d.relative,
            1e-6,
        ));
    }
    Ok(Report {
        grid: json!({ "modes": modes, "even_dimension": even.dimension(), "full_dimension": full.dimension() }),
        results: json!({
            "willmore_residual_sup": residual,
            "kernel_residual": {
                "translation": { "absolute": t.absolute, "scale": t.scale, "relative": t.relative },
                "dilation": { "absolute": d.absolute, "scale": d.scale, "relative": d.relative },
            },
            "lowest_eigenvalues": &spec.eigenvalues[..spec.eigenvalues.len().min(8)],
            "near_zero": spec.near_zero(1e-6),
            "max_imaginary": spec.max_imaginary,
            "bordered_sigma_min": spec.bordered_sigma_min,
            "self_adjointness": spec.self_adjointness,
        }),
        checks,
        summary: None,
    })
}

fn expansion(cfg: &RunConfig) -> Result<Report, CliError> {
    let shape = cfg.shape()?;
    let zs: Vec<f64> = (1..=8).map(|k| 0.02 * k as f64).collect();
    let metric = metric_expansion_study(&shape, 0.0, &zs)?;
    let phi_even = CircleField::even(vec![0.1, 0.5, 0.2]).with_modes(8);
    let sech2 = |th: f64, t: f64| (1.0 / t.cosh()).powi(2) * (1.0 + 0.3 * (2.0 * th).cos());
    let d = d_remainder_study(
        &shape,
        cfg.tau,
        &cfg.eps_list,
        &phi_even,
        cfg.grid_spec(),
        3.0,
        sech2,
    )?;
    let phi = CircleField::full(vec![0.1, 0.5, 0.2], vec![0.0, -0.3, 0.1]).with_modes(8);
    let grid = fermi_grid(cfg, shape, cfg.eps, phi.clone())?;
    let u = |th: f64, t: f64| (-t * t).exp() * th.cos() + t * (-0.5 * t * t).exp() * th.sin();
    let lap = fermi_laplacian_exact(&grid, &grid.field(u), Closure::OneSided)?;
    let mut ambient = 0.0_f64;
    for i in (0..grid.m()).step_by(3) {
        let th = grid.theta.nodes()[i];
        for k in (0..grid.k()).step_by(7) {
            let t = grid.t[k];
            if t.abs() <= 2.5 {
                ambient = ambient.max(
                    (lap.at(i, k) - ambient_laplacian(&shape, cfg.eps, &phi, u, th, t, 0.02)).abs(),
                );
            }
        }
    }
    maybe_csv(cfg, || {
        csv(&["z", "metric_error"], &[&metric.xs, &metric.errors])
    })?;
    Ok(Report {
        grid: grid_json(&grid),
        results: json!({
            "metric_expansion": study_json(&metric),
            "d_remainder": study_json(&d),
            "ambient_laplacian_error": ambient,
        }),
        summary: None,
        checks: vec![
            Check::within("metric expansion slope", metric.fit.slope, 2.0, 0.05),
            Check::at_least("truncated D remainder slope", d.fit.slope, 3.0),
            Check::at_most("exact vs ambient Laplacian, |t| <= 2.5", ambient, 1e-5),
        ],
    })
}

fn residual(cfg: &RunConfig) -> Result<Report, CliError> {
    let shape = cfg.shape()?;
    let p = profile_table(cfg)?;
    let o = residual_orders(&shape, &p, &cfg.eps_list, cfg.tau, cfg.grid_spec())?;
    let col = |f: fn(&clifford_phase_core::phasefield::ResidualSample) -> f64| {
        o.samples.iter().map(f).collect::<Vec<_>>()
    };
    let (vstar, vtilde, proj) = (
        col(|s| s.f_vstar),
        col(|s| s.f_vtilde),
        col(|s| s.projection.sup()),
    );
    maybe_csv(cfg, || {
        csv(
            &["eps", "f_vstar", "f_vtilde", "projection_sup"],
            &[&cfg.eps_list, &vstar, &vtilde, &proj],
        )
    })?;
    let mut checks = Vec::new();
    if cfg.eps_list.len() >= 3 {
        checks.push(Check::within("|F(v_star)| slope", o.vstar.slope, 2.0, 0.3));
        checks.push(Check::within(
            "|F(v_tilde)| slope",
            o.vtilde.slope,
            3.0,
            0.3,
        ));
    }
    Ok(Report {
        grid: json!({
            "theta_nodes": col(|s| s.m as f64),
            "t_nodes": col(|s| s.k as f64),
            "spec": { "theta_nodes": cfg.theta_nodes, "t_spacing": cfg.t_spacing, "half_width": cfg.half_width },
        }),
        results: json!({
            "eps": cfg.eps_list,
            "f_vstar": vstar,
            "f_vtilde": vtilde,
            "projection_sup": proj,
            "fit_vstar": fit_json(&o.vstar),
            "fit_vtilde": fit_json(&o.vtilde),
            "fit_projection": fit_json(&o.projection),
        }),
        checks,
        summary: None,
    })
}

fn project(cfg: &RunConfig) -> Result<Report, CliError> {
    let shape = cfg.shape()?;
    let p = profile_table(cfg)?;
    let spec = cfg.grid_spec();
    let sample = residual_sample(&shape, &p, cfg.eps, cfg.tau, &zero_phi(), spec)?;
    let mut sups = Vec::new();
    let mut responses = Vec::new();
    for eps in &cfg.eps_list {
        sups.push(
            residual_sample(&shape, &p, *eps, cfg.tau, &zero_phi(), spec)?
                .projection
                .sup(),
        );
        responses.push(
            linear_response(&shape, &p, *eps, cfg.tau, &response_phi(), spec)?.relative_error,
        );
    }
    maybe_csv(cfg, || {
        csv(
            &["theta", "q"],
            &[&sample.projection.theta, &sample.projection.values],
        )
    })?;
    let mut checks = Vec::new();
    if cfg.eps_list.len() >= 2 {
        let fit = fit_power_law_trimmed(&cfg.eps_list, &sups);
        checks.push(Check::at_least(
            "projection sup slope at phi = 0",
            fit.slope,
            4.3,
        ));
        let mut order: Vec<(f64, f64)> = cfg
            .eps_list
            .iter()
            .copied()
            .zip(responses.iter().copied())
            .collect();
        order.sort_by(|a, b| b.0.total_cmp(&a.0));
        let decreasing = order.windows(2).all(|w| w[1].1 < w[0].1);
        checks.push(Check::holds(
            "linear response error decreases with eps",
            order[order.len() - 1].1,
            "monotone",
            decreasing,
        ));
    }
    Ok(Report {
        grid: json!({ "eps": cfg.eps, "theta_nodes": sample.m, "t_nodes": sample.k }),
        results: json!({
            "eps": cfg.eps,
            "projection_sup": sample.projection.sup(),
            "projection_cos_coeffs": sample.projection.field.cos_coeffs(),
            "sweep": { "eps": cfg.eps_list, "projection_sup": sups, "linear_response_error": responses },
        }),
        checks,
        summary: None,
    })
}

fn inner(cfg: &RunConfig) -> Result<Report, CliError> {
    let shape = cfg.shape()?;
    let p = profile_table(cfg)?;
    let grid = fermi_grid(cfg, shape, cfg.eps, zero_phi())?;
    let op = InnerOperator::for_grid(&grid, &p)?;
    let rep = op.kernel_report();
    let mu = op.t_spectrum();
    let exact = op.project(&GridField {
        m: op.m(),
        k: op.k(),
        data: op
            .theta
            .iter()
            .flat_map(|th| {
                op.t.iter().map(move |t| {
                    (-t * t / 2.0).exp() * (1.0 + 0.4 * th.cos() + 0.3 * t * (3.0 * th).cos())
                })
            })
            .collect(),
    });
    let sol = op.solve(&op.project(&op.apply(&exact)), false)?;
    let trip = sol.u.sub(&exact).max_abs() / exact.max_abs();
    maybe_csv(cfg, || {
        let index: Vec<f64> = (0..mu.len()).map(|i| i as f64).collect();
        csv(&["index", "mu"], &[&index, &mu])
    })?;
    Ok(Report {
        grid: grid_json(&grid),
        results: json!({
            "mu": rep.mu,
            "multiplicity": rep.multiplicity,
            "cosine": rep.cosine,
            "lambda1_even": rep.lambda1_even,
            "second_even": rep.second_even,
            "round_trip_error": trip,
            "solve_residual": sol.residual,
        }),
        summary: None,
        checks: vec![
            Check::holds(
                "kernel multiplicity",
                rep.multiplicity as f64,
                "= 1",
                rep.multiplicity == 1,
            ),
            Check::at_most("|mu_0|", rep.mu[0].abs(), KERNEL_TOLERANCE),
            Check::at_most("manufactured solution round trip", trip, 1e-7),
        ],
    })
}

fn volume(cfg: &RunConfig) -> Result<Report, CliError> {
    let shape = cfg.shape()?;
    let p = profile_table(cfg)?;
    let eps = cfg.eps;
    let flat = interior_volume(&shape, eps, &zero_phi());
    let exact = shape.enclosed_volume() / (eps * eps * eps);
    let phi = CircleField::even(vec![0.05, -0.2, 0.1, 0.03]);
    let closed = interior_volume(&shape, eps, &phi);
    let brute = toric_volume(&shape, eps, &phi);
    let grid = fermi_grid(cfg, shape, eps, zero_phi())?;
    let cut = build_cutoffs(&shape, eps, cfg.tau)?;
    let a = assemble_vtilde(&grid, &p);
    let mass = mass_defect(&grid, &p, &assemble_global_v(&grid, &cut, &a.total));
    let integral = profile_integral(&p, f64::INFINITY);
    let vol = volume_residual(&shape, eps, &zero_phi(), &p, mass.upper_limit, mass.g_term);
    let mut checks = vec![
        Check::at_most(
            "interior volume at phi = 0 (relative)",
            (flat - exact).abs() / exact,
            1e-10,
        ),
        Check::at_most(
            "interior volume vs toric quadrature (relative)",
            (closed - brute).abs() / brute,
            1e-6,
        ),
        Check::at_most("|G|", mass.g_term.abs(), acceptance::MASS_DEFECT_BOUND),
    ];
    if cfg.well == "quartic" {
        checks.push(Check::within(
            "integral of t(1 - v) over t > 0",
            integral,
            PI * PI / 12.0,
            1e-8,
        ));
    }
    Ok(Report {
        grid: grid_json(&grid),
        results: json!({
            "interior_volume_flat": flat,
            "interior_volume_shifted": closed,
            "toric_quadrature": brute,
            "profile_integral": integral,
            "mass_defect": {
                "direct": mass.direct,
                "formula": mass.formula,
                "g_term": mass.g_term,
                "upper_limit": mass.upper_limit,
                "band": mass.band,
                "inner_volume": mass.inner_volume,
            },
            "volume_residual_at_phi_0": vol,
            "area": surface_integral(&shape, &CircleField::constant(1.0, 0, Symmetry::Even)),
        }),
        checks,
        summary: None,
    })
}

fn solver_config(cfg: &RunConfig) -> BifurcationConfig {
    BifurcationConfig {
        tau: cfg.tau,
        grid: cfg.grid_spec(),
        max_iter: cfg.max_iter,
        tol: cfg.tol,
        omega: cfg.omega,
        ..BifurcationConfig::default()
    }
}

#[derive(Serialize)]
struct TraceLine {
    iter: usize,
    update_norm: f64,
    proj_norm: f64,
    vol_residual: f64,
    lambda: f64,
    omega: f64,
}

fn state_json(st: &ReducedState) -> Value {
    json!({
        "eps": st.eps,
        "converged": st.converged,
        "iterations": st.trace.len(),
        "lambda": st.lambda,
        "phi_cos_coeffs": st.phi.cos_coeffs(),
        "phi_sup_over_eps": st.phi_sup_over_eps,
        "volume_residual": st.volume_residual,
        "projection_sup": st.projection_sup,
        "u_sup_over_eps3": st.u_sup_over_eps3,
        "u_odd_over_eps4": st.u_odd_over_eps4,
        "p2_sup": st.p2_sup,
        "p4_over_eps5": st.p4_over_eps5,
        "g_term": st.g_term,
        "inner_residual": st.inner_residual,
        "last_update": st.trace.last().map(|r| r.update_norm),
    })
}

fn state_checks(st: &ReducedState, cfg: &RunConfig) -> Vec<Check> {
    let tag = format!("eps = {}", st.eps);
    vec![
        Check::holds(
            format!("{tag}: converged"),
            st.trace.len() as f64,
            format!("within {}", cfg.max_iter),
            st.converged,
        ),
        Check::at_most(
            format!("{tag}: volume residual"),
            st.volume_residual.abs(),
            1e-8,
        ),
    ]
}

fn solve(cfg: &RunConfig) -> Result<Report, CliError> {
    let shape = cfg.shape()?;
    let p = profile_table(cfg)?;
    let st = solve_bifurcation(&shape, &p, cfg.eps, &solver_config(cfg))?;
    if let Some(path) = &cfg.trace {
        let lines: Vec<TraceLine> = st
            .trace
            .iter()
            .map(|r| TraceLine {
                iter: r.iteration,
                update_norm: r.update_norm,
                proj_norm: r.residual_norm,
                vol_residual: r.volume_residual,
                lambda: r.lambda,
                omega: r.omega,
            })
            .collect();
        write_text(path, &json_lines(&lines))?;
    }
    maybe_csv(cfg, || {
        let n = 256;
        let theta: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
        let phi: Vec<f64> = theta.iter().map(|t| st.phi.eval(*t)).collect();
        csv(&["theta", "phi"], &[&theta, &phi])
    })?;
    Ok(Report {
        grid: json!({
            "eps": st.eps,
            "theta_nodes": st.theta_nodes,
            "t_nodes": st.t_nodes,
            "half_width": st.half_width,
        }),
        results: state_json(&st),
        checks: state_checks(&st, cfg),
        summary: None,
    })
}

fn sweep(cfg: &RunConfig) -> Result<Report, CliError> {
    let shape = cfg.shape()?;
    let p = profile_table(cfg)?;
    let config = solver_config(cfg);
    let states = cfg
        .eps_list
        .iter()
        .map(|e| solve_bifurcation(&shape, &p, *e, &config))
        .collect::<Result<Vec<_>, _>>()?;
    let col = |f: fn(&ReducedState) -> f64| states.iter().map(f).collect::<Vec<f64>>();
    let ratio = col(|s| s.phi_sup_over_eps);
    let lambda = col(|s| s.lambda);
    maybe_csv(cfg, || {
        csv(
            &[
                "eps",
                "phi_sup_over_eps",
                "lambda",
                "iterations",
                "volume_residual",
                "u_odd_over_eps4",
                "p4_over_eps5",
                "g_term",
            ],
            &[
                &cfg.eps_list,
                &ratio,
                &lambda,
                &col(|s| s.trace.len() as f64),
                &col(|s| s.volume_residual),
                &col(|s| s.u_odd_over_eps4),
                &col(|s| s.p4_over_eps5),
                &col(|s| s.g_term),
            ],
        )
    })?;
    let mut checks: Vec<Check> = states.iter().flat_map(|s| state_checks(s, cfg)).collect();
    let lo = ratio.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratio.iter().copied().fold(0.0, f64::max);
    checks.push(Check::at_most(
        "spread of |phi| / eps (max / min)",
        hi / lo,
        2.0,
    ));
    let lambda_fit = (states.len() >= 2).then(|| {
        fit_json(&fit_power_law(
            &cfg.eps_list,
            &lambda.iter().map(|l| l.abs()).collect::<Vec<_>>(),
        ))
    });
    Ok(Report {
        grid: json!({
            "theta_nodes": col(|s| s.theta_nodes as f64),
            "t_nodes": col(|s| s.t_nodes as f64),
            "half_width": col(|s| s.half_width),
        }),
        results: json!({
            "states": states.iter().map(state_json).collect::<Vec<_>>(),
            "lambda_fit": lambda_fit,
        }),
        checks,
        summary: None,
    })
}

fn all() -> Result<Report, CliError> {
    let results = acceptance::run_all();
    let checks = results
        .iter()
        .map(|r| {
            let failed = r.checks.iter().filter(|c| !c.passed).count();
            Check::holds(
                format!("criterion {}: {}", r.id, r.title),
                failed as f64,
                "no failed checks",
                r.passed,
            )
        })
        .collect();
    Ok(Report {
        grid: json!({ "criteria": CRITERIA.len() }),
        results: serde_json::to_value(&results).expect("criteria serialize"),
        checks,
        summary: Some(results.iter().map(|r| r.line() + "\n").collect()),
    })
}
