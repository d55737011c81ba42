use heunlim::algebra::{
    cubic_closure_hahn, hahn_algebra_check, jacobi_algebra_check, jacobi_algebra_constants, racah_embedding_jacobi,
    w_pm_pairs, ClosureReport,
};
use heunlim::heun::{
    algebraic_heun, degree_excess, difference_heun, heun_hahn_mismatch, newton_coefficients, param_match_difference,
    tridiagonal_action, HeunTau,
};
use heunlim::limiting::{kernel_routes, solve_with, KernelRoute, LimitingConfig, SpectralReport, SpectralRoute};
use heunlim::operators::{monomial_hypergeom, monomial_x, to_jacobi};
use heunlim::orthopoly::{hahn_basis, jacobi_recurrence, HahnParams, JacobiParams};
use serde_json::{json, Value};

use crate::args::{Family, Heun, Limit, Tolerances};
use crate::emit::{num, nums, rows, Check, Report, Series};
use crate::CliError;

fn config(l: &Limit) -> Result<LimitingConfig<f64>, CliError> {
    let f = l.family;
    let (j1, j2) = l.cutoffs();
    Ok(LimitingConfig::new(HahnParams::new(f.alpha, f.beta, f.n)?, j1, j2)?)
}

fn limiting_checks(rep: &SpectralReport<f64>, tol: &Tolerances) -> Vec<Check> {
    let mut checks = Vec::new();
    if let Some(sol) = &rep.commuting {
        checks.push(Check::new("commutator_pi1", sol.commutator_residuals.0, tol.tol_commutator));
        checks.push(Check::new("commutator_pi2", sol.commutator_residuals.1, tol.tol_commutator));
    }
    checks.push(Check::new("eigenvalue_mismatch", rep.eigenvalue_mismatch, tol.tol_eigenvalue));
    checks.push(Check::new("dense_mismatch", rep.dense_mismatch, tol.tol_eigenvalue));
    checks.push(Check::new("eigenvector_angle", rep.eigenvector_agreement, tol.tol_angle));
    checks
}

fn route_name(r: SpectralRoute) -> &'static str {
    match r {
        SpectralRoute::Analytic => "analytic",
        SpectralRoute::CommutingOperator => "commuting-operator",
    }
}

fn diagnostics(rep: &SpectralReport<f64>) -> Value {
    let d = &rep.diagnostics;
    json!({
        "v1_min_gap": num(d.v1_min_gap),
        "m_block_min_gap": num(d.m_block_min_gap),
        "gap_ratio": num(d.gap_ratio),
        "clusters": d.clusters.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "warnings": d.warnings,
    })
}

fn spectrum_series(rep: &SpectralReport<f64>) -> Vec<Series> {
    vec![
        Series::new("v1_spectrum", rep.v1_eigs_direct.clone()),
        Series::new("v1_spectrum_via_m", rep.v1_eigs_via_m.clone()),
        Series::new("m_spectrum", rep.m_eigs.clone()),
    ]
}

pub fn solve(l: &Limit, tol: &Tolerances) -> Result<Report, CliError> {
    let rep = solve_with(&config(l)?, &tol.limiting())?;
    let commuting = match &rep.commuting {
        Some(s) => json!({
            "tau": nums(&s.tau.to_array()),
            "m_diagonal": nums(s.m_matrix.diag()),
            "m_offdiagonal": nums(s.m_matrix.offdiag()),
            "commutator_residuals": nums(&[s.commutator_residuals.0, s.commutator_residuals.1]),
            "m_norm": num(s.m_norm),
            "spectrum_gap": num(s.spectrum_gap),
            "spectrum_spread": num(s.spectrum_spread),
            "warnings": s.warnings,
        }),
        None => Value::Null,
    };
    let angles: Vec<Value> = rep.angles.iter().map(|a| a.map_or(Value::Null, num)).collect();
    let results = json!({
        "route": route_name(rep.route),
        "v1_eigs_direct": nums(&rep.v1_eigs_direct),
        "v1_vectors_direct": rows(&rep.v1_vectors_direct),
        "v1_eigs_dense": nums(&rep.v1_eigs_dense),
        "v1_eigs_via_m": nums(&rep.v1_eigs_via_m),
        "v1_vectors_via_m": rows(&rep.v1_vectors_via_m),
        "m_eigs": nums(&rep.m_eigs),
        "commuting": commuting,
        "eigenvalue_mismatch": num(rep.eigenvalue_mismatch),
        "dense_mismatch": num(rep.dense_mismatch),
        "angles": angles,
        "eigenvector_agreement": num(rep.eigenvector_agreement),
        "via_m_residual": num(rep.via_m_residual),
        "diagnostics": diagnostics(&rep),
    });
    Ok(Report {
        results,
        checks: limiting_checks(&rep, tol),
        series: spectrum_series(&rep),
    })
}

pub fn spectrum(l: &Limit, tol: &Tolerances) -> Result<Report, CliError> {
    let rep = solve_with(&config(l)?, &tol.limiting())?;
    let results = json!({
        "route": route_name(rep.route),
        "v1_spectrum": nums(&rep.v1_eigs_direct),
        "v1_spectrum_via_m": nums(&rep.v1_eigs_via_m),
        "m_spectrum": nums(&rep.m_eigs),
        "diagnostics": diagnostics(&rep),
    });
    Ok(Report {
        results,
        checks: limiting_checks(&rep, tol),
        series: spectrum_series(&rep),
    })
}

pub fn kernel(l: &Limit, tol: &Tolerances) -> Result<Report, CliError> {
    let c = config(l)?;
    let basis = hahn_basis(&c.hahn)?;
    let ks = kernel_routes(&c, &basis)?;
    let mut routes = serde_json::Map::new();
    for r in KernelRoute::ALL {
        routes.insert(r.name().to_string(), rows(ks.kernel(r)));
    }
    let k = ks.kernel(KernelRoute::Mixed);
    let results = json!({
        "shape": [k.rows(), k.cols()],
        "routes": routes,
        "route_gap": num(ks.route_gap),
        "projection_gap": num(ks.projection_gap),
        "v1_gap": num(ks.v1_gap),
    });
    let series = (0..k.rows()).map(|t| Series::new(format!("kernel_row_{t}"), k.row(t).to_vec())).collect();
    Ok(Report {
        results,
        checks: vec![
            Check::new("kernel_route_gap", ks.route_gap, tol.tol_kernel),
            Check::new("kernel_projection_gap", ks.projection_gap, tol.tol_kernel),
            Check::new("kernel_v1_gap", ks.v1_gap, tol.tol_kernel),
        ],
        series,
    })
}

fn families(f: &Family) -> Result<(JacobiParams<f64>, HahnParams<f64>), CliError> {
    Ok((JacobiParams::new(f.alpha, f.beta)?, HahnParams::new(f.alpha, f.beta, f.n)?))
}

fn rel_scale(v: &[f64]) -> f64 {
    v.iter().fold(1.0f64, |m, x| m.max(x.abs()))
}

pub fn heun_action(h: &Heun, tol: &Tolerances) -> Result<Report, CliError> {
    let (p, hp) = families(&h.family)?;
    let t = HeunTau::new(h.tau());
    let k = h.k;
    let rec = jacobi_recurrence(&p, k)?;
    let m = algebraic_heun(&monomial_x(k)?, &monomial_hypergeom(&p, k)?, &t)?;
    let act = tridiagonal_action(&to_jacobi(&m, &p, &rec)?, &t, &p, &rec)?;
    let scale = rel_scale(&act.xi).max(rel_scale(&act.eta)).max(rel_scale(&act.zeta_u));
    let table: Vec<Value> = (0..act.xi.len())
        .map(|n| json!({ "n": n, "xi": num(act.xi[n]), "eta": num(act.eta[n]), "zeta_u": num(act.zeta_u[n]) }))
        .collect();

    // monomial columns above the raised degree
    let mut monomial_excess = Vec::new();
    for j in 0..m.exact_columns() {
        let col = m.matrix().column(j);
        let top = col.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let over = col[(j + 2).min(col.len())..].iter().fold(0.0f64, |a, v| a.max(v.abs()));
        monomial_excess.push(if top > 0.0 { over / top } else { 0.0 });
    }

    let dp = param_match_difference(&t, &hp);
    let op = difference_heun(&dp)?;
    let n = hp.n_grid;
    let mut grid_excess = Vec::new();
    let mut sigma = Vec::new();
    let mut sigma_gap = 0.0f64;
    for deg in 0..n {
        let power: Vec<f64> = (0..=n).map(|x| (x as f64).powi(deg as i32)).collect();
        let image = op.matrix().matvec(&power);
        grid_excess.push(degree_excess(&image, deg + 1));
        let c = newton_coefficients(&image);
        let top = c.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let s = dp.sigma(deg);
        sigma.push(s);
        sigma_gap = sigma_gap.max((c[deg + 1] - s).abs() / top);
    }
    let hahn_gap = heun_hahn_mismatch(&t, &hp)?;

    let d = act.deviations;
    let results = json!({
        "tau": nums(&t.to_array()),
        "action": table,
        "leakage": num(act.leakage),
        "deviations": {
            "raising": num(d.raising),
            "lowering": num(d.lowering),
            "diagonal": num(d.diagonal),
            "diagonal_without_shift": num(d.diagonal_without_shift),
            "diagonal_unscaled": num(d.diagonal_unscaled),
        },
        "degree_raising": {
            "monomial_excess": nums(&monomial_excess),
            "grid_excess": nums(&grid_excess),
            "sigma": nums(&sigma),
            "sigma_gap": num(sigma_gap),
            "factored_vs_algebraic": num(hahn_gap),
        },
    });
    let worst = |v: &[f64]| v.iter().copied().fold(0.0f64, f64::max);
    Ok(Report {
        results,
        checks: vec![
            Check::new("tridiagonal_leakage", act.leakage, tol.tol_leakage),
            Check::new("raising_deviation", d.raising / scale, tol.tol_action),
            Check::new("lowering_deviation", d.lowering / scale, tol.tol_action),
            Check::new("diagonal_deviation", d.diagonal / scale, tol.tol_action),
            Check::new("monomial_degree_excess", worst(&monomial_excess), tol.tol_degree),
            Check::new("grid_degree_excess", worst(&grid_excess), tol.tol_degree),
            Check::new("sigma_gap", sigma_gap, tol.tol_action),
            Check::new("factored_vs_algebraic", hahn_gap, tol.tol_action),
        ],
        series: vec![
            Series::new("xi", act.xi.clone()),
            Series::new("eta", act.eta.clone()),
            Series::new("zeta_u", act.zeta_u.clone()),
            Series::new("monomial_excess", monomial_excess),
            Series::new("grid_excess", grid_excess),
        ],
    })
}

fn closure_json(r: &ClosureReport<f64>) -> Value {
    json!({
        "words": r.words,
        "coefficients": nums(&r.coefficients),
        "residual": num(r.residual),
        "window": r.window,
        "rank": r.rank,
    })
}

fn closure_checks(checks: &mut Vec<Check>, name: &str, r: &ClosureReport<f64>, tol: f64) {
    checks.push(Check::new(format!("{name}_residual"), r.residual, tol));
    checks.push(Check::new(format!("{name}_rank_deficit"), (r.words.len() - r.rank) as f64, 0.0));
}

pub fn algebra_check(h: &Heun, tol: &Tolerances) -> Result<Report, CliError> {
    let (p, hp) = families(&h.family)?;
    let t = HeunTau::new(h.tau());
    let ct = tol.tol_closure;
    let mut checks = Vec::new();
    let mut results = serde_json::Map::new();

    let (j1, j2) = jacobi_algebra_check(&p, h.k)?;
    let consts = jacobi_algebra_constants(&p);
    let fitted = [
        j1.coefficient("A2^2"),
        j1.coefficient("A2"),
        j2.coefficient("A2"),
        j2.coefficient("I"),
    ]
    .map(|c| c.unwrap_or(f64::NAN));
    let const_gap = fitted.iter().zip(&consts).map(|(a, b)| (a - b).abs() / b.abs().max(1.0)).fold(0.0, f64::max);
    closure_checks(&mut checks, "jacobi_first", &j1, ct);
    closure_checks(&mut checks, "jacobi_second", &j2, ct);
    checks.push(Check::new("jacobi_constants", const_gap, ct));
    results.insert("jacobi".into(), json!({ "first": closure_json(&j1), "second": closure_json(&j2), "constants": nums(&consts) }));

    let (h1, h2) = hahn_algebra_check(&hp)?;
    closure_checks(&mut checks, "hahn_first", &h1, ct);
    closure_checks(&mut checks, "hahn_second", &h2, ct);
    results.insert("hahn".into(), json!({ "first": closure_json(&h1), "second": closure_json(&h2) }));

    let cub = cubic_closure_hahn(&t, &hp)?;
    closure_checks(&mut checks, "cubic_first", &cub.first, ct);
    closure_checks(&mut checks, "cubic_second", &cub.second, ct);
    results.insert(
        "cubic".into(),
        json!({ "first": closure_json(&cub.first), "second": closure_json(&cub.second), "e1": num(cub.e1), "e2": num(cub.e2) }),
    );

    let te = HeunTau { tau0: 0.0, tau4: 0.0, ..t };
    let (e1, e2) = racah_embedding_jacobi(&te, &p, h.k)?;
    closure_checks(&mut checks, "racah_embedding_first", &e1, ct);
    closure_checks(&mut checks, "racah_embedding_second", &e2, ct);
    results.insert("racah_embedding".into(), json!({ "tau": nums(&te.to_array()), "first": closure_json(&e1), "second": closure_json(&e2) }));

    let pairs = w_pm_pairs(&hp, h.gamma, h.epsilon)?;
    let labels = ["y_wplus", "y_wminus", "wplus_wminus"];
    let mut wj = serde_json::Map::new();
    for (label, (a, b)) in labels.iter().zip(&pairs) {
        closure_checks(&mut checks, &format!("{label}_first"), a, ct);
        closure_checks(&mut checks, &format!("{label}_second"), b, ct);
        wj.insert(label.to_string(), json!({ "first": closure_json(a), "second": closure_json(b) }));
    }
    results.insert("w_pm".into(), Value::Object(wj));

    let series = checks.iter().filter(|c| c.name.ends_with("_residual")).map(|c| c.value).collect();
    Ok(Report {
        results: Value::Object(results),
        checks,
        series: vec![Series::new("closure_residuals", series)],
    })
}
