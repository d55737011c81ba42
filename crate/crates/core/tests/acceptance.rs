mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{lattice_param, param_pair, rel, rng, uniform};
use heunlim::algebra::{cubic_closure_hahn, hahn_algebra_check, racah_embedding_jacobi, w_pm_pairs, ClosureReport};
use heunlim::heun::{
    algebraic_heun, degree_excess, difference_heun, explicit_m, heun_diff_build, heun_hahn, match_heun_params,
    param_match_difference, psi_residuals, tridiagonal_action, truncation_setup, wilson_expansion, HeunDiffParams,
    HeunTau,
};
use heunlim::limiting::{kernel_routes, limiting_ops, projections, solve, LimitingConfig};
use heunlim::linalg::{dense_sym_eig, DenseMatrix};
use heunlim::operators::{grid_x, leonard_check, monomial_hypergeom, monomial_x, to_hahn, to_jacobi, DualityData};
use heunlim::orthopoly::{hahn_basis, hahn_operator, jacobi_recurrence, HahnParams, JacobiParams};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<Vec<Measure>, String>;

/// A measured quantity against its bound.
struct Measure {
    what: &'static str,
    value: f64,
    bound: f64,
}

impl Measure {
    fn ok(&self) -> bool {
        self.value <= self.bound
    }
}

#[derive(Default)]
struct Worst(Vec<Measure>);

impl Worst {
    fn track(&mut self, what: &'static str, value: f64, bound: f64) {
        let value = if value.is_nan() { f64::INFINITY } else { value };
        match self.0.iter_mut().find(|m| m.what == what) {
            Some(m) => m.value = m.value.max(value),
            None => self.0.push(Measure { what, value, bound }),
        }
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn pick(r: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    r.gen_range(lo..=hi)
}

fn random_tau(r: &mut ChaCha8Rng) -> HeunTau<f64> {
    HeunTau::new([0; 5].map(|_| uniform(r, -2.0, 2.0)))
}

fn max_abs_diff(a: &DenseMatrix<f64>, b: &DenseMatrix<f64>, cols: usize) -> f64 {
    let mut m = 0.0f64;
    for i in 0..a.rows() {
        for j in 0..cols {
            m = m.max((a[(i, j)] - b[(i, j)]).abs());
        }
    }
    m
}

fn recurrence_oracle() -> Outcome {
    let mut r = rng(101);
    let mut w = Worst::default();
    for _ in 0..20 {
        let (a, ar) = lattice_param(&mut r);
        let (b, br) = lattice_param(&mut r);
        let rec = jacobi_recurrence(&JacobiParams::new(a, b).map_err(err)?, 12).map_err(err)?;
        let (eb, eu) = common::exact_recurrence(&ar, &br, 12);
        for n in 0..=12 {
            w.track("b_n relative error", rel(rec.b()[n], eb[n]), 1e-9);
            if n > 0 {
                w.track("u_n relative error", rel(rec.u(n), eu[n - 1]), 1e-9);
            }
        }
        let sym = jacobi_recurrence(&JacobiParams::new(a, a).map_err(err)?, 12).map_err(err)?;
        let off = sym.b().iter().map(|&v| (v - 0.5).abs()).fold(0.0, f64::max);
        w.track("|b_n - 1/2| for alpha = beta", off, 0.0);
    }
    Ok(w.0)
}

fn bispectrality() -> Outcome {
    let mut r = rng(102);
    let mut w = Worst::default();
    for n in [4usize, 16, 64] {
        for _ in 0..3 {
            let (a, b) = param_pair(&mut r);
            let p = HahnParams::new(a, b, n).map_err(err)?;
            let basis = hahn_basis(&p).map_err(err)?;
            let x = to_hahn(&grid_x(n).map_err(err)?, &basis).map_err(err)?;
            let y = hahn_operator(&p);
            w.track("X off-band in hahn basis / |X|_F", x.matrix().off_band_norm(1) / x.matrix().frobenius(), 1e-10);
            w.track("Y off-band on grid / |Y|_F", y.matrix().off_band_norm(1) / y.matrix().frobenius(), 1e-10);
            let yh = to_hahn(&y, &basis).map_err(err)?;
            for k in 0..=n {
                let mu = p.eigenvalue(k);
                w.track("eigenvalue relative error", (yh.matrix()[(k, k)] - mu).abs() / mu.max(1.0), 1e-9);
            }
        }
    }
    Ok(w.0)
}

fn duality_and_kernel() -> Outcome {
    let mut r = rng(103);
    let mut w = Worst::default();
    for _ in 0..10 {
        let (a, b) = param_pair(&mut r);
        let mid = pick(&mut r, 2, 31);
        for n in [1usize, 8, mid, 32] {
            let p = HahnParams::new(a, b, n).map_err(err)?;
            let basis = hahn_basis(&p).map_err(err)?;
            let d = DualityData::from_basis(&basis).map_err(err)?;
            w.track("leonard duality residual", leonard_check(&d), 1e-10);
            for _ in 0..3 {
                let j1 = pick(&mut r, 0, n);
                let j2 = pick(&mut r, 0, n);
                let c = LimitingConfig::new(p, j1, j2).map_err(err)?;
                let ks = kernel_routes(&c, &basis).map_err(err)?;
                w.track("kernel route disagreement", ks.route_gap, 1e-10);
                w.track("kernel vs direct products", ks.projection_gap.max(ks.v1_gap), 1e-10);
            }
        }
    }
    Ok(w.0)
}

fn heun_equivalences() -> Outcome {
    let mut r = rng(104);
    let mut w = Worst::default();
    let k = 12;
    for _ in 0..10 {
        let (a, b) = param_pair(&mut r);
        let p = JacobiParams::new(a, b).map_err(err)?;
        let t = random_tau(&mut r).normalized().map_err(err)?;
        let m = algebraic_heun(&monomial_x(k).map_err(err)?, &monomial_hypergeom(&p, k).map_err(err)?, &t).map_err(err)?;
        let e = explicit_m(&p, &t, k).map_err(err)?;
        let cols = m.exact_columns().min(e.exact_columns());
        w.track("algebraic vs explicit differential form", max_abs_diff(m.matrix(), e.matrix(), cols), 1e-10);
        let fit = match_heun_params(&t, &p, k).map_err(err)?;
        w.track("heun parameter fit residual", fit.residual, 1e-10);
    }
    for _ in 0..10 {
        let (a, b) = param_pair(&mut r);
        let n = pick(&mut r, 2, 12);
        let p = HahnParams::new(a, b, n).map_err(err)?;
        let t = random_tau(&mut r);
        let h = heun_hahn(&t, &p).map_err(err)?;
        let g = algebraic_heun(&grid_x(n).map_err(err)?, &hahn_operator(&p), &t).map_err(err)?;
        w.track("heun-hahn vs algebraic on grid", max_abs_diff(h.matrix(), g.matrix(), n + 1), 1e-11);
    }
    Ok(w.0)
}

fn degree_raising() -> Outcome {
    let mut r = rng(105);
    let mut w = Worst::default();
    let n = 10;
    for _ in 0..10 {
        let (a, b) = param_pair(&mut r);
        let p = HahnParams::new(a, b, n).map_err(err)?;
        let t = random_tau(&mut r);
        let op = difference_heun(&param_match_difference(&t, &p)).map_err(err)?;
        for deg in 0..n {
            let power: Vec<f64> = (0..=n).map(|x| (x as f64).powi(deg as i32)).collect();
            let image = op.matrix().matvec(&power);
            w.track("difference heun excess newton coefficients", degree_excess(&image, deg + 1), 1e-12);
        }
    }
    let k = 12;
    for _ in 0..10 {
        let g = uniform(&mut r, 0.1, 3.0);
        let dl = uniform(&mut r, 0.1, 3.0);
        let e = uniform(&mut r, 0.1, 3.0);
        let ah = uniform(&mut r, -1.0, 2.0);
        let bh = g + dl + e - ah - 1.0;
        let d = uniform(&mut r, 1.5, 4.0);
        let q = uniform(&mut r, -1.0, 1.0);
        let lam = uniform(&mut r, -1.0, 1.0);
        let hp = HeunDiffParams::new(g, dl, e, ah, bh, d, q, lam).map_err(err)?;
        let op = heun_diff_build(&hp, k).map_err(err)?;
        for deg in 0..op.exact_columns() {
            let col = op.matrix().column(deg);
            let top = col.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let excess = col[(deg + 2).min(col.len())..].iter().fold(0.0f64, |m, v| m.max(v.abs()));
            w.track("heun differential excess coefficients", if top > 0.0 { excess / top } else { 0.0 }, 1e-12);
        }
    }
    Ok(w.0)
}

fn tridiagonality() -> Outcome {
    let mut r = rng(106);
    let mut w = Worst::default();
    let k = 12;
    for _ in 0..10 {
        let (a, b) = param_pair(&mut r);
        let p = JacobiParams::new(a, b).map_err(err)?;
        let rec = jacobi_recurrence(&p, k).map_err(err)?;
        let t = random_tau(&mut r);
        let m = algebraic_heun(&monomial_x(k).map_err(err)?, &monomial_hypergeom(&p, k).map_err(err)?, &t).map_err(err)?;
        let mj = to_jacobi(&m, &p, &rec).map_err(err)?;
        let act = tridiagonal_action(&mj, &t, &p, &rec).map_err(err)?;
        w.track("jacobi realization off-band / |W|_F", act.leakage, 1e-10);

        let hp = HahnParams::new(a, b, 16).map_err(err)?;
        let basis = hahn_basis(&hp).map_err(err)?;
        let wh = to_hahn(&heun_hahn(&t, &hp).map_err(err)?, &basis).map_err(err)?;
        w.track("hahn realization off-band / |W|_F", wh.matrix().off_band_norm(1) / wh.matrix().frobenius(), 1e-10);
    }
    Ok(w.0)
}

fn truncation_route() -> Outcome {
    let mut r = rng(107);
    let mut w = Worst::default();
    for n in [3usize, 5, 8] {
        for _ in 0..5 {
            let (a, b) = param_pair(&mut r);
            let p = JacobiParams::new(a, b).map_err(err)?;
            let td = truncation_setup(&p, n).map_err(err)?;
            w.track("degree <= N block leakage", td.leakage(&p).map_err(err)?, 1e-11);
            let res = psi_residuals(&td, &p).map_err(err)?;
            w.track("psi eigen-relation residual", res.iter().copied().fold(0.0, f64::max), 1e-9);
            let e = wilson_expansion(&td, &p).map_err(err)?;
            w.track("expansion route gap", e.route_gap, 1e-9);
            w.track("B_k vs closed form", e.deviations.b, 1e-8);
        }
    }
    Ok(w.0)
}

fn track_closure(w: &mut Worst, what: &'static str, rep: &ClosureReport<f64>, bound: f64) {
    w.track(what, rep.residual, bound);
    w.track("rank deficit", (rep.words.len() - rep.rank) as f64, 0.0);
}

fn algebra_closure() -> Outcome {
    let mut r = rng(108);
    let mut w = Worst::default();
    for _ in 0..3 {
        let (a, b) = param_pair(&mut r);
        let hp = HahnParams::new(a, b, 12).map_err(err)?;
        let (h1, h2) = hahn_algebra_check(&hp).map_err(err)?;
        track_closure(&mut w, "hahn algebra residual", &h1, 1e-9);
        track_closure(&mut w, "hahn algebra residual", &h2, 1e-9);

        let cub = cubic_closure_hahn(&random_tau(&mut r), &hp).map_err(err)?;
        track_closure(&mut w, "cubic algebra residual", &cub.first, 1e-9);
        track_closure(&mut w, "cubic algebra residual", &cub.second, 1e-9);

        let jp = JacobiParams::new(a, b).map_err(err)?;
        for k in [16usize, 20] {
            let mut t = random_tau(&mut r);
            t.tau0 = 0.0;
            t.tau4 = 0.0;
            let (e1, e2) = racah_embedding_jacobi(&t, &jp, k).map_err(err)?;
            track_closure(&mut w, "racah-in-jacobi residual", &e1, 1e-8);
            track_closure(&mut w, "racah-in-jacobi residual", &e2, 1e-8);
        }

        for sign in [1.0, -1.0] {
            let t2 = uniform(&mut r, 0.2, 2.0);
            let t = HeunTau::new([uniform(&mut r, -1.0, 1.0), -t2, t2, uniform(&mut r, -1.0, 1.0), -sign * t2]);
            let cub = cubic_closure_hahn(&t, &hp).map_err(err)?;
            w.track("vanishing-condition |e1|", cub.e1.abs(), 1e-9);
            w.track("vanishing-condition |e2|", cub.e2.abs(), 1e-9);
        }

        let (g, e) = (uniform(&mut r, -2.0, 2.0), uniform(&mut r, -2.0, 2.0));
        for (p1, p2) in w_pm_pairs(&hp, g, e).map_err(err)? {
            track_closure(&mut w, "W+- racah closure residual", &p1, 1e-9);
            track_closure(&mut w, "W+- racah closure residual", &p2, 1e-9);
        }
    }
    Ok(w.0)
}

fn commuting_miracle() -> Outcome {
    let mut r = rng(109);
    let mut w = Worst::default();
    for n in [8usize, 16, 32] {
        let (a, b) = param_pair(&mut r);
        let p = HahnParams::new(a, b, n).map_err(err)?;
        for j1 in 0..n {
            for j2 in 0..n {
                let rep = solve(&LimitingConfig::new(p, j1, j2).map_err(err)?).map_err(err)?;
                let sol = rep.commuting.as_ref().ok_or("no commuting operator")?;
                w.track("|[M,pi1]|_F / |M|_F", sol.commutator_residuals.0, 1e-10);
                w.track("|[M,pi2]|_F / |M|_F", sol.commutator_residuals.1, 1e-10);
                w.track("via-M vs direct eigenvalues", rep.eigenvalue_mismatch, 1e-9);
                w.track("eigenvector principal angle", rep.eigenvector_agreement, 1e-7);
            }
        }
    }
    Ok(w.0)
}

fn limit_cases() -> Outcome {
    let mut r = rng(110);
    let mut w = Worst::default();
    for n in [4usize, 9, 16] {
        let (a, b) = param_pair(&mut r);
        let p = HahnParams::new(a, b, n).map_err(err)?;
        let basis = hahn_basis(&p).map_err(err)?;
        let id = DenseMatrix::identity(n + 1);

        let full = LimitingConfig::new(p, n, n).map_err(err)?;
        let (pi1, pi2) = projections(&full, &basis).map_err(err)?;
        let ops = limiting_ops(&pi1, &pi2).map_err(err)?;
        w.track("|V1 - I| when J1 = J2 = N", (ops.v1.matrix() - &id).max_abs(), 0.0);
        w.track("|V2 - I| when J1 = J2 = N", (ops.v2.matrix() - &id).max_abs(), 0.0);

        for j1 in 0..n {
            let c = LimitingConfig::new(p, j1, n).map_err(err)?;
            let (pi1, pi2) = projections(&c, &basis).map_err(err)?;
            let ops = limiting_ops(&pi1, &pi2).map_err(err)?;
            w.track("|V1 - pi1| when J2 = N", (ops.v1.matrix() - pi1.matrix()).max_abs(), 0.0);
            w.track("|V2 - pi1| when J2 = N", (ops.v2.matrix() - pi1.matrix()).max_abs(), 0.0);
            let eig = dense_sym_eig(ops.v1.matrix()).map_err(err)?;
            let ones = eig.values.iter().filter(|&&v| (v - 1.0).abs() <= 1e-12).count();
            let zeros = eig.values.iter().filter(|&&v| v.abs() <= 1e-12).count();
            w.track("unit eigenvalue count mismatch", ones.abs_diff(j1 + 1) as f64, 0.0);
            w.track("zero eigenvalue count mismatch", zeros.abs_diff(n - j1) as f64, 0.0);
        }
    }
    Ok(w.0)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("recurrence oracle", recurrence_oracle),
        ("bispectrality", bispectrality),
        ("leonard duality and kernel routes", duality_and_kernel),
        ("heun equivalences", heun_equivalences),
        ("degree raising", degree_raising),
        ("tridiagonality on polynomial eigenbases", tridiagonality),
        ("truncation and racah route", truncation_route),
        ("algebra closure", algebra_closure),
        ("commuting operator for time-and-band limiting", commuting_miracle),
        ("limit cases", limit_cases),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (pass, detail) = match &outcome {
            Ok(ms) => {
                let pass = ms.iter().all(Measure::ok);
                let detail = ms
                    .iter()
                    .map(|m| format!("{} {:.2e} (<= {:.0e})", m.what, m.value, m.bound))
                    .collect::<Vec<_>>()
                    .join("; ");
                (pass, detail)
            }
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<46} {} [{secs:.2}s] {detail}",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" }
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
