use heunlim::algebra::{cubic_closure_hahn, hahn_algebra_check, racah_embedding_jacobi, w_pm_pairs, ClosureReport};
use heunlim::heun::{
    algebraic_heun, degree_excess, difference_heun, explicit_m, heun_hahn, heun_hahn_mismatch, match_heun_params,
    param_match_difference, psi_residuals, tridiagonal_action, truncation_setup, HeunTau,
};
use heunlim::limiting::{kernel_routes, limiting_ops, projections, solve_with, LimitingConfig};
use heunlim::linalg::golub_welsch;
use heunlim::operators::{leonard_check, monomial_hypergeom, monomial_x, to_hahn, to_jacobi, DualityData};
use heunlim::orthopoly::{hahn_basis, hahn_recurrence, jacobi_recurrence, HahnParams, JacobiParams};
use heunlim::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{Suite, Tolerances};
use crate::emit::{num, Check, Report, Series, Worst};
use crate::CliError;

type Outcome = Result<Vec<Check>, Error>;
type SuiteFn = fn(&mut ChaCha8Rng, &Tolerances) -> Outcome;

const SUITES: [(&str, SuiteFn); 4] = [
    ("orthopoly", orthopoly),
    ("heun", heun),
    ("algebra", algebra),
    ("limiting", limiting),
];

fn rng(seed: u64, suite: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(31).wrapping_add(suite as u64))
}

fn param(r: &mut ChaCha8Rng) -> f64 {
    r.gen_range(-0.9..3.0)
}

fn tau(r: &mut ChaCha8Rng) -> HeunTau<f64> {
    HeunTau::new([(); 5].map(|_| r.gen_range(-2.0..2.0)))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn orthopoly(r: &mut ChaCha8Rng, tol: &Tolerances) -> Outcome {
    let ti = tol.tol_identity;
    let mut w = Worst::default();
    for _ in 0..8 {
        let (a, b) = (param(r), param(r));
        let p = JacobiParams::new(a, b)?;
        let rec = jacobi_recurrence(&p, 12)?;
        w.track("jacobi b0 closed form", rel(rec.b()[0], (a + 1.0) / (a + b + 2.0)), ti);
        let sym = jacobi_recurrence(&JacobiParams::new(a, a)?, 12)?;
        w.track("jacobi b_n = 1/2 when alpha = beta", sym.b().iter().map(|v| (v - 0.5).abs()).fold(0.0, f64::max), ti);

        let quad = golub_welsch(&rec, 7)?;
        let mut moment = 1.0;
        for k in 0..14 {
            let got = quad.integrate(|x| x.powi(k)) / rec.mass();
            w.track("gauss rule moment exactness", rel(got, moment), ti);
            moment *= (a + 1.0 + k as f64) / (a + b + 2.0 + k as f64);
        }
        let h = rec.norms();
        for (n, &hn) in h.iter().enumerate().take(7) {
            let got = quad.integrate(|x| rec.eval(n, x).powi(2));
            w.track("norms against quadrature", rel(got, hn), ti);
        }

        let n = r.gen_range(2..=24);
        let hp = HahnParams::new(a, b, n)?;
        let basis = hahn_basis(&hp)?;
        w.track("hahn basis orthogonality defect", basis.vectors.orthogonality_defect(), ti);
        w.track("hahn eigenvalue error", basis.eigenvalue_error, ti);
        w.track("hahn weights sum", (basis.weights.iter().sum::<f64>() - 1.0).abs(), ti);
        let closed = hp.recurrence()?;
        let read = hahn_recurrence(&basis)?;
        for k in 0..=n {
            w.track("hahn recurrence closed form vs eigenbasis", (closed.b()[k] - read.b()[k]).abs() / n as f64, ti);
        }
        let d = DualityData::from_basis(&basis)?;
        w.track("leonard duality residual", leonard_check(&d), ti);
    }
    Ok(w.0)
}

fn heun(r: &mut ChaCha8Rng, tol: &Tolerances) -> Outcome {
    let mut w = Worst::default();
    let k = 12;
    for _ in 0..6 {
        let (a, b) = (param(r), param(r));
        let p = JacobiParams::new(a, b)?;
        let t = tau(r).normalized()?;
        let m = algebraic_heun(&monomial_x(k)?, &monomial_hypergeom(&p, k)?, &t)?;
        let e = explicit_m(&p, &t, k)?;
        let cols = m.exact_columns().min(e.exact_columns());
        let gap = (0..=k)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|ij| (m.matrix()[ij] - e.matrix()[ij]).abs())
            .fold(0.0, f64::max);
        w.track("algebraic vs explicit differential form", gap / m.matrix().max_abs().max(1.0), tol.tol_action);
        w.track("heun parameter fit residual", match_heun_params(&t, &p, k)?.residual, tol.tol_action);

        let rec = jacobi_recurrence(&p, k)?;
        let act = tridiagonal_action(&to_jacobi(&m, &p, &rec)?, &t, &p, &rec)?;
        w.track("jacobi realization leakage", act.leakage, tol.tol_leakage);

        let n = r.gen_range(2..=16);
        let hp = HahnParams::new(a, b, n)?;
        w.track("factored vs algebraic on grid", heun_hahn_mismatch(&t, &hp)?, tol.tol_action);
        let basis = hahn_basis(&hp)?;
        let wh = to_hahn(&heun_hahn(&t, &hp)?, &basis)?;
        w.track("hahn realization leakage", wh.matrix().off_band_norm(1) / wh.matrix().frobenius(), tol.tol_leakage);
        let op = difference_heun(&param_match_difference(&t, &hp))?;
        for deg in 0..n {
            let power: Vec<f64> = (0..=n).map(|x| (x as f64).powi(deg as i32)).collect();
            w.track("grid degree excess", degree_excess(&op.matrix().matvec(&power), deg + 1), tol.tol_degree);
        }

        let td = truncation_setup(&p, r.gen_range(3..=8))?;
        w.track("truncation block leakage", td.leakage(&p)?, tol.tol_leakage);
        let res = psi_residuals(&td, &p)?;
        w.track("psi eigen-relation residual", res.iter().copied().fold(0.0, f64::max), tol.tol_action);
    }
    Ok(w.0)
}

fn closure(w: &mut Worst, what: &str, rep: &ClosureReport<f64>, bound: f64) {
    w.track(what, rep.residual, bound);
    w.track("rank deficit", (rep.words.len() - rep.rank) as f64, 0.0);
}

fn algebra(r: &mut ChaCha8Rng, tol: &Tolerances) -> Outcome {
    let ct = tol.tol_closure;
    let mut w = Worst::default();
    for _ in 0..3 {
        let (a, b) = (param(r), param(r));
        let hp = HahnParams::new(a, b, 12)?;
        let (h1, h2) = hahn_algebra_check(&hp)?;
        closure(&mut w, "hahn algebra residual", &h1, ct);
        closure(&mut w, "hahn algebra residual", &h2, ct);
        let cub = cubic_closure_hahn(&tau(r), &hp)?;
        closure(&mut w, "cubic algebra residual", &cub.first, ct);
        closure(&mut w, "cubic algebra residual", &cub.second, ct);

        let mut t = tau(r);
        t.tau0 = 0.0;
        t.tau4 = 0.0;
        let (e1, e2) = racah_embedding_jacobi(&t, &JacobiParams::new(a, b)?, 16)?;
        closure(&mut w, "racah-in-jacobi residual", &e1, ct);
        closure(&mut w, "racah-in-jacobi residual", &e2, ct);

        for sign in [1.0, -1.0] {
            let t2 = r.gen_range(0.2..2.0);
            let t = HeunTau::new([r.gen_range(-1.0..1.0), -t2, t2, r.gen_range(-1.0..1.0), -sign * t2]);
            let cub = cubic_closure_hahn(&t, &hp)?;
            w.track("vanishing-condition cubic terms", cub.e1.abs().max(cub.e2.abs()), ct);
        }
        for (p1, p2) in w_pm_pairs(&hp, r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0))? {
            closure(&mut w, "W+- racah closure residual", &p1, ct);
            closure(&mut w, "W+- racah closure residual", &p2, ct);
        }
    }
    Ok(w.0)
}

fn limiting(r: &mut ChaCha8Rng, tol: &Tolerances) -> Outcome {
    let lt = tol.limiting();
    let mut w = Worst::default();
    for n in [6usize, 12] {
        let hp = HahnParams::new(param(r), param(r), n)?;
        let basis = hahn_basis(&hp)?;
        for _ in 0..4 {
            let c = LimitingConfig::new(hp, r.gen_range(0..n), r.gen_range(0..n))?;
            let ks = kernel_routes(&c, &basis)?;
            w.track("kernel route disagreement", ks.max_gap(), tol.tol_kernel);
            let rep = solve_with(&c, &lt)?;
            if let Some(sol) = &rep.commuting {
                let (c1, c2) = sol.commutator_residuals;
                w.track("commutator residual", c1.max(c2), tol.tol_commutator);
            }
            w.track("via-M vs direct eigenvalues", rep.eigenvalue_mismatch, tol.tol_eigenvalue);
            w.track("eigenvector principal angle", rep.eigenvector_agreement, tol.tol_angle);
        }
        let c = LimitingConfig::new(hp, r.gen_range(0..=n), n)?;
        let (pi1, pi2) = projections(&c, &basis)?;
        let ops = limiting_ops(&pi1, &pi2)?;
        w.track("|V1 - pi1| when J2 = N", (ops.v1.matrix() - pi1.matrix()).max_abs(), 0.0);
    }
    Ok(w.0)
}

pub fn run(suite: Suite, seed: u64, tol: &Tolerances) -> Result<Report, CliError> {
    let picked: Vec<(usize, &str, SuiteFn)> = SUITES
        .iter()
        .enumerate()
        .filter(|(_, (name, _))| match suite {
            Suite::All => true,
            Suite::Orthopoly => *name == "orthopoly",
            Suite::Heun => *name == "heun",
            Suite::Algebra => *name == "algebra",
            Suite::Limiting => *name == "limiting",
        })
        .map(|(i, (name, f))| (i, *name, *f))
        .collect();

    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = picked
            .iter()
            .map(|&(i, _, f)| s.spawn(move || f(&mut rng(seed, i), tol)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });

    let mut suites = Vec::new();
    let mut checks = Vec::new();
    for ((_, name, _), outcome) in picked.iter().zip(outcomes) {
        let list = outcome?;
        let pass = list.iter().all(Check::pass);
        let entries: Vec<Value> = list
            .iter()
            .map(|c| json!({ "name": c.name, "value": num(c.value), "tolerance": num(c.tol), "pass": c.pass() }))
            .collect();
        suites.push(json!({ "suite": name, "pass": pass, "checks": entries }));
        checks.extend(list.into_iter().map(|c| Check::new(format!("{name}/{}", c.name), c.value, c.tol)));
    }
    let values = checks.iter().map(|c| c.value).collect();
    Ok(Report {
        results: json!({ "seed": seed, "suites": suites }),
        checks,
        series: vec![Series::new("verify_residuals", values)],
    })
}
