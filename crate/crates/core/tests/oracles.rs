mod common;

use common::{exact_recurrence, moments, rel};
use heunlim::algebra::{jacobi_algebra_check, jacobi_algebra_constants};
use heunlim::heun::{algebraic_heun, explicit_m, truncation_setup, wilson_expansion, HeunTau};
use heunlim::linalg::golub_welsch;
use heunlim::operators::{monomial_hypergeom, monomial_x};
use heunlim::orthopoly::{beta_fn, jacobi_norms, jacobi_recurrence, JacobiParams};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[test]
fn recurrence_matches_exact_stieltjes() {
    for (a, b) in [(1, 2), (-3, 4), (5, -7), (0, 0)] {
        let (af, bf) = (a as f64 / 8.0, b as f64 / 8.0);
        let rec = jacobi_recurrence(&JacobiParams::<f64>::new(af, bf).unwrap(), 10).unwrap();
        let (eb, eu) = exact_recurrence(&ratio(a, 8), &ratio(b, 8), 10);
        for n in 0..=10 {
            assert!(rel(rec.b()[n], eb[n]) < 1e-13, "b_{n} for ({af}, {bf})");
            if n > 0 {
                assert!(rel(rec.u(n), eu[n - 1]) < 1e-13, "u_{n} for ({af}, {bf})");
            }
        }
    }
}

#[test]
fn gauss_rule_integrates_moments_exactly() {
    let (a, b) = (ratio(3, 10), ratio(-1, 2));
    let p = JacobiParams::<f64>::new(0.3, -0.5).unwrap();
    let rec = jacobi_recurrence(&p, 8).unwrap();
    let m = 6;
    let q = golub_welsch(&rec, m).unwrap();
    let mom = moments(&a, &b, 2 * m);
    for (k, mk) in mom.iter().enumerate() {
        let got = q.integrate(|x| x.powi(k as i32)) / p.mass();
        assert!(rel(got, mk.to_f64().unwrap()) < 1e-13, "moment {k}");
    }
}

#[test]
fn mass_is_the_beta_function() {
    let p = JacobiParams::<f64>::new(1.5, 0.25).unwrap();
    assert!(rel(p.mass(), beta_fn(2.5, 1.25)) < 1e-14);
    // B(1, 1) = 1, B(2, 3) = 1/12
    assert!(rel(JacobiParams::<f64>::new(0.0, 0.0).unwrap().mass(), 1.0) < 1e-14);
    assert!(rel(JacobiParams::<f64>::new(1.0, 2.0).unwrap().mass(), 1.0 / 12.0) < 1e-14);
}

#[test]
fn norms_are_mass_times_u_products() {
    let p = JacobiParams::<f64>::new(0.75, 1.25).unwrap();
    let rec = jacobi_recurrence(&p, 9).unwrap();
    let h = jacobi_norms(&p, &rec).h;
    let (_, eu) = exact_recurrence(&ratio(3, 4), &ratio(5, 4), 9);
    let mut want = p.mass();
    for n in 0..=9 {
        if n > 0 {
            want *= eu[n - 1];
        }
        assert!(rel(h[n], want) < 1e-12, "h_{n}");
    }
}

#[test]
fn jacobi_algebra_constants_from_fit() {
    let p = JacobiParams::<f64>::new(0.4, 1.1).unwrap();
    let (first, second) = jacobi_algebra_check(&p, 10).unwrap();
    let [a2, d, c2, e2] = jacobi_algebra_constants(&p);
    assert!(first.residual < 1e-12 && second.residual < 1e-12);
    assert!((first.coefficient("A2^2").unwrap() - a2).abs() < 1e-10);
    assert!((first.coefficient("A2").unwrap() - d).abs() < 1e-10);
    assert!((second.coefficient("{A1,A2}").unwrap() - a2).abs() < 1e-10);
    assert!((second.coefficient("A1").unwrap() - d).abs() < 1e-10);
    assert!((second.coefficient("A2").unwrap() - c2).abs() < 1e-10);
    assert!((second.coefficient("I").unwrap() - e2).abs() < 1e-10);
}

/// Polynomial helpers on coefficient vectors, lowest degree first.
fn deriv(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, v)| k as f64 * v).collect()
}

fn eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, v| acc * x + v)
}

fn hypergeom_at(c: &[f64], x: f64, alpha: f64, beta: f64) -> f64 {
    let d1 = deriv(c);
    let d2 = deriv(&d1);
    x * (1.0 - x) * eval(&d2, x) + (alpha + 1.0 - (alpha + beta + 2.0) * x) * eval(&d1, x)
}

fn times_x(c: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0];
    out.extend_from_slice(c);
    out
}

#[test]
fn explicit_form_matches_pointwise_operator() {
    let (alpha, beta) = (0.6, -0.35);
    let p = JacobiParams::<f64>::new(alpha, beta).unwrap();
    let t = HeunTau::new([0.3, 0.65, 0.35, -1.2, 0.8]);
    let k = 9;
    let m = explicit_m(&p, &t, k).unwrap();
    let poly: Vec<f64> = (0..k).map(|i| ((i * 5 + 3) % 7) as f64 / 7.0 - 0.4).collect();
    let mut padded = poly.clone();
    padded.push(0.0);
    let image = m.matrix().matvec(&padded);
    for x in [0.13, 0.5, 0.77, 1.3, -0.4] {
        let yf = hypergeom_at(&poly, x, alpha, beta);
        let xf = times_x(&poly);
        let want = t.tau1 * x * yf
            + t.tau2 * hypergeom_at(&xf, x, alpha, beta)
            + t.tau3 * x * eval(&poly, x)
            + t.tau4 * yf
            + t.tau0 * eval(&poly, x);
        assert!((eval(&image, x) - want).abs() < 1e-11 * want.abs().max(1.0), "x = {x}");
    }
    let alg = algebraic_heun(&monomial_x(k).unwrap(), &monomial_hypergeom(&p, k).unwrap(), &t).unwrap();
    assert!(alg.distance(&m).unwrap() < 1e-12);
}

#[test]
fn truncated_expansion_small_case() {
    let p = JacobiParams::<f64>::new(0.5, 1.5).unwrap();
    let td = truncation_setup(&p, 3).unwrap();
    assert!((td.alpha_t - (-3.0 - 2.0 - 2.0)).abs() < 1e-14);
    let e = wilson_expansion(&td, &p).unwrap();
    assert!(e.route_gap < 1e-10);
    assert!(e.deviations.b < 1e-9 && e.deviations.f < 1e-9);
    assert_eq!(e.vanishing_gauge, vec![1, 2, 3]);
}
