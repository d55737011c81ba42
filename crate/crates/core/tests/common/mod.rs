#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A parameter in (−0.9, 3) on a 1/1000 lattice, so the oracle sees it exactly.
pub fn lattice_param(rng: &mut ChaCha8Rng) -> (f64, BigRational) {
    let k: i64 = rng.gen_range(-899..=2999);
    (k as f64 / 1000.0, BigRational::new(BigInt::from(k), BigInt::from(1000)))
}

pub fn param_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    (lattice_param(rng).0, lattice_param(rng).0)
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

/// Moments of x^α(1−x)^β on [0,1] divided by the total mass.
pub fn moments(alpha: &BigRational, beta: &BigRational, count: usize) -> Vec<BigRational> {
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let mut m = vec![one.clone()];
    for k in 0..count.saturating_sub(1) {
        let kk = BigRational::from_integer(BigInt::from(k));
        let next = &m[k] * (alpha + &one + &kk) / (alpha + beta + &two + &kk);
        m.push(next);
    }
    m
}

fn inner(p: &[BigRational], q: &[BigRational], mom: &[BigRational]) -> BigRational {
    let mut s = BigRational::zero();
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            s += a * b * &mom[i + j];
        }
    }
    s
}

/// Exact monic recurrence (b₀..b_n, u₁..u_n) by Stieltjes on the moments.
pub fn exact_recurrence(alpha: &BigRational, beta: &BigRational, nmax: usize) -> (Vec<f64>, Vec<f64>) {
    let mom = moments(alpha, beta, 2 * nmax + 3);
    let mut prev: Vec<BigRational> = Vec::new();
    let mut cur = vec![BigRational::one()];
    let mut prev_norm = BigRational::zero();
    let (mut b, mut u) = (Vec::new(), Vec::new());
    for n in 0..=nmax {
        let norm = inner(&cur, &cur, &mom);
        let mut xcur = vec![BigRational::zero()];
        xcur.extend(cur.iter().cloned());
        let bn = inner(&xcur, &cur, &mom) / &norm;
        let un = if n > 0 { &norm / &prev_norm } else { BigRational::zero() };
        b.push(bn.to_f64().unwrap());
        if n > 0 {
            u.push(un.to_f64().unwrap());
        }
        let mut next = xcur;
        for (i, c) in cur.iter().enumerate() {
            next[i] -= &bn * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= &un * c;
        }
        prev = cur;
        cur = next;
        prev_norm = norm;
    }
    (b, u)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
