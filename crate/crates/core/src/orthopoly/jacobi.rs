use crate::error::{Error, Result};
use crate::orthopoly::gamma::gamma;
use crate::orthopoly::recurrence::RecurrencePair;
use crate::scalar::Real;

/// Parameters of the weight x^α (1−x)^β on [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams<T> {
    pub alpha: T,
    pub beta: T,
}

impl<T: Real> JacobiParams<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::NonFinite("jacobi parameters"));
        }
        if !(alpha > -T::one() && beta > -T::one()) {
            return Err(Error::invalid(format!(
                "jacobi parameters need alpha > -1 and beta > -1, got ({alpha}, {beta})"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// α + β.
    pub fn sum(&self) -> T {
        self.alpha + self.beta
    }

    /// ∫₀¹ x^α (1−x)^β dx.
    pub fn mass(&self) -> T {
        gamma(self.alpha + T::one()) * gamma(self.beta + T::one()) / gamma(self.sum() + T::lit(2.0))
    }

    /// Eigenvalue −n(n+α+β+1) of the hypergeometric operator on P̂ₙ.
    pub fn eigenvalue(&self, n: usize) -> T {
        let n = T::from_index(n);
        -n * (n + self.sum() + T::one())
    }
}

/// Squared norms hₙ = ∫ P̂ₙ² x^α (1−x)^β dx.
#[derive(Debug, Clone, PartialEq)]
pub struct NormConstants<T> {
    pub h: Vec<T>,
}

fn coefficients<T: Real>(alpha: T, beta: T, nmax: usize, formal: bool) -> Result<(Vec<T>, Vec<T>)> {
    let one = T::one();
    let two = T::lit(2.0);
    let s = alpha + beta;
    let tiny = T::lit(1e-12);
    let check = |d: T, what: &str| -> Result<T> {
        if d.abs() <= tiny {
            Err(Error::invalid(format!(
                "recurrence denominator vanishes at {what} for ({alpha}, {beta})"
            )))
        } else {
            Ok(d)
        }
    };
    let mut b = Vec::with_capacity(nmax + 1);
    let mut u = Vec::with_capacity(nmax);
    b.push((alpha + one) / check(s + two, "b_0")?);
    for n in 1..=nmax {
        let nn = T::from_index(n);
        let m = two * nn + s;
        let bn = T::lit(0.5) + (alpha * alpha - beta * beta) / (two * check(m * (m + two), "b_n")?);
        b.push(bn);
        let un = if n == 1 {
            (one + alpha) * (one + beta) / check((two + s) * (two + s) * (T::lit(3.0) + s), "u_1")?
        } else {
            nn * (nn + alpha) * (nn + beta) * (nn + s) / check((m - one) * m * m * (m + one), "u_n")?
        };
        u.push(un);
    }
    if !formal {
        debug_assert!(u.iter().all(|&v| v > T::zero()));
    }
    Ok((b, u))
}

/// Monic Jacobi recurrence coefficients for degrees 0..=nmax.
pub fn jacobi_recurrence<T: Real>(p: &JacobiParams<T>, nmax: usize) -> Result<RecurrencePair<T>> {
    let (b, u) = coefficients(p.alpha, p.beta, nmax, false)?;
    RecurrencePair::new(b, u, p.mass())
}

/// Jacobi recurrence continued to arbitrary parameters.
///
/// No orthogonality weight is implied, so the mass is set to 1 and the
/// uₙ may be zero or negative. Fails only where a denominator vanishes.
pub fn jacobi_recurrence_formal<T: Real>(alpha: T, beta: T, nmax: usize) -> Result<RecurrencePair<T>> {
    if !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::NonFinite("jacobi parameters"));
    }
    let (b, u) = coefficients(alpha, beta, nmax, true)?;
    RecurrencePair::formal(b, u, T::one())
}

/// Value of the monic P̂ₙ at `x`.
pub fn jacobi_eval<T: Real>(rec: &RecurrencePair<T>, n: usize, x: T) -> Result<T> {
    if n > rec.max_degree() {
        return Err(Error::Dimension(format!(
            "degree {n} beyond recurrence of degree {}",
            rec.max_degree()
        )));
    }
    Ok(rec.eval(n, x))
}

pub fn jacobi_norms<T: Real>(p: &JacobiParams<T>, rec: &RecurrencePair<T>) -> NormConstants<T> {
    let mut h = rec.norms();
    // the stored mass may come from elsewhere; normalize to the Beta integral
    let scale = p.mass() / rec.mass();
    h.iter_mut().for_each(|v| *v = *v * scale);
    NormConstants { h }
}
