use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::operators::{BasisOperator, BasisTag};
use crate::scalar::Real;

/// Largest allowed |γ+δ+ε − (α_h+β_h+1)|, relative to the parameter scale.
pub const FUCHS_TOL: f64 = 1e-12;

/// Parameters of the Heun operator
/// `x(1−x)(x−d)∂² + (ρ₂x²+ρ₁x+ρ₀)∂ + r₁x + r₀`.
///
/// The exponents at infinity enter only through their product; their sum is
/// fixed by the Fuchs relation γ+δ+ε = α_h+β_h+1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunDiffParams<T> {
    pub gamma: T,
    pub delta: T,
    pub epsilon: T,
    pub d_sing: T,
    pub q: T,
    /// α_h β_h.
    pub exponent_product: T,
    /// Spectral shift added to q in r₀.
    pub lambda: T,
}

/// The two exponents at infinity, which can be complex for fitted parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponents<T> {
    Real(T, T),
    Complex { re: T, im: T },
}

impl<T: Real> HeunDiffParams<T> {
    /// Builds from both exponents, checking the Fuchs relation.
    #[allow(clippy::too_many_arguments)]
    pub fn new(gamma: T, delta: T, epsilon: T, alpha_h: T, beta_h: T, d_sing: T, q: T, lambda: T) -> Result<Self> {
        let all = [gamma, delta, epsilon, alpha_h, beta_h, d_sing, q, lambda];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("heun parameters"));
        }
        let scale = all.iter().fold(T::one(), |m, v| m.max(v.abs()));
        let defect = (gamma + delta + epsilon - alpha_h - beta_h - T::one()).abs() / scale;
        if defect.as_f64() > FUCHS_TOL {
            return Err(Error::invalid(format!(
                "Fuchs relation violated: gamma + delta + epsilon - alpha_h - beta_h - 1 = {}",
                (gamma + delta + epsilon - alpha_h - beta_h - T::one())
            )));
        }
        Self::from_product(gamma, delta, epsilon, alpha_h * beta_h, d_sing, q, lambda)
    }

    /// Builds from the exponent product; the Fuchs relation then holds by construction.
    pub fn from_product(gamma: T, delta: T, epsilon: T, product: T, d_sing: T, q: T, lambda: T) -> Result<Self> {
        if [gamma, delta, epsilon, product, d_sing, q, lambda].iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("heun parameters"));
        }
        if d_sing == T::zero() || d_sing == T::one() {
            return Err(Error::invalid("the fourth singular point must differ from 0 and 1"));
        }
        Ok(Self {
            gamma,
            delta,
            epsilon,
            d_sing,
            q,
            exponent_product: product,
            lambda,
        })
    }

    pub fn exponents(&self) -> Exponents<T> {
        let sum = self.gamma + self.delta + self.epsilon - T::one();
        let half = T::lit(0.5) * sum;
        let disc = half * half - self.exponent_product;
        if disc >= T::zero() {
            let r = disc.sqrt();
            Exponents::Real(half + r, half - r)
        } else {
            Exponents::Complex {
                re: half,
                im: (-disc).sqrt(),
            }
        }
    }

    pub fn rho2(&self) -> T {
        -(self.gamma + self.delta + self.epsilon)
    }

    pub fn rho1(&self) -> T {
        (self.gamma + self.delta) * self.d_sing + self.gamma + self.epsilon
    }

    pub fn rho0(&self) -> T {
        -self.gamma * self.d_sing
    }

    pub fn r1(&self) -> T {
        -self.exponent_product
    }

    pub fn r0(&self) -> T {
        self.q + self.lambda
    }
}

/// Matrix of `c₂(x)∂² + c₁(x)∂ + c₀(x)` on coefficients of 1..x^K.
///
/// `c2`, `c1`, `c0` hold polynomial coefficients, lowest degree first.
/// Terms pushed past degree K are dropped.
pub fn poly_diff_matrix<T: Real>(c2: &[T], c1: &[T], c0: &[T], k: usize) -> DenseMatrix<T> {
    let mut m = DenseMatrix::zeros(k + 1, k + 1);
    for j in 0..=k {
        let jf = T::from_index(j);
        let mut put = |deg: isize, v: T| {
            if deg >= 0 && (deg as usize) <= k {
                m[(deg as usize, j)] = m[(deg as usize, j)] + v;
            }
        };
        for (i, &c) in c2.iter().enumerate() {
            if j >= 2 {
                put(j as isize - 2 + i as isize, c * jf * (jf - T::one()));
            }
        }
        for (i, &c) in c1.iter().enumerate() {
            if j >= 1 {
                put(j as isize - 1 + i as isize, c * jf);
            }
        }
        for (i, &c) in c0.iter().enumerate() {
            put((j + i) as isize, c);
        }
    }
    m
}

/// How far `c₂∂² + c₁∂ + c₀` can raise degree.
pub(crate) fn degree_raise<T: Real>(c2: &[T], c1: &[T], c0: &[T]) -> usize {
    let top = |c: &[T], shift: usize| {
        c.iter()
            .rposition(|v| *v != T::zero())
            .map(|d| d.saturating_sub(shift))
            .unwrap_or(0)
    };
    top(c2, 2).max(top(c1, 1)).max(top(c0, 0))
}

/// The Heun operator on monomial coefficients up to degree K.
pub fn heun_diff_build<T: Real>(p: &HeunDiffParams<T>, k: usize) -> Result<BasisOperator<T>> {
    if k < 3 {
        return Err(Error::invalid("monomial cutoff must be at least 3"));
    }
    let d = p.d_sing;
    // x(1−x)(x−d) = −d x + (1+d) x² − x³
    let c2 = [T::zero(), -d, T::one() + d, -T::one()];
    let c1 = [p.rho0(), p.rho1(), p.rho2()];
    let c0 = [p.r0(), p.r1()];
    let m = poly_diff_matrix(&c2, &c1, &c0, k);
    Ok(BasisOperator::new(m, BasisTag::Monomial { degree: k })?.with_window(k, 1))
}
