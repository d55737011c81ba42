use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, SymTridiag};
use crate::scalar::Real;

/// Monic three-term recurrence `x Pₙ = Pₙ₊₁ + bₙ Pₙ + uₙ Pₙ₋₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrencePair<T> {
    b: Vec<T>,
    // u[0] is a placeholder so that u[n] is uₙ
    u: Vec<T>,
    mass: T,
}

impl<T: Real> RecurrencePair<T> {
    /// `u` holds u₁..u_nmax and must be positive.
    pub fn new(b: Vec<T>, u: Vec<T>, mass: T) -> Result<Self> {
        if let Some((i, v)) = u.iter().enumerate().find(|(_, v)| !(**v > T::zero())) {
            return Err(Error::invalid(format!("u_{} = {v} is not positive", i + 1)));
        }
        if !(mass > T::zero()) {
            return Err(Error::invalid(format!("mass {mass} is not positive")));
        }
        Self::formal(b, u, mass)
    }

    /// Same as [`RecurrencePair::new`] without the positivity checks, for
    /// parameter values where no positive weight exists.
    pub fn formal(b: Vec<T>, u: Vec<T>, mass: T) -> Result<Self> {
        if b.is_empty() || u.len() + 1 != b.len() {
            return Err(Error::Dimension(format!(
                "recurrence needs len(u) = len(b) - 1, got {} and {}",
                b.len(),
                u.len()
            )));
        }
        if b.iter().chain(&u).chain(std::iter::once(&mass)).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("recurrence coefficients"));
        }
        let mut uu = Vec::with_capacity(b.len());
        uu.push(T::zero());
        uu.extend(u);
        Ok(Self { b, u: uu, mass })
    }

    /// Number of stored degrees, `nmax + 1`.
    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_degree(&self) -> usize {
        self.b.len() - 1
    }

    pub fn b(&self) -> &[T] {
        &self.b
    }

    /// uₙ for `1 ≤ n ≤ nmax`.
    pub fn u(&self, n: usize) -> T {
        assert!(n >= 1, "u is indexed from 1");
        self.u[n]
    }

    /// u₁..u_nmax.
    pub fn u_slice(&self) -> &[T] {
        &self.u[1..]
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    /// Values P̂₀(x)..P̂ₙ(x).
    pub fn eval_all(&self, n: usize, x: T) -> Vec<T> {
        assert!(n <= self.max_degree(), "degree {n} beyond recurrence");
        let mut p = Vec::with_capacity(n + 1);
        p.push(T::one());
        if n >= 1 {
            p.push(x - self.b[0]);
        }
        for k in 1..n {
            let next = (x - self.b[k]) * p[k] - self.u[k] * p[k - 1];
            p.push(next);
        }
        p
    }

    pub fn eval(&self, n: usize, x: T) -> T {
        self.eval_all(n, x)[n]
    }

    /// Row n holds the monomial coefficients of P̂ₙ, n = 0..=k.
    pub fn coefficients(&self, k: usize) -> DenseMatrix<T> {
        assert!(k <= self.max_degree(), "degree {k} beyond recurrence");
        let mut c = DenseMatrix::zeros(k + 1, k + 1);
        c[(0, 0)] = T::one();
        for n in 0..k {
            for j in 0..=n + 1 {
                let mut v = T::zero();
                if j >= 1 {
                    v = v + c[(n, j - 1)];
                }
                v = v - self.b[n] * c[(n, j)];
                if n >= 1 {
                    v = v - self.u[n] * c[(n - 1, j)];
                }
                c[(n + 1, j)] = v;
            }
        }
        c
    }

    /// Symmetric Jacobi matrix of size `m` with off-diagonal √uₙ.
    pub fn jacobi_matrix(&self, m: usize) -> Result<SymTridiag<T>> {
        if m == 0 || m > self.len() {
            return Err(Error::Dimension(format!("jacobi matrix of size {m}")));
        }
        let mut off = Vec::with_capacity(m - 1);
        for n in 1..m {
            if !(self.u[n] > T::zero()) {
                return Err(Error::invalid(format!("u_{n} is not positive")));
            }
            off.push(self.u[n].sqrt());
        }
        SymTridiag::new(self.b[..m].to_vec(), off)
    }

    /// Squared norms hₙ = μ₀ u₁ ⋯ uₙ.
    pub fn norms(&self) -> Vec<T> {
        let mut h = Vec::with_capacity(self.len());
        let mut acc = self.mass;
        h.push(acc);
        for n in 1..self.len() {
            acc = acc * self.u[n];
            h.push(acc);
        }
        h
    }
}
