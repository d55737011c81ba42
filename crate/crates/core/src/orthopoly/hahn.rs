use crate::error::{Error, Result};
use crate::linalg::{sym_tridiag_eig, DenseMatrix, SymTridiag};
use crate::operators::{BasisOperator, BasisTag};
use crate::orthopoly::recurrence::RecurrencePair;
use crate::scalar::Real;

/// Hahn parameters on the grid {0, …, N}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HahnParams<T> {
    pub alpha: T,
    pub beta: T,
    pub n_grid: usize,
}

impl<T: Real> HahnParams<T> {
    pub fn new(alpha: T, beta: T, n_grid: usize) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::NonFinite("hahn parameters"));
        }
        if !(alpha > -T::one() && beta > -T::one()) {
            return Err(Error::invalid(format!(
                "hahn parameters need alpha > -1 and beta > -1, got ({alpha}, {beta})"
            )));
        }
        if n_grid < 1 {
            return Err(Error::invalid("hahn grid needs N >= 1"));
        }
        Ok(Self { alpha, beta, n_grid })
    }

    pub fn tag(&self) -> BasisTag {
        BasisTag::Hahn {
            alpha: self.alpha.as_f64(),
            beta: self.beta.as_f64(),
            n: self.n_grid,
        }
    }

    pub fn grid_tag(&self) -> BasisTag {
        BasisTag::Grid { n: self.n_grid }
    }

    /// Forward coefficient (x−N)(x+α+1).
    pub fn forward(&self, x: T) -> T {
        (x - T::from_index(self.n_grid)) * (x + self.alpha + T::one())
    }

    /// Backward coefficient x(x−β−N−1).
    pub fn backward(&self, x: T) -> T {
        x * (x - self.beta - T::from_index(self.n_grid) - T::one())
    }

    /// μₙ = n(n+α+β+1).
    pub fn eigenvalue(&self, n: usize) -> T {
        let n = T::from_index(n);
        n * (n + self.alpha + self.beta + T::one())
    }

    /// Normalized grid weights from w(x+1)/w(x) = B(x)/D(x+1).
    pub fn weights(&self) -> Vec<T> {
        let n = self.n_grid;
        let mut w = Vec::with_capacity(n + 1);
        w.push(T::one());
        for x in 0..n {
            let xf = T::from_index(x);
            let next = w[x] * self.forward(xf) / self.backward(xf + T::one());
            w.push(next);
        }
        let total: T = w.iter().copied().sum();
        w.iter_mut().for_each(|v| *v = *v / total);
        w
    }

    /// Monic recurrence of the Hahn polynomials in closed form, with
    /// bₙ = Aₙ + Cₙ and uₙ = Aₙ₋₁Cₙ where
    /// Aₙ = (n+s+1)(n+α+1)(N−n)/((2n+s+1)(2n+s+2)),
    /// Cₙ = n(n+s+N+1)(n+β)/((2n+s)(2n+s+1)), s = α+β.
    pub fn recurrence(&self) -> Result<RecurrencePair<T>> {
        let one = T::one();
        let two = T::lit(2.0);
        let s = self.alpha + self.beta;
        let big = T::from_index(self.n_grid);
        let a = |n: usize| {
            let k = T::from_index(n);
            if n == 0 {
                // the factor s+1 cancels
                (self.alpha + one) * big / (s + two)
            } else {
                (k + s + one) * (k + self.alpha + one) * (big - k) / ((two * k + s + one) * (two * k + s + two))
            }
        };
        let c = |n: usize| {
            if n == 0 {
                return T::zero();
            }
            let k = T::from_index(n);
            k * (k + s + big + one) * (k + self.beta) / ((two * k + s) * (two * k + s + one))
        };
        let b = (0..=self.n_grid).map(|n| a(n) + c(n)).collect();
        let u = (1..=self.n_grid).map(|n| a(n - 1) * c(n)).collect();
        RecurrencePair::new(b, u, one)
    }

    /// The difference operator in the weight-symmetrized grid basis.
    pub fn symmetrized_operator(&self) -> SymTridiag<T> {
        let n = self.n_grid;
        let diag = (0..=n)
            .map(|x| {
                let xf = T::from_index(x);
                -(self.forward(xf) + self.backward(xf))
            })
            .collect();
        let off = (0..n)
            .map(|x| {
                let xf = T::from_index(x);
                -(self.forward(xf) * self.backward(xf + T::one())).sqrt()
            })
            .collect();
        SymTridiag::new(diag, off).expect("finite hahn coefficients")
    }
}

/// The Hahn difference operator Y in the grid basis.
pub fn hahn_operator<T: Real>(p: &HahnParams<T>) -> BasisOperator<T> {
    let n = p.n_grid;
    let mut m = DenseMatrix::zeros(n + 1, n + 1);
    for x in 0..=n {
        let xf = T::from_index(x);
        let (b, d) = (p.forward(xf), p.backward(xf));
        m[(x, x)] = -(b + d);
        if x < n {
            m[(x, x + 1)] = b;
        }
        if x > 0 {
            m[(x, x - 1)] = d;
        }
    }
    BasisOperator::new(m, p.grid_tag()).expect("finite hahn operator")
}

/// Orthonormal eigenbasis of the symmetrized Hahn operator.
#[derive(Debug, Clone)]
pub struct HahnBasis<T> {
    pub params: HahnParams<T>,
    /// Column n is dₙ in the grid basis; every first row entry is positive.
    pub vectors: DenseMatrix<T>,
    pub mu: Vec<T>,
    pub weights: Vec<T>,
    pub dual_weights: Vec<T>,
    /// Largest |computed − analytic| eigenvalue deviation, relative to μ_N.
    pub eigenvalue_error: T,
}

/// Eigenvalue tolerance for [`hahn_basis`].
pub const HAHN_EIGENVALUE_TOL: f64 = 1e-9;

pub fn hahn_basis<T: Real>(p: &HahnParams<T>) -> Result<HahnBasis<T>> {
    let n = p.n_grid;
    let eig = sym_tridiag_eig(&p.symmetrized_operator())?;
    let mu: Vec<T> = (0..=n).map(|k| p.eigenvalue(k)).collect();
    let scale = mu[n].abs().max(T::one());
    let mut err = T::zero();
    for (k, &val) in eig.values.iter().enumerate() {
        let nearest = (0..=n)
            .min_by(|&a, &b| {
                (mu[a] - val)
                    .abs()
                    .partial_cmp(&(mu[b] - val).abs())
                    .expect("finite eigenvalues")
            })
            .expect("nonempty");
        if nearest != k {
            return Err(Error::tolerance(
                format!("hahn eigenvalue {k} pairs with degree {nearest}"),
                val.as_f64(),
                HAHN_EIGENVALUE_TOL,
            ));
        }
        err = err.max((val - mu[k]).abs() / scale);
    }
    if err.as_f64() > HAHN_EIGENVALUE_TOL {
        return Err(Error::tolerance("hahn eigenvalues", err.as_f64(), HAHN_EIGENVALUE_TOL));
    }
    let mut vectors = eig.vectors;
    for k in 0..=n {
        if vectors[(0, k)] < T::zero() {
            for s in 0..=n {
                vectors[(s, k)] = -vectors[(s, k)];
            }
        }
    }
    let weights = (0..=n).map(|s| vectors[(s, 0)] * vectors[(s, 0)]).collect();
    let dual_weights = (0..=n).map(|k| vectors[(0, k)] * vectors[(0, k)]).collect();
    Ok(HahnBasis {
        params: *p,
        vectors,
        mu,
        weights,
        dual_weights,
        eigenvalue_error: err,
    })
}

/// Off-band tolerance for [`hahn_recurrence`], relative to ‖X‖_F.
pub const HAHN_LEAKAGE_TOL: f64 = 1e-10;

/// X = diag(0..N) in the Hahn basis as (diagonal, signed off-diagonal).
pub fn hahn_x_band<T: Real>(basis: &HahnBasis<T>) -> Result<(Vec<T>, Vec<T>)> {
    let n = basis.params.n_grid;
    let v = &basis.vectors;
    let grid: Vec<T> = (0..=n).map(T::from_index).collect();
    let xv = v.scale_rows(&grid);
    let t = &v.transpose() * &xv;
    let norm = DenseMatrix::from_diag(&grid).frobenius();
    let leak = t.off_band_norm(1) / norm;
    if leak.as_f64() > HAHN_LEAKAGE_TOL {
        return Err(Error::tolerance("X off-band leakage in hahn basis", leak.as_f64(), HAHN_LEAKAGE_TOL));
    }
    let diag = t.diagonal();
    let off = (0..n).map(|k| T::lit(0.5) * (t[(k, k + 1)] + t[(k + 1, k)])).collect();
    Ok((diag, off))
}

/// Monic recurrence of the Hahn polynomials read off from X in the Hahn basis.
pub fn hahn_recurrence<T: Real>(basis: &HahnBasis<T>) -> Result<RecurrencePair<T>> {
    let (diag, off) = hahn_x_band(basis)?;
    let u = off.iter().map(|&a| a * a).collect();
    RecurrencePair::new(diag, u, T::one())
}
