use crate::error::{Error, Result};
use crate::heun::algebraic::{algebraic_heun, HeunTau};
use crate::linalg::{norm2, DenseMatrix};
use crate::operators::{monomial_hypergeom, monomial_x, BasisOperator};
use crate::orthopoly::{jacobi_recurrence_formal, JacobiParams};
use crate::scalar::Real;

/// Heun coefficients for which M preserves polynomials of degree ≤ N.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationData<T> {
    pub n: usize,
    /// ν = N + 1.
    pub nu: T,
    /// τ₂ = (1−N)/2, τ₁ = 1−τ₂, τ₃ from the truncation condition, τ₄ = 0,
    /// and τ₀ shifting the spectrum so that M x^N = 0.
    pub tau: HeunTau<T>,
    /// Parameters of the reversed Jacobi family: α̃ = −N−α−β−2, β̃ = β.
    pub alpha_t: T,
    pub beta_t: T,
    /// λ̃ₙ = n(n+α̃+β̃+1).
    pub lambda_t: Vec<T>,
    /// ξ_{N+1} = τ₁λ_N + τ₂λ_{N+1} + τ₃, zero up to rounding.
    pub xi_top: T,
    /// 2(τ₂+ν)−α−β−7, which equals N−α−β−4.
    pub alpha_t_alternative: T,
}

pub fn truncation_setup<T: Real>(p: &JacobiParams<T>, n: usize) -> Result<TruncationData<T>> {
    if n < 1 {
        return Err(Error::invalid("truncation degree must be at least 1"));
    }
    let nf = T::from_index(n);
    let one = T::one();
    let two = T::lit(2.0);
    let nu = nf + one;
    let tau2 = (two - nu) / two;
    let tau1 = one - tau2;
    let s = p.sum();
    let tau3 = (T::lit(4.0) + s - nu) * (tau2 + nu - one) - nu * tau2;
    let base = HeunTau::new([T::zero(), tau1, tau2, tau3, T::zero()]);
    let xi_top = tau1 * p.eigenvalue(n) + tau2 * p.eigenvalue(n + 1) + tau3;
    let m0 = truncated_operator(p, &base, n)?;
    let tau = HeunTau {
        tau0: -m0.matrix()[(n, n)],
        ..base
    };
    let alpha_t = -nf - s - two;
    let beta_t = p.beta;
    let lambda_t = (0..=n)
        .map(|k| {
            let k = T::from_index(k);
            k * (k + alpha_t + beta_t + one)
        })
        .collect();
    Ok(TruncationData {
        n,
        nu,
        tau,
        alpha_t,
        beta_t,
        lambda_t,
        xi_top,
        alpha_t_alternative: two * (tau2 + nu) - s - T::lit(7.0),
    })
}

fn truncated_operator<T: Real>(p: &JacobiParams<T>, t: &HeunTau<T>, n: usize) -> Result<BasisOperator<T>> {
    let k = n + 1;
    algebraic_heun(&monomial_x(k)?, &monomial_hypergeom(p, k)?, t)
}

impl<T: Real> TruncationData<T> {
    /// M on monomials up to degree N+1; columns 0..=N are exact.
    pub fn operator(&self, p: &JacobiParams<T>) -> Result<BasisOperator<T>> {
        truncated_operator(p, &self.tau, self.n)
    }

    /// The (N+1)×(N+1) block of M on degrees ≤ N.
    pub fn block(&self, p: &JacobiParams<T>) -> Result<DenseMatrix<T>> {
        let m = self.operator(p)?;
        Ok(m.matrix().submatrix(0, 0, self.n + 1, self.n + 1))
    }

    /// Weight M sends from degrees ≤ N into degree N+1, relative to ‖M‖_F.
    pub fn leakage(&self, p: &JacobiParams<T>) -> Result<T> {
        let m = self.operator(p)?;
        let n = self.n;
        let top: T = (0..=n).map(|j| m.matrix()[(n + 1, j)].powi(2)).sum();
        Ok(top.sqrt() / m.exact_block().frobenius())
    }
}

/// Column n holds the monomial coefficients of ψₙ(x) = x^N P̂ₙ^{(α̃,β̃)}(1/x).
pub fn psi_basis<T: Real>(td: &TruncationData<T>) -> Result<DenseMatrix<T>> {
    let n = td.n;
    let rec = jacobi_recurrence_formal(td.alpha_t, td.beta_t, n)?;
    let c = rec.coefficients(n);
    let mut psi = DenseMatrix::zeros(n + 1, n + 1);
    for k in 0..=n {
        for j in 0..=k {
            psi[(n - j, k)] = c[(k, j)];
        }
    }
    Ok(psi)
}

/// ‖Mψₙ − λ̃ₙψₙ‖ / (‖M‖_F ‖ψₙ‖) for each n.
pub fn psi_residuals<T: Real>(td: &TruncationData<T>, p: &JacobiParams<T>) -> Result<Vec<T>> {
    let m = td.block(p)?;
    let psi = psi_basis(td)?;
    let norm = m.frobenius();
    Ok((0..=td.n)
        .map(|k| {
            let v = psi.column(k);
            let mv = m.matvec(&v);
            let r: Vec<T> = mv.iter().zip(&v).map(|(&a, &b)| a - td.lambda_t[k] * b).collect();
            norm2(&r) / (norm * norm2(&v))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_one() {
        let p = JacobiParams::<f64>::new(0.2, 0.4).unwrap();
        let td = truncation_setup(&p, 1).unwrap();
        assert_eq!(td.tau.tau2, 0.0);
        assert_eq!(td.nu, 2.0);
    }

    #[test]
    fn preserves_and_diagonalizes() {
        let p = JacobiParams::<f64>::new(0.2, 0.4).unwrap();
        let td = truncation_setup(&p, 4).unwrap();
        assert!(td.xi_top.abs() < 1e-12);
        assert!(td.leakage(&p).unwrap() < 1e-12);
        assert!((td.alpha_t_alternative - (4.0 - 0.6 - 4.0)).abs() < 1e-12);
        let res = psi_residuals(&td, &p).unwrap();
        assert!(res.iter().all(|&r| r < 1e-12), "{res:?}");
        let psi = psi_basis(&td).unwrap();
        assert_eq!(psi.column(0), vec![0.0, 0.0, 0.0, 0.0, 1.0]);
    }
}
