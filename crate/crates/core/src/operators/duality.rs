use crate::error::{Error, Result};
use crate::linalg::{sym_tridiag_eig, DenseMatrix};
use crate::orthopoly::hahn::HAHN_EIGENVALUE_TOL;
use crate::orthopoly::HahnBasis;
use crate::scalar::Real;

/// Hahn polynomials and their duals sampled on both spectra.
#[derive(Debug, Clone)]
pub struct DualityData<T> {
    /// ⟨eₛ, dₙ⟩ at (s, n).
    pub overlap: DenseMatrix<T>,
    pub weights: Vec<T>,
    pub dual_weights: Vec<T>,
    /// φₙ(λₛ) at (s, n), with λₛ = s.
    pub phi: DenseMatrix<T>,
    /// χₛ(μₙ) at (s, n).
    pub chi: DenseMatrix<T>,
}

/// Orthonormal polynomials of a symmetric tridiagonal (diag, off) at `x`.
pub fn orthonormal_values<T: Real>(diag: &[T], off: &[T], x: T) -> Vec<T> {
    let n = diag.len();
    let mut p = Vec::with_capacity(n);
    p.push(T::one());
    for k in 0..n - 1 {
        let mut v = (x - diag[k]) * p[k];
        if k > 0 {
            v = v - off[k - 1] * p[k - 1];
        }
        p.push(v / off[k]);
    }
    p
}

impl<T: Real> DualityData<T> {
    /// φₙ(λₛ) and χₛ(μₙ) are read off the eigenvectors of the two Jacobi
    /// matrices: the closed-form Hahn matrix has eigenvalues λₛ = s and
    /// eigenvectors uₛ with φₙ(λₛ) = uₛ[n]/uₛ[0]; the symmetrized difference
    /// operator is the Jacobi matrix of the duals. Forward recurrences lose
    /// all accuracy for N beyond about 20.
    pub fn from_basis(basis: &HahnBasis<T>) -> Result<Self> {
        let p = &basis.params;
        let n = p.n_grid;
        let jm = p.recurrence()?.jacobi_matrix(n + 1)?;
        let eig = sym_tridiag_eig(&jm)?;
        let mut err = T::zero();
        for (s, &v) in eig.values.iter().enumerate() {
            err = err.max((v - T::from_index(s)).abs());
        }
        let scale = T::from_index(n);
        if (err / scale).as_f64() > HAHN_EIGENVALUE_TOL {
            return Err(Error::tolerance("hahn jacobi matrix spectrum", (err / scale).as_f64(), HAHN_EIGENVALUE_TOL));
        }
        let u = &eig.vectors;
        let v = &basis.vectors;
        // dₙ[0] > 0 makes X's off-diagonals negative in the Hahn basis, which
        // flips the sign of every odd-degree φₙ relative to the positive
        // off-diagonal matrix
        let parity = |k: usize| if k % 2 == 0 { T::one() } else { -T::one() };
        let phi = DenseMatrix::from_fn(n + 1, n + 1, |s, k| parity(k) * u[(k, s)] / u[(0, s)]);
        let chi = DenseMatrix::from_fn(n + 1, n + 1, |s, k| v[(s, k)] / v[(0, k)]);
        Ok(Self {
            overlap: v.clone(),
            weights: p.weights(),
            dual_weights: basis.dual_weights.clone(),
            phi,
            chi,
        })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }
}

/// Largest deviation among √wₛ φₙ(λₛ), √w̃ₙ χₛ(μₙ) and ⟨eₛ, dₙ⟩, compared pairwise.
pub fn leonard_check<T: Real>(d: &DualityData<T>) -> T {
    let m = d.dim();
    let mut worst = T::zero();
    for s in 0..m {
        for n in 0..m {
            let left = d.weights[s].sqrt() * d.phi[(s, n)];
            let right = d.dual_weights[n].sqrt() * d.chi[(s, n)];
            let o = d.overlap[(s, n)];
            worst = worst
                .max((left - right).abs())
                .max((left - o).abs())
                .max((right - o).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::{hahn_basis, hahn_x_band, HahnParams};

    #[test]
    fn two_point_duality() {
        let b = hahn_basis(&HahnParams::<f64>::new(0.0, 0.0, 1).unwrap()).unwrap();
        let d = DualityData::from_basis(&b).unwrap();
        assert!(leonard_check(&d) <= 1e-14);
        assert_eq!(d.phi[(0, 0)], 1.0);
        assert_eq!(d.chi[(0, 1)], 1.0);
    }

    #[test]
    fn recurrence_values_agree_for_small_grids() {
        let b = hahn_basis(&HahnParams::<f64>::new(0.3, 0.7, 8).unwrap()).unwrap();
        let d = DualityData::from_basis(&b).unwrap();
        let (diag, off) = hahn_x_band(&b).unwrap();
        for s in 0..=8 {
            let vals = orthonormal_values(&diag, &off, s as f64);
            for k in 0..=8 {
                assert!((vals[k] - d.phi[(s, k)]).abs() < 1e-9 * vals[k].abs().max(1.0));
            }
        }
    }

    #[test]
    fn orthogonality_with_weights() {
        let b = hahn_basis(&HahnParams::<f64>::new(0.3, 0.7, 12).unwrap()).unwrap();
        let d = DualityData::from_basis(&b).unwrap();
        for n in 0..=12 {
            for m in 0..=12 {
                let g: f64 = (0..=12).map(|s| d.weights[s] * d.phi[(s, n)] * d.phi[(s, m)]).sum();
                let h: f64 = (0..=12).map(|k| d.dual_weights[k] * d.chi[(n, k)] * d.chi[(m, k)]).sum();
                let want = if n == m { 1.0 } else { 0.0 };
                assert!((g - want).abs() < 1e-10 && (h - want).abs() < 1e-10);
            }
        }
    }
}
