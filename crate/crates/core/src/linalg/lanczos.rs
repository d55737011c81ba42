use crate::error::{Error, Result};
use crate::linalg::eigen::SymTridiag;
use crate::linalg::matrix::{dot, norm2, DenseMatrix};
use crate::scalar::Real;

/// Output of [`lanczos`].
#[derive(Debug, Clone)]
pub struct LanczosResult<T> {
    pub tridiag: SymTridiag<T>,
    /// Orthonormal Krylov basis, one column per Lanczos vector.
    pub basis: DenseMatrix<T>,
    /// Set when an invariant subspace was found before the full dimension.
    pub breakdown: bool,
}

/// Lanczos tridiagonalization with full reorthogonalization at every step.
///
/// Stops early (with `breakdown = true`) once the next off-diagonal drops
/// below `1e-13 ‖A‖_F`; the returned basis then spans an invariant subspace.
pub fn lanczos<T: Real>(a: &DenseMatrix<T>, start: &[T]) -> Result<LanczosResult<T>> {
    if !a.is_square() || a.rows() != start.len() {
        return Err(Error::Dimension("lanczos needs a square matrix matching the start vector".into()));
    }
    if !a.is_finite() || start.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("lanczos input"));
    }
    let norm_a = a.frobenius();
    if a.asymmetry() > T::lit(1e-12) * norm_a {
        return Err(Error::Asymmetric {
            defect: (a.asymmetry() / norm_a).as_f64(),
        });
    }
    if (norm2(start) - T::one()).abs() > T::lit(1e-12) {
        return Err(Error::invalid("lanczos start vector must have unit norm"));
    }
    let m = a.rows();
    let cut = T::lit(1e-13) * norm_a;
    let mut q: Vec<Vec<T>> = vec![start.to_vec()];
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut breakdown = false;
    loop {
        let j = q.len() - 1;
        let mut w = a.matvec(&q[j]);
        let aj = dot(&w, &q[j]);
        alpha.push(aj);
        // two passes of classical Gram–Schmidt against the whole basis
        for _ in 0..2 {
            for qi in &q {
                let c = dot(&w, qi);
                w.iter_mut().zip(qi).for_each(|(x, &y)| *x = *x - c * y);
            }
        }
        if q.len() == m {
            break;
        }
        let bj = norm2(&w);
        if bj <= cut {
            breakdown = true;
            break;
        }
        beta.push(bj);
        q.push(w.into_iter().map(|x| x / bj).collect());
    }
    Ok(LanczosResult {
        tridiag: SymTridiag::new(alpha, beta)?,
        basis: DenseMatrix::from_columns(&q)?,
        breakdown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagonal_breaks_down_immediately() {
        let a = DenseMatrix::from_diag(&[2.0, 3.0, 5.0]);
        let r = lanczos(&a, &[1.0, 0.0, 0.0]).unwrap();
        assert!(r.breakdown);
        assert_eq!(r.tridiag.diag(), &[2.0]);
        assert_eq!(r.basis.cols(), 1);
    }

    #[test]
    fn random_similarity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b = DenseMatrix::from_fn(20, 20, |_, _| rng.gen_range(-1.0..1.0));
        let a = (&b + &b.transpose()).scale(0.5);
        let mut s: Vec<f64> = (0..20).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = norm2(&s);
        s.iter_mut().for_each(|x| *x /= n);
        let r = lanczos(&a, &s).unwrap();
        assert!(!r.breakdown);
        let proj = &(&r.basis.transpose() * &a) * &r.basis;
        let err = (&proj - &r.tridiag.to_dense()).frobenius();
        assert!(err <= 1e-10 * a.frobenius(), "{err}");
        assert!(r.basis.orthogonality_defect() <= 1e-11);
    }

    #[test]
    fn rejects_non_unit_start() {
        let a = DenseMatrix::<f64>::identity(2);
        assert!(lanczos(&a, &[1.0, 1.0]).is_err());
    }
}
