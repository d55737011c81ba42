use crate::error::{Error, Result};
use crate::linalg::{solve_unit_upper, DenseMatrix};
use crate::operators::basis::{BasisOperator, BasisTag};
use crate::orthopoly::{JacobiParams, RecurrencePair};
use crate::scalar::Real;

/// Multiplication by x on coefficients of 1, x, …, x^K.
///
/// The image of x^K falls outside the space, so only degrees below K are exact.
pub fn monomial_x<T: Real>(k: usize) -> Result<BasisOperator<T>> {
    if k < 1 {
        return Err(Error::invalid("monomial cutoff must be at least 1"));
    }
    let mut m = DenseMatrix::zeros(k + 1, k + 1);
    for j in 0..k {
        m[(j + 1, j)] = T::one();
    }
    Ok(BasisOperator::new(m, BasisTag::Monomial { degree: k })?.with_window(k, 1))
}

/// Hypergeometric operator x(1−x)d² + (α+1−(α+β+2)x)d on monomial coefficients.
pub fn monomial_hypergeom<T: Real>(p: &JacobiParams<T>, k: usize) -> Result<BasisOperator<T>> {
    if k < 2 {
        return Err(Error::invalid("monomial cutoff must be at least 2"));
    }
    let mut m = DenseMatrix::zeros(k + 1, k + 1);
    for j in 0..=k {
        let jf = T::from_index(j);
        m[(j, j)] = p.eigenvalue(j);
        if j >= 1 {
            m[(j - 1, j)] = jf * (jf + p.alpha);
        }
    }
    Ok(BasisOperator::new(m, BasisTag::Monomial { degree: k })?.with_window(k + 1, 0))
}

/// Row n holds the monomial coefficients of P̂ₙ (lower triangular, unit diagonal).
pub fn jacobi_basis_matrix<T: Real>(rec: &RecurrencePair<T>, k: usize) -> Result<DenseMatrix<T>> {
    if k > rec.max_degree() {
        return Err(Error::Dimension(format!(
            "recurrence of degree {} cannot cover {k}",
            rec.max_degree()
        )));
    }
    Ok(rec.coefficients(k))
}

/// Re-expresses a monomial-basis operator in the monic Jacobi basis.
pub fn to_jacobi<T: Real>(
    op: &BasisOperator<T>,
    p: &JacobiParams<T>,
    rec: &RecurrencePair<T>,
) -> Result<BasisOperator<T>> {
    let k = match op.basis() {
        BasisTag::Monomial { degree } => degree,
        other => {
            return Err(Error::BasisMismatch {
                left: other.to_string(),
                right: "monomial".into(),
            })
        }
    };
    // columns of `pm` are the P̂ₙ
    let pm = jacobi_basis_matrix(rec, k)?.transpose();
    let ap = op.matrix().try_mul(&pm)?;
    let m = solve_unit_upper(&pm, &ap);
    let tag = BasisTag::Jacobi {
        alpha: p.alpha.as_f64(),
        beta: p.beta.as_f64(),
        degree: k,
    };
    Ok(BasisOperator::new(m, tag)?.with_window(op.exact_columns(), op.raise()))
}
