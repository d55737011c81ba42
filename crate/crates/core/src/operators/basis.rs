use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::Real;

/// The basis a [`BasisOperator`] acts in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisTag {
    /// Coefficients of 1, x, …, x^degree.
    Monomial { degree: usize },
    /// Point masses on the grid {0, …, n}.
    Grid { n: usize },
    /// Monic Jacobi polynomials P̂₀..P̂_degree.
    Jacobi { alpha: f64, beta: f64, degree: usize },
    /// Orthonormal Hahn vectors d₀..d_n.
    Hahn { alpha: f64, beta: f64, n: usize },
}

impl BasisTag {
    pub fn dim(&self) -> usize {
        match *self {
            BasisTag::Monomial { degree } | BasisTag::Jacobi { degree, .. } => degree + 1,
            BasisTag::Grid { n } | BasisTag::Hahn { n, .. } => n + 1,
        }
    }

    /// Polynomial bases are truncations of infinite-dimensional spaces.
    pub fn is_truncated(&self) -> bool {
        matches!(self, BasisTag::Monomial { .. } | BasisTag::Jacobi { .. })
    }
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisTag::Monomial { degree } => write!(f, "monomial({degree})"),
            BasisTag::Grid { n } => write!(f, "grid({n})"),
            BasisTag::Jacobi { alpha, beta, degree } => write!(f, "jacobi({alpha}, {beta}, {degree})"),
            BasisTag::Hahn { alpha, beta, n } => write!(f, "hahn({alpha}, {beta}, {n})"),
        }
    }
}

/// Square matrix acting in a tagged basis.
///
/// On truncated bases only the first `exact` columns are images of the
/// untruncated operator. `raise` bounds how far the operator can raise the
/// polynomial degree.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisOperator<T> {
    matrix: DenseMatrix<T>,
    basis: BasisTag,
    exact: usize,
    raise: usize,
}

impl<T: Real> BasisOperator<T> {
    pub fn new(matrix: DenseMatrix<T>, basis: BasisTag) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != basis.dim() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for basis {basis}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_finite() {
            return Err(Error::NonFinite("operator matrix"));
        }
        let exact = basis.dim();
        Ok(Self {
            matrix,
            basis,
            exact,
            raise: 0,
        })
    }

    /// Declares how many leading columns are exact and the degree raise.
    pub fn with_window(mut self, exact: usize, raise: usize) -> Self {
        if self.basis.is_truncated() {
            self.exact = exact.min(self.basis.dim());
            self.raise = raise;
        }
        self
    }

    pub fn identity(basis: BasisTag) -> Self {
        Self::new(DenseMatrix::identity(basis.dim()), basis).expect("identity is valid")
    }

    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DenseMatrix<T> {
        self.matrix
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of leading input columns on which the matrix is exact.
    pub fn exact_columns(&self) -> usize {
        self.exact
    }

    /// Largest input degree with an exact image, if any.
    pub fn window(&self) -> Option<usize> {
        self.exact.checked_sub(1)
    }

    pub fn raise(&self) -> usize {
        self.raise
    }

    /// The exact columns, all rows.
    pub fn exact_block(&self) -> DenseMatrix<T> {
        self.matrix.submatrix(0, 0, self.dim(), self.exact)
    }

    fn check_basis(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                left: self.basis.to_string(),
                right: other.basis.to_string(),
            });
        }
        Ok(())
    }

    /// `self · other`, i.e. `other` is applied first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        let matrix = self.matrix.try_mul(&other.matrix)?;
        let exact = other.exact.min(self.exact.saturating_sub(other.raise));
        Ok(Self::new(matrix, self.basis)?.with_window(exact, self.raise + other.raise))
    }

    fn combine(&self, other: &Self, matrix: DenseMatrix<T>) -> Result<Self> {
        let exact = self.exact.min(other.exact);
        let raise = self.raise.max(other.raise);
        Ok(Self::new(matrix, self.basis)?.with_window(exact, raise))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        self.combine(other, self.matrix.try_add(&other.matrix)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        self.combine(other, self.matrix.try_sub(&other.matrix)?)
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            matrix: self.matrix.scale(s),
            ..self.clone()
        }
    }

    /// `self + c·I`.
    pub fn shift(&self, c: T) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim() {
            out.matrix[(i, i)] = out.matrix[(i, i)] + c;
        }
        out
    }

    /// Linear combination `Σ cᵢ Aᵢ` over operators sharing a basis.
    pub fn combination(terms: &[(T, &Self)]) -> Result<Self> {
        let (c0, first) = terms
            .first()
            .ok_or_else(|| Error::invalid("empty linear combination"))?;
        let mut acc = first.scale(*c0);
        for (c, op) in &terms[1..] {
            acc = acc.add(&op.scale(*c))?;
        }
        Ok(acc)
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.add(&other.compose(self)?)
    }

    /// Frobenius norm of the difference on the common exact columns.
    pub fn distance(&self, other: &Self) -> Result<T> {
        self.check_basis(other)?;
        let cols = self.exact.min(other.exact);
        let n = self.dim();
        let a = self.matrix.submatrix(0, 0, n, cols);
        let b = other.matrix.submatrix(0, 0, n, cols);
        Ok((&a - &b).frobenius())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_rules() {
        let tag = BasisTag::Monomial { degree: 6 };
        let x = BasisOperator::<f64>::new(DenseMatrix::zeros(7, 7), tag).unwrap().with_window(6, 1);
        let d = BasisOperator::<f64>::new(DenseMatrix::zeros(7, 7), tag).unwrap();
        let xd = x.compose(&d).unwrap();
        assert_eq!((xd.exact_columns(), xd.raise()), (6, 1));
        let xx = x.compose(&x).unwrap();
        assert_eq!((xx.exact_columns(), xx.raise()), (5, 2));
        let xxx = x.compose(&xx).unwrap();
        assert_eq!(xxx.window(), Some(3));
    }

    #[test]
    fn grid_operators_stay_exact() {
        let tag = BasisTag::Grid { n: 3 };
        let a = BasisOperator::<f64>::new(DenseMatrix::identity(4), tag).unwrap().with_window(1, 5);
        assert_eq!(a.exact_columns(), 4);
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = BasisOperator::<f64>::identity(BasisTag::Grid { n: 2 });
        let b = BasisOperator::<f64>::identity(BasisTag::Monomial { degree: 2 });
        assert!(matches!(a.compose(&b), Err(Error::BasisMismatch { .. })));
    }
}
