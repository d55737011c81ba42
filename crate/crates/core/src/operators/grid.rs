use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::operators::basis::{BasisOperator, BasisTag};
use crate::orthopoly::HahnBasis;
use crate::scalar::Real;

/// X = diag(0, 1, …, N) on the grid.
pub fn grid_x<T: Real>(n: usize) -> Result<BasisOperator<T>> {
    if n < 1 {
        return Err(Error::invalid("grid needs N >= 1"));
    }
    let d: Vec<T> = (0..=n).map(T::from_index).collect();
    BasisOperator::new(DenseMatrix::from_diag(&d), BasisTag::Grid { n })
}

fn check_grid<T: Real>(op: &BasisOperator<T>, basis: &HahnBasis<T>) -> Result<()> {
    let want = basis.params.grid_tag();
    if op.basis() != want {
        return Err(Error::BasisMismatch {
            left: op.basis().to_string(),
            right: want.to_string(),
        });
    }
    Ok(())
}

/// Conjugates a grid operator by S = diag(√w), giving its matrix in the
/// orthonormal point-mass frame where the Hahn operator is symmetric.
pub fn symmetrize_grid<T: Real>(op: &BasisOperator<T>, basis: &HahnBasis<T>) -> Result<DenseMatrix<T>> {
    check_grid(op, basis)?;
    let s: Vec<T> = basis.weights.iter().map(|w| w.sqrt()).collect();
    let inv: Vec<T> = s.iter().map(|v| T::one() / *v).collect();
    Ok(op.matrix().scale_rows(&s).scale_columns(&inv))
}

/// Re-expresses a grid operator in the orthonormal Hahn basis.
pub fn to_hahn<T: Real>(op: &BasisOperator<T>, basis: &HahnBasis<T>) -> Result<BasisOperator<T>> {
    let sym = symmetrize_grid(op, basis)?;
    let v = &basis.vectors;
    let m = &(&v.transpose() * &sym) * v;
    BasisOperator::new(m, basis.params.tag())
}
