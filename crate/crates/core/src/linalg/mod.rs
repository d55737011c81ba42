//! Dense linear algebra for small symmetric problems.

pub mod eigen;
pub mod gram;
pub mod lanczos;
pub mod lstsq;
pub mod matrix;
pub mod quadrature;

pub use eigen::{dense_sym_eig, fix_sign, sym_tridiag_eig, EigenDecomposition, SymTridiag, MAX_QL_ITERATIONS};
pub use gram::gram_eig;
pub use lanczos::{lanczos, LanczosResult};
pub use lstsq::{least_squares, LeastSquares};
pub use matrix::{dot, norm2, solve_unit_upper, DenseMatrix};
pub use quadrature::{golub_welsch, Quadrature};
