//! Bispectral operators in monomial, Jacobi, grid and Hahn bases.

pub mod basis;
pub mod duality;
pub mod grid;
pub mod monomial;

pub use basis::{BasisOperator, BasisTag};
pub use duality::{leonard_check, orthonormal_values, DualityData};
pub use grid::{grid_x, symmetrize_grid, to_hahn};
pub use monomial::{jacobi_basis_matrix, monomial_hypergeom, monomial_x, to_jacobi};
