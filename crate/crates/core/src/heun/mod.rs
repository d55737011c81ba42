//! Differential, algebraic and difference Heun operators.

pub mod algebraic;
pub mod difference;
pub mod differential;
pub mod expansion;
pub mod tridiagonal;
pub mod truncation;

pub use algebraic::{algebraic_heun, explicit_m, match_heun_params, Degeneracy, HeunFit, HeunTau};
pub use difference::{
    degree_excess, difference_heun, heun_hahn, heun_hahn_mismatch, newton_coefficients, param_match_difference,
    DiffHeunParams,
};
pub use differential::{heun_diff_build, poly_diff_matrix, Exponents, HeunDiffParams};
pub use expansion::{wilson_expansion, ExpansionData, ExpansionDeviations};
pub use tridiagonal::{tridiagonal_action, ActionDeviations, TridiagonalAction};
pub use truncation::{psi_basis, psi_residuals, truncation_setup, TruncationData};
