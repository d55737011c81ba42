//! Monic Jacobi and Hahn polynomial families.

pub mod gamma;
pub mod hahn;
pub mod jacobi;
pub mod recurrence;

pub use gamma::{beta_fn, gamma};
pub use hahn::{hahn_basis, hahn_operator, hahn_recurrence, hahn_x_band, HahnBasis, HahnParams};
pub use jacobi::{jacobi_eval, jacobi_norms, jacobi_recurrence, jacobi_recurrence_formal, JacobiParams, NormConstants};
pub use recurrence::RecurrencePair;
