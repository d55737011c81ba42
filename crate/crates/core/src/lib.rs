//! Algebraic Heun operators for the Jacobi and Hahn bispectral pairs, and a
//! solver for discrete time-and-band limiting built on a commuting
//! tridiagonal operator.
//!
//! Everything is generic over [`Real`]; the aliases below fix `f64`.

pub mod algebra;
pub mod error;
pub mod heun;
pub mod limiting;
pub mod linalg;
pub mod operators;
pub mod orthopoly;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Matrix = linalg::DenseMatrix<f64>;
pub type Operator = operators::BasisOperator<f64>;
pub type Recurrence = orthopoly::RecurrencePair<f64>;
pub type Jacobi = orthopoly::JacobiParams<f64>;
pub type Hahn = orthopoly::HahnParams<f64>;
pub type HahnEigenbasis = orthopoly::HahnBasis<f64>;
pub type Limiting = limiting::LimitingConfig<f64>;
pub type Spectrum = limiting::SpectralReport<f64>;
