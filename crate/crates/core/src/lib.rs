//! Finite-time stability tooling for differential inclusions `x' ∈ F(t, x)`.

pub mod certifier;
pub mod cli;
pub mod comparison;
pub mod error;
pub mod hopfield;
pub mod integrator;
pub mod linalg;
pub mod quadrature;
pub mod setvalued;

pub use error::{Error, Result};
