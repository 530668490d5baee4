//! Exact Gaussian-state dynamics of a single level (fermionic or bosonic)
//! coupled to finite discretized baths, with the entropy production split
//! into correlation and environment-displacement contributions.
//!
//! * [`fermion`] — correlation-matrix states, ledgers, classical-correlation bounds.
//! * [`fermion_exact`] — brute-force Fock-space oracle for small baths.
//! * [`boson`] — covariance-matrix states for Caldeira–Leggett type models.
//! * [`fock`] — joint occupation-number distributions (Wick / Hermite).
//! * [`transport`] — counting statistics of heat transfer between two baths.

pub mod boson;
pub mod chain;
mod dd;
pub mod fermion;
pub mod fermion_exact;
pub mod fock;
pub mod linalg;
pub mod quad;
pub mod secular;
pub mod transport;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unphysical state: {0}")]
    Unphysical(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("problem too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use nalgebra::Complex;
pub type C64 = Complex<f64>;
pub type CMat = nalgebra::DMatrix<C64>;
pub type RMat = nalgebra::DMatrix<f64>;
