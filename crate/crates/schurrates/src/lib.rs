//! Exact Schur-Weyl projectors on small tensor powers, finite-n trace oracles, quantum
//! Rényi divergences and the asymptotic rate functions they converge to.
//!
//! The numeric kernel ([`matcore`] and the classical information functions in
//! [`combinat`]) is generic over [`Scalar`] (`f32` or `f64`); everything above it works in
//! `f64` through the aliases below.

pub mod combinat;
pub mod divergences;
pub mod error;
pub mod harness;
pub mod matcore;
pub mod oracle;
pub mod qubit_rt;
pub mod rates;
pub mod scalar;
pub mod schur_weyl;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Double precision complex number.
pub type C64 = num_complex::Complex<f64>;
/// Double precision complex matrix.
pub type ComplexMatrix = matcore::Matrix<f64>;
/// Single precision complex matrix.
pub type ComplexMatrix32 = matcore::Matrix<f32>;
/// Double precision density matrix.
pub type State = matcore::DensityMatrix<f64>;
/// Double precision unitary.
pub type Unitary = matcore::UnitaryMatrix<f64>;
/// Double precision probability vector.
pub type Dist = combinat::Distribution<f64>;
