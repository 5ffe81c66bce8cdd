//! Complex matrix kernel: Hermitian eigendecomposition, minors, tensor powers and
//! seeded random unitaries and states.

mod eig;
mod matrix;
mod random;
mod states;
mod tensor;

pub use eig::{det, hermitian_eig, inverse, leading_principal_minor, psd_power, HermitianEig};
pub(crate) use eig::support_cut;
pub use matrix::Matrix;
pub use random::{
    ginibre, haar_unitary, haar_unitary_with, random_density, random_density_with, seeded_rng,
};
pub use states::{DensityMatrix, UnitaryMatrix};
pub use tensor::tensor_power_apply;
