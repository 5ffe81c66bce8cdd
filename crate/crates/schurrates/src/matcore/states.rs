use num_traits::One;

use super::eig::hermitian_eig;
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Hermitian positive semidefinite matrix of unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: Matrix<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Validates Hermiticity, positivity and unit trace at the scalar type's validation tolerance.
    pub fn new(matrix: Matrix<T>) -> Result<Self> {
        matrix.require_square()?;
        let tol = T::lit(T::VALIDATION_TOL);
        let dev = matrix.hermitian_deviation();
        if !(dev <= tol) {
            return Err(Error::NotHermitian(dev.to_f64().unwrap_or(f64::NAN)));
        }
        let tr = matrix.trace().re;
        if !((tr - T::one()).abs() <= tol) {
            return Err(Error::BadTrace(tr.to_f64().unwrap_or(f64::NAN)));
        }
        let eig = hermitian_eig(&matrix)?;
        let min = eig.values.last().copied().unwrap_or(T::zero());
        if min < -tol {
            return Err(Error::NotPositive(min.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { matrix: matrix.hermitian_part() })
    }

    /// Normalizes a nonzero PSD matrix by its trace and validates the result.
    pub fn from_psd(matrix: &Matrix<T>) -> Result<Self> {
        let tr = matrix.trace().re;
        if !(tr > T::zero()) {
            return Err(Error::BadTrace(tr.to_f64().unwrap_or(f64::NAN)));
        }
        Self::new(matrix.scale(T::one() / tr))
    }

    pub(crate) fn from_trusted(matrix: Matrix<T>) -> Self {
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.matrix
    }

    /// Spectrum sorted descending.
    pub fn spectrum(&self) -> Result<Vec<T>> {
        Ok(hermitian_eig(&self.matrix)?.values)
    }

    /// Diagonal of the matrix in the computational basis.
    pub fn pinching(&self) -> Vec<T> {
        self.matrix.diag().iter().map(|z| z.re).collect()
    }

    /// `U ρ U†`.
    pub fn conjugate(&self, u: &UnitaryMatrix<T>) -> Self {
        let m = &(u.matrix() * &self.matrix) * &u.matrix().adjoint();
        Self { matrix: m.hermitian_part() }
    }
}

/// Square matrix with `U†U = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix<T> {
    matrix: Matrix<T>,
}

impl<T: Scalar> UnitaryMatrix<T> {
    pub fn new(matrix: Matrix<T>) -> Result<Self> {
        let n = matrix.require_square()?;
        let dev = (&matrix.adjoint() * &matrix).max_abs_diff(&Matrix::identity(n));
        if !(dev <= T::lit(T::VALIDATION_TOL)) {
            return Err(Error::NotUnitary(dev.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { matrix })
    }

    pub(crate) fn from_trusted(matrix: Matrix<T>) -> Self {
        Self { matrix }
    }

    pub fn identity(n: usize) -> Self {
        Self { matrix: Matrix::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self { matrix: self.matrix.adjoint() }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { matrix: &self.matrix * &other.matrix }
    }

    /// Column permutation matrix with `P e_j = e_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Matrix::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m[(i, j)] = num_complex::Complex::one();
        }
        Self { matrix: m }
    }
}
