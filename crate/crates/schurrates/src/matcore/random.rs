use num_complex::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::matrix::Matrix;
use super::states::{DensityMatrix, UnitaryMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Deterministic generator used for every seeded routine in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Matrix with i.i.d. standard complex Gaussian entries (`E|z|² = 1`).
pub fn ginibre<T: Scalar, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Matrix<T>
where
    StandardNormal: Distribution<T>,
{
    let h = T::FRAC_1_SQRT_2();
    Matrix::from_fn(rows, cols, |_, _| {
        let re: T = StandardNormal.sample(rng);
        let im: T = StandardNormal.sample(rng);
        Complex::new(re * h, im * h)
    })
}

/// Haar-distributed unitary from a caller-supplied generator.
pub fn haar_unitary_with<T: Scalar, R: Rng + ?Sized>(d: usize, rng: &mut R) -> UnitaryMatrix<T>
where
    StandardNormal: Distribution<T>,
{
    loop {
        let g = ginibre::<T, R>(d, d, rng);
        if let Some(q) = orthonormalize_columns(&g) {
            return UnitaryMatrix::from_trusted(q);
        }
    }
}

/// Haar-distributed `d`×`d` unitary, deterministic in `seed`.
pub fn haar_unitary<T: Scalar>(d: usize, seed: u64) -> UnitaryMatrix<T>
where
    StandardNormal: Distribution<T>,
{
    haar_unitary_with(d, &mut seeded_rng(seed))
}

/// Random state `G G† / tr(G G†)` with `G` a `d`×`rank` Ginibre matrix.
pub fn random_density_with<T: Scalar, R: Rng + ?Sized>(
    d: usize,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix<T>>
where
    StandardNormal: Distribution<T>,
{
    if rank == 0 || rank > d {
        return Err(Error::OutOfRange(format!("rank {rank} for dimension {d}")));
    }
    let g = ginibre::<T, R>(d, rank, rng);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    Ok(DensityMatrix::from_trusted(m.scale(T::one() / tr).hermitian_part()))
}

pub fn random_density<T: Scalar>(d: usize, seed: u64, rank: usize) -> Result<DensityMatrix<T>>
where
    StandardNormal: Distribution<T>,
{
    random_density_with(d, rank, &mut seeded_rng(seed))
}

/// Modified Gram-Schmidt with one reorthogonalization pass; `None` if rank deficient.
/// The implied triangular factor has a positive diagonal, so Ginibre input gives Haar output.
fn orthonormalize_columns<T: Scalar>(g: &Matrix<T>) -> Option<Matrix<T>> {
    let (n, m) = (g.rows(), g.cols());
    let mut q = g.clone();
    for j in 0..m {
        for _ in 0..2 {
            for k in 0..j {
                let mut dot = Complex::<T>::zero();
                for i in 0..n {
                    dot += q[(i, k)].conj() * q[(i, j)];
                }
                for i in 0..n {
                    let s = q[(i, k)] * dot;
                    q[(i, j)] -= s;
                }
            }
        }
        let norm = (0..n).fold(T::zero(), |s, i| s + q[(i, j)].norm_sqr()).sqrt();
        if !(norm > T::epsilon() * T::lit(1e3)) {
            return None;
        }
        for i in 0..n {
            q[(i, j)] = q[(i, j)] / norm;
        }
    }
    Some(q)
}
