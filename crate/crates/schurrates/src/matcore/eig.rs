use num_complex::Complex;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::states::UnitaryMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition `H = V diag(values) V†` with eigenvalues sorted descending.
#[derive(Clone, Debug)]
pub struct HermitianEig<T> {
    pub values: Vec<T>,
    pub vectors: UnitaryMatrix<T>,
}

impl<T: Scalar> HermitianEig<T> {
    /// Rebuilds `V f(diag) V†`.
    pub fn reconstruct_with(&self, f: impl Fn(T) -> T) -> Matrix<T> {
        let v = self.vectors.matrix();
        let n = self.values.len();
        let fw: Vec<T> = self.values.iter().map(|&w| f(w)).collect();
        Matrix::from_fn(n, n, |i, j| {
            (0..n).fold(Complex::zero(), |acc, k| acc + v[(i, k)] * v[(j, k)].conj() * fw[k])
        })
    }

    pub fn reconstruct(&self) -> Matrix<T> {
        self.reconstruct_with(|w| w)
    }
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Rotations are skipped when `|h_pq| <= eps * sqrt(|h_pp h_qq|)`, which keeps small
/// eigenvalues of graded positive matrices accurate to relative precision.
pub fn hermitian_eig<T: Scalar>(h: &Matrix<T>) -> Result<HermitianEig<T>> {
    let n = h.require_square()?;
    let scale = h.max_abs();
    let dev = h.hermitian_deviation();
    if !(dev <= T::lit(T::VALIDATION_TOL) * scale.max(T::one())) {
        return Err(Error::NotHermitian(dev.to_f64().unwrap_or(f64::NAN)));
    }
    let mut a = h.hermitian_part();
    let mut v = Matrix::<T>::identity(n);
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let b = a[(p, q)];
                let babs = b.norm();
                if babs == T::zero() {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if babs <= eps * (app.abs() * aqq.abs()).sqrt() || babs <= T::min_positive_value() {
                    continue;
                }
                rotated = true;
                let phase = b / babs;
                let theta = (aqq - app) / (T::lit(2.0) * babs);
                let t = if theta.abs() > T::lit(1e150) {
                    T::one() / (T::lit(2.0) * theta)
                } else {
                    let sgn = if theta >= T::zero() { T::one() } else { -T::one() };
                    sgn / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                // G = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on coordinates (p, q).
                let ph_c = phase.conj();
                let g_qp = -ph_c * s;
                let g_qq = ph_c * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c + akq * g_qp;
                    a[(k, q)] = akp * s + akq * g_qq;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c + vkq * g_qp;
                    v[(k, q)] = vkp * s + vkq * g_qq;
                }
                let gc_pq = g_qp.conj();
                let gc_qq = g_qq.conj();
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c + aqk * gc_pq;
                    a[(q, k)] = apk * s + aqk * gc_qq;
                }
                a[(p, q)] = Complex::zero();
                a[(q, p)] = Complex::zero();
                a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
                a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
            }
        }
        if !rotated {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap_or(std::cmp::Ordering::Equal));
            let values = order.iter().map(|&i| a[(i, i)].re).collect();
            let vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
            return Ok(HermitianEig { values, vectors: UnitaryMatrix::from_trusted(vectors) });
        }
    }
    Err(Error::NoConvergence(format!("Jacobi eigensolver after {MAX_SWEEPS} sweeps")))
}

/// Determinant by LU decomposition with partial pivoting.
pub fn det<T: Scalar>(x: &Matrix<T>) -> Result<Complex<T>> {
    let n = x.require_square()?;
    let mut a = x.clone();
    let mut d = Complex::<T>::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[(i, col)].norm().partial_cmp(&a[(j, col)].norm()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(col);
        if a[(pivot, col)].is_zero() {
            return Ok(Complex::zero());
        }
        if pivot != col {
            for k in 0..n {
                let tmp = a[(col, k)];
                a[(col, k)] = a[(pivot, k)];
                a[(pivot, k)] = tmp;
            }
            d = -d;
        }
        let p = a[(col, col)];
        d *= p;
        for i in col + 1..n {
            let factor = a[(i, col)] / p;
            if factor.is_zero() {
                continue;
            }
            for k in col..n {
                let sub = factor * a[(col, k)];
                a[(i, k)] -= sub;
            }
        }
    }
    Ok(d)
}

/// Determinant of the top-left `k`×`k` block, `1 <= k <= dim`.
pub fn leading_principal_minor<T: Scalar>(x: &Matrix<T>, k: usize) -> Result<Complex<T>> {
    let n = x.require_square()?;
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!("minor order {k} for dimension {n}")));
    }
    det(&x.leading_block(k))
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn inverse<T: Scalar>(x: &Matrix<T>) -> Result<Matrix<T>> {
    let n = x.require_square()?;
    let mut a = x.clone();
    let mut inv = Matrix::<T>::identity(n);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[(i, col)].norm().partial_cmp(&a[(j, col)].norm()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(col);
        if a[(pivot, col)].is_zero() {
            return Err(Error::InvalidParameter("singular matrix".into()));
        }
        for k in 0..n {
            let t = a[(col, k)];
            a[(col, k)] = a[(pivot, k)];
            a[(pivot, k)] = t;
            let t = inv[(col, k)];
            inv[(col, k)] = inv[(pivot, k)];
            inv[(pivot, k)] = t;
        }
        let p = a[(col, col)];
        for k in 0..n {
            a[(col, k)] = a[(col, k)] / p;
            inv[(col, k)] = inv[(col, k)] / p;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = a[(i, col)];
            if f.is_zero() {
                continue;
            }
            for k in 0..n {
                let s = f * a[(col, k)];
                a[(i, k)] -= s;
                let s = f * inv[(col, k)];
                inv[(i, k)] -= s;
            }
        }
    }
    Ok(inv)
}

/// `H^t` for positive semidefinite `H`, taken on the support (eigenvalues at or below
/// `support_tol * λ_max` count as zero and stay zero, for any sign of `t`).
pub fn psd_power<T: Scalar>(h: &Matrix<T>, t: T, support_tol: T) -> Result<Matrix<T>> {
    let eig = hermitian_eig(h)?;
    let cut = support_cut(&eig.values, support_tol);
    Ok(eig.reconstruct_with(|w| if w > cut { w.powf(t) } else { T::zero() }))
}

pub(crate) fn support_cut<T: Scalar>(values: &[T], support_tol: T) -> T {
    let top = values.iter().fold(T::zero(), |m, &w| m.max(w.abs()));
    support_tol * top
}
