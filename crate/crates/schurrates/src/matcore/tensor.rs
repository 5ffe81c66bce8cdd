use num_complex::Complex;
use num_traits::Zero;

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `(X^{⊗n}) v` applied one tensor factor at a time.
///
/// Basis index `x_1 … x_n` maps to `Σ x_i d^{n-i}`, so the first factor is the most
/// significant digit (the ordering used by [`Matrix::kron`]).
pub fn tensor_power_apply<T: Scalar>(x: &Matrix<T>, n: usize, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let d = x.require_square()?;
    let len = d.checked_pow(n as u32).ok_or_else(|| Error::Dimension("d^n overflows".into()))?;
    if v.len() != len {
        return Err(Error::Dimension(format!("vector of length {} for d^n = {len}", v.len())));
    }
    let mut cur = v.to_vec();
    let mut next = vec![Complex::<T>::zero(); len];
    let mut buf = vec![Complex::<T>::zero(); d];
    for mode in 0..n {
        let stride = d.pow((n - 1 - mode) as u32);
        let block = stride * d;
        for base in (0..len).step_by(block) {
            for off in 0..stride {
                for (a, slot) in buf.iter_mut().enumerate() {
                    *slot = cur[base + a * stride + off];
                }
                for r in 0..d {
                    let mut acc = Complex::zero();
                    for (c, b) in buf.iter().enumerate() {
                        acc += x[(r, c)] * *b;
                    }
                    next[base + r * stride + off] = acc;
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(cur)
}
