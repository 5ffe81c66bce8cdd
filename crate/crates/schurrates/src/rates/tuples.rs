use num_complex::Complex;
use serde::Serialize;

use crate::combinat::{factorial, s_hat};
use crate::error::{Error, Result};
use crate::matcore::det;
use crate::{ComplexMatrix, Dist, Unitary};

/// Nonnegative weights on ordered `k`-tuples over `[d]`, stored densely by the index
/// `Σ t_i d^{k-1-i}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TupleDistribution {
    k: usize,
    d: usize,
    probs: Vec<f64>,
}

impl TupleDistribution {
    pub fn new(k: usize, d: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != d.pow(k as u32) {
            return Err(Error::Dimension(format!("{} weights for d^k = {}", probs.len(), d.pow(k as u32))));
        }
        if let Some(bad) = probs.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidDistribution(format!("weight {bad}")));
        }
        Ok(Self { k, d, probs })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn tuple(&self, idx: usize) -> Vec<u8> {
        let mut t = vec![0u8; self.k];
        let mut rest = idx;
        for slot in t.iter_mut().rev() {
            *slot = (rest % self.d) as u8;
            rest /= self.d;
        }
        t
    }

    pub fn index(&self, t: &[u8]) -> usize {
        t.iter().fold(0, |acc, &c| acc * self.d + c as usize)
    }

    /// Indices of the tuples without repeated letters.
    pub fn repetition_free(&self) -> Vec<usize> {
        (0..self.probs.len())
            .filter(|&idx| {
                let t = self.tuple(idx);
                (0..t.len()).all(|i| !t[i + 1..].contains(&t[i]))
            })
            .collect()
    }

    /// `p([d]^k_i)`: mass of the tuples that contain letter `i`.
    pub fn letter_mass(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.d];
        for (idx, &p) in self.probs.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let t = self.tuple(idx);
            for i in 0..self.d {
                if t.contains(&(i as u8)) {
                    out[i] += p;
                }
            }
        }
        out
    }

    pub fn l1(&self, other: &Self) -> f64 {
        self.probs.iter().zip(&other.probs).map(|(a, b)| (a - b).abs()).sum()
    }
}

/// `p_k(t) = |⟨e_t, A^{⊗k} v_k⟩|²` with unit-norm `v_k`, i.e. `|det A[t, 1..k]|² / k!`.
pub fn p_k_distribution(a: &ComplexMatrix, k: usize) -> Result<TupleDistribution> {
    p_k_distribution_scaled(a, k, 1.0 / (factorial(k) as f64).sqrt())
}

/// `p_k` for `v_k = c Σ_τ sgn(τ) 𝔹(τ) e_1⊗…⊗e_k`, i.e. `c² |det A[t, 1..k]|²`.
pub fn p_k_distribution_scaled(a: &ComplexMatrix, k: usize, c: f64) -> Result<TupleDistribution> {
    let d = a.require_square()?;
    if k == 0 || k > d {
        return Err(Error::OutOfRange(format!("k = {k} outside 1..={d}")));
    }
    let cols: Vec<usize> = (0..k).collect();
    let mut probs = vec![0.0; d.pow(k as u32)];
    let shell = TupleDistribution { k, d, probs: Vec::new() };
    for idx in 0..probs.len() {
        let t = shell.tuple(idx);
        if (0..k).any(|i| t[i + 1..].contains(&t[i])) {
            continue;
        }
        let rows: Vec<usize> = t.iter().map(|&x| x as usize).collect();
        let m: Complex<f64> = det(&a.select(&rows, &cols))?;
        probs[idx] = c * c * m.norm_sqr();
    }
    TupleDistribution::new(k, d, probs)
}

/// Both sides of `Σ_{t ∋ j} p_k(t) = Σ_{i≤k} |u_{ji}|²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CauchyBinet {
    pub lhs: f64,
    pub rhs: f64,
    pub diff: f64,
}

/// Evaluates the Cauchy-Binet type identity for letter `j` (0-based) with the unit-norm `v_k`.
pub fn cauchy_binet_check(u: &Unitary, k: usize, j: usize) -> Result<CauchyBinet> {
    cauchy_binet_check_scaled(u, k, j, 1.0 / (factorial(k) as f64).sqrt())
}

pub(crate) fn cauchy_binet_check_scaled(u: &Unitary, k: usize, j: usize, c: f64) -> Result<CauchyBinet> {
    let d = u.dim();
    if j >= d {
        return Err(Error::OutOfRange(format!("j = {j} outside 0..{d}")));
    }
    let p = p_k_distribution_scaled(u.matrix(), k, c)?;
    let lhs = p.letter_mass()[j];
    let rhs: f64 = (0..k).map(|i| u.matrix()[(j, i)].norm_sqr()).sum();
    Ok(CauchyBinet { lhs, rhs, diff: (lhs - rhs).abs() })
}

/// Both sides of `Σ_k ŝ(k)‖p(·|k) − p_k‖₁ ≥ ‖q − q̃‖₁`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormEstimate {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub q: Vec<f64>,
}

/// Checks the norm estimate for conditionals `p(·|k) ∈ 𝔓(q_k, k)`, `k = 1..d`.
///
/// `q = Σ_k ŝ(k) q_k` is formed from the given `q_k`; inputs whose letter masses differ from
/// `k q_k` are rejected.
pub fn norm_estimate_check(
    s: &Dist,
    u: &Unitary,
    q_k: &[Dist],
    conditionals: &[TupleDistribution],
) -> Result<NormEstimate> {
    let d = u.dim();
    if s.len() != d || q_k.len() != d || conditionals.len() != d {
        return Err(Error::Dimension(format!("expected {d} entries per list")));
    }
    let sh = s_hat(s)?;
    let mut q = vec![0.0; d];
    let mut lhs = 0.0;
    for k in 1..=d {
        let (qk, cond) = (&q_k[k - 1], &conditionals[k - 1]);
        if cond.k() != k || cond.d() != d || qk.len() != d {
            return Err(Error::Dimension(format!("conditional {k} has the wrong shape")));
        }
        if (cond.total() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDistribution(format!("conditional {k} has mass {}", cond.total())));
        }
        let free = cond.repetition_free();
        if cond.probs().iter().enumerate().any(|(i, &p)| p > 1e-15 && !free.contains(&i)) {
            return Err(Error::InvalidDistribution(format!("conditional {k} charges repeated letters")));
        }
        for (m, &target) in cond.letter_mass().iter().zip(qk.probs()) {
            if (m - k as f64 * target).abs() > 1e-9 {
                return Err(Error::InvalidDistribution(format!("conditional {k} violates its marginal")));
            }
        }
        let pk = p_k_distribution(u.matrix(), k)?;
        lhs += sh.probs()[k - 1] * cond.l1(&pk);
        for (qi, &v) in q.iter_mut().zip(qk.probs()) {
            *qi += sh.probs()[k - 1] * v;
        }
    }
    let qt = super::theta::theta_minimizer_location(s, u)?;
    let rhs: f64 = q.iter().zip(qt.probs()).map(|(a, b)| (a - b).abs()).sum();
    Ok(NormEstimate { lhs, rhs, holds: lhs >= rhs - 1e-10, q })
}
