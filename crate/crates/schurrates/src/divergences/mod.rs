//! Quantum relative entropy, the α-z Rényi family and its sandwiched and reverse
//! sandwiched members, the corner operator and the closed form of `lim_{α→1} D̂_α`.
//!
//! All values are in bits.

use std::f64::consts::LN_2;

use num_complex::Complex;

use crate::combinat::kl;
use crate::error::{Error, Result};
use crate::matcore::{hermitian_eig, inverse, leading_principal_minor, support_cut, HermitianEig};
use crate::{ComplexMatrix, State};

/// Eigenvalues at or below this fraction of the largest one are treated as zero.
pub const SUPPORT_TOL: f64 = 1e-12;

/// Gap in `ln` units above which the graded eigenvalue solver splits scales.
const SCALE_GAP: f64 = 40.0;

/// A divergence in bits together with the support condition it was evaluated under.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DivergenceValue {
    /// Value in bits, possibly `+∞`.
    pub value: f64,
    /// Whether `supp ρ ⊆ supp σ` held.
    pub support_ok: bool,
}

impl DivergenceValue {
    fn finite(value: f64) -> Self {
        Self { value, support_ok: true }
    }

    fn infinite() -> Self {
        Self { value: f64::INFINITY, support_ok: false }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }
}

fn check_dims(rho: &State, sigma: &State) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::Dimension(format!("states of dimension {} and {}", rho.dim(), sigma.dim())));
    }
    Ok(())
}

fn support_indices(eig: &HermitianEig<f64>) -> Vec<usize> {
    let cut = support_cut(&eig.values, SUPPORT_TOL);
    (0..eig.values.len()).filter(|&i| eig.values[i] > cut).collect()
}

/// Weight of `supp ρ` outside `supp σ`, `Σ_{i∈supp ρ, j∉supp σ} |⟨a_i, b_j⟩|²`.
fn support_leak(a: &HermitianEig<f64>, b: &HermitianEig<f64>) -> f64 {
    let sa = support_indices(a);
    let sb = support_indices(b);
    let (va, vb) = (a.vectors.matrix(), b.vectors.matrix());
    let d = a.values.len();
    let mut leak = 0.0;
    for &i in &sa {
        for j in (0..d).filter(|j| !sb.contains(j)) {
            let ov: Complex<f64> = (0..d).map(|r| va[(r, i)].conj() * vb[(r, j)]).sum();
            leak += ov.norm_sqr();
        }
    }
    leak
}

fn leaks(a: &HermitianEig<f64>, b: &HermitianEig<f64>) -> bool {
    support_leak(a, b) > 1e-10
}

/// `D(ρ‖σ) = tr ρ(log ρ − log σ)`.
pub fn quantum_relative_entropy(rho: &State, sigma: &State) -> Result<DivergenceValue> {
    check_dims(rho, sigma)?;
    let a = hermitian_eig(rho.matrix())?;
    let b = hermitian_eig(sigma.matrix())?;
    if leaks(&a, &b) {
        return Ok(DivergenceValue::infinite());
    }
    let d = rho.dim();
    let sb = support_indices(&b);
    let (va, vb) = (a.vectors.matrix(), b.vectors.matrix());
    let mut value = 0.0;
    for i in support_indices(&a) {
        let r = a.values[i];
        value += r * r.log2();
        for &j in &sb {
            let ov: Complex<f64> = (0..d).map(|k| va[(k, i)].conj() * vb[(k, j)]).sum();
            value -= r * ov.norm_sqr() * b.values[j].log2();
        }
    }
    Ok(DivergenceValue::finite(value))
}

/// `V f(w) V†` over the support of an eigendecomposition (zero elsewhere).
fn support_function(eig: &HermitianEig<f64>, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    let cut = support_cut(&eig.values, SUPPORT_TOL);
    eig.reconstruct_with(|w| if w > cut { f(w) } else { 0.0 })
}

/// Natural logs of the eigenvalues of `D X D` with `D = diag(r_i^a)`, `r_i > 0`.
///
/// When the exponents `a ln r_i` spread over more than the double range, the scales are
/// split into clusters and each cluster contributes the eigenvalues of its Schur complement
/// (given all larger scales), computed at its own scale. Zero eigenvalues come back as `-∞`.
fn graded_log_eigs(r: &[f64], a: f64, x: &ComplexMatrix) -> Result<Vec<f64>> {
    let k = r.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut order: Vec<usize> = (0..k).collect();
    let ell: Vec<f64> = r.iter().map(|&v| a * v.ln()).collect();
    order.sort_by(|&i, &j| ell[j].total_cmp(&ell[i]));
    let ls: Vec<f64> = order.iter().map(|&i| ell[i]).collect();
    let xs = x.select(&order, &order);

    let mut clusters: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..k {
        if ls[i - 1] - ls[i] > SCALE_GAP {
            clusters.push((start, i));
            start = i;
        }
    }
    clusters.push((start, k));

    if clusters.len() > 1 {
        let ev = hermitian_eig(&xs)?;
        let pd = ev.values.last().copied().unwrap_or(0.0) > 1e-13 * ev.values[0].abs().max(f64::MIN_POSITIVE);
        if !pd {
            clusters = vec![(0, k)];
        }
    }

    let mut out = Vec::with_capacity(k);
    for &(lo, hi) in &clusters {
        let idx: Vec<usize> = (lo..hi).collect();
        let mut s = xs.select(&idx, &idx);
        if lo > 0 {
            let prev: Vec<usize> = (0..lo).collect();
            let inv = inverse(&xs.select(&prev, &prev))?;
            let corr = &(&xs.select(&idx, &prev) * &inv) * &xs.select(&prev, &idx);
            s = (&s - &corr).hermitian_part();
        }
        let m = ls[lo];
        let scale: Vec<f64> = ls[lo..hi].iter().map(|&l| (l - m).exp()).collect();
        let h = ComplexMatrix::from_fn(hi - lo, hi - lo, |i, j| s[(i, j)] * (scale[i] * scale[j]));
        for v in hermitian_eig(&h.hermitian_part())?.values {
            out.push(if v > 0.0 { 2.0 * m + v.ln() } else { f64::NEG_INFINITY });
        }
    }
    Ok(out)
}

/// `ln Σ_i exp(w · l_i)`, with `0·∞` terms dropped.
fn log_sum_pow(logs: &[f64], w: f64) -> f64 {
    let terms: Vec<f64> = logs.iter().filter(|l| l.is_finite()).map(|&l| w * l).collect();
    let zero = logs.iter().any(|l| !l.is_finite());
    if zero && w < 0.0 {
        return f64::INFINITY;
    }
    let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !top.is_finite() {
        return top;
    }
    top + terms.iter().map(|&t| (t - top).exp()).sum::<f64>().ln()
}

/// `ln tr{(Y^a X Y^a)^w}` where `Y` is given by its eigendecomposition and `X` is a full
/// matrix in the computational basis. Only the support of `Y` enters.
fn log_trace_power(outer: &HermitianEig<f64>, a: f64, x: &ComplexMatrix, w: f64) -> Result<f64> {
    let sup = support_indices(outer);
    let v = outer.vectors.matrix();
    let d = v.rows();
    let vs = ComplexMatrix::from_fn(d, sup.len(), |i, j| v[(i, sup[j])]);
    let xs = (&(&vs.adjoint() * x) * &vs).hermitian_part();
    let r: Vec<f64> = sup.iter().map(|&i| outer.values[i]).collect();
    Ok(log_sum_pow(&graded_log_eigs(&r, a, &xs)?, w))
}

/// α-z Rényi divergence `(1/(α−1)) log tr{(ρ^{α/2z} σ^{(1−α)/z} ρ^{α/2z})^z}`.
///
/// Negative powers act on the support. `+∞` if `α > 1` and `supp ρ ⊄ supp σ`.
pub fn alpha_z(rho: &State, sigma: &State, alpha: f64, z: f64) -> Result<DivergenceValue> {
    check_dims(rho, sigma)?;
    if alpha == 1.0 || alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} is excluded")));
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::InvalidParameter(format!("z = {z} must be positive")));
    }
    let a = hermitian_eig(rho.matrix())?;
    let b = hermitian_eig(sigma.matrix())?;
    let support_ok = !leaks(&a, &b);
    if !support_ok && alpha > 1.0 {
        return Ok(DivergenceValue::infinite());
    }
    let (c, e) = (alpha / z, (1.0 - alpha) / z);
    // The nonzero spectrum of ρ^{c/2} σ^e ρ^{c/2} equals that of σ^{e/2} ρ^c σ^{e/2};
    // the factor with the larger exponent goes outside so that the graded solver sees it.
    let log_q = if c.abs() >= e.abs() {
        log_trace_power(&a, c / 2.0, &support_function(&b, |w| w.powf(e)), z)?
    } else {
        log_trace_power(&b, e / 2.0, &support_function(&a, |w| w.powf(c)), z)?
    };
    Ok(DivergenceValue { value: finish(log_q, alpha), support_ok })
}

fn finish(log_q: f64, alpha: f64) -> f64 {
    if log_q == f64::NEG_INFINITY {
        return f64::INFINITY;
    }
    log_q / ((alpha - 1.0) * LN_2)
}

/// Sandwiched Rényi divergence `D̃_α = D_{α,α}`.
pub fn sandwiched(rho: &State, sigma: &State, alpha: f64) -> Result<DivergenceValue> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} must be positive")));
    }
    alpha_z(rho, sigma, alpha, alpha)
}

/// Reverse sandwiched Rényi divergence
/// `D̂_α = (1/(α−1)) log tr{(ρ^{α/2(1−α)} σ ρ^{α/2(1−α)})^{1−α}}`.
pub fn reverse_sandwiched(rho: &State, sigma: &State, alpha: f64) -> Result<DivergenceValue> {
    check_dims(rho, sigma)?;
    if alpha == 1.0 || alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} is excluded")));
    }
    let a = hermitian_eig(rho.matrix())?;
    let b = hermitian_eig(sigma.matrix())?;
    let support_ok = !leaks(&a, &b);
    let log_q = log_trace_power(&a, alpha / (2.0 * (1.0 - alpha)), sigma.matrix(), 1.0 - alpha)?;
    let value = if log_q == f64::INFINITY { f64::INFINITY } else { finish(log_q, alpha) };
    Ok(DivergenceValue { value, support_ok })
}

/// Diagonal of the corner operator, `σ̂_ii = det σ_{1:i,1:i} / det σ_{1:i−1,1:i−1}`.
///
/// Once a leading minor vanishes the remaining entries are zero.
pub fn corner_operator(sigma: &ComplexMatrix) -> Result<Vec<f64>> {
    let d = sigma.require_square()?;
    let scale = sigma.max_abs().max(f64::MIN_POSITIVE);
    let mut out = Vec::with_capacity(d);
    let mut prev = 1.0;
    for k in 1..=d {
        let cur = leading_principal_minor(sigma, k)?.re;
        let singular = !(prev > 0.0) || cur <= 1e-14 * scale.powi(k as i32);
        if singular {
            out.push(0.0);
            prev = 0.0;
        } else {
            out.push(cur / prev);
            prev = cur;
        }
    }
    Ok(out)
}

/// `Φ(ρ‖σ) = D(spec ρ ‖ σ̂)` with `σ̂` the corner operator of `U_ρ σ U_ρ†`.
/// `+∞` when `σ` is singular.
pub fn phi_closed(rho: &State, sigma: &State) -> Result<DivergenceValue> {
    check_dims(rho, sigma)?;
    let sb = hermitian_eig(sigma.matrix())?;
    if support_indices(&sb).len() < sigma.dim() {
        return Ok(DivergenceValue::infinite());
    }
    let a = hermitian_eig(rho.matrix())?;
    let v = a.vectors.matrix();
    let rotated = &(&v.adjoint() * sigma.matrix()) * v;
    let corner = corner_operator(&rotated)?;
    let value = kl(&a.values, &corner)?;
    Ok(DivergenceValue { value, support_ok: value.is_finite() })
}

/// Path `α ↦ z(α)` along which `D_{α,z(α)}` is sent to `α → 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZPath {
    /// Fixed `z`, approached from both sides.
    Constant(f64),
    /// `z = 1 − α`, approached from below.
    OneMinusAlpha,
}

/// Extrapolated limit and the samples it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitEstimate {
    pub value: f64,
    /// Difference between the two highest Richardson levels.
    pub error: f64,
    /// `(α, D_{α,z(α)})` pairs that entered the extrapolation.
    pub samples: Vec<(f64, f64)>,
}

const LIMIT_STEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Richardson extrapolation of `D_{α,z(α)}` over `α = 1 ± {1e−2, 1e−3, 1e−4}`.
pub fn numeric_limit_alpha1(rho: &State, sigma: &State, path: ZPath) -> Result<LimitEstimate> {
    let eval = |alpha: f64| -> Result<f64> {
        let z = match path {
            ZPath::Constant(z) => z,
            ZPath::OneMinusAlpha => 1.0 - alpha,
        };
        Ok(alpha_z(rho, sigma, alpha, z)?.value)
    };
    let mut samples = Vec::new();
    let mut level = Vec::new();
    for h in LIMIT_STEPS {
        let g = match path {
            ZPath::Constant(_) => {
                let lo = eval(1.0 - h)?;
                let hi = eval(1.0 + h)?;
                samples.push((1.0 - h, lo));
                samples.push((1.0 + h, hi));
                0.5 * (lo + hi)
            }
            ZPath::OneMinusAlpha => {
                let lo = eval(1.0 - h)?;
                samples.push((1.0 - h, lo));
                lo
            }
        };
        level.push(g);
    }
    if level.iter().any(|v| !v.is_finite()) {
        return Err(Error::NoConvergence(format!("non-finite samples {level:?}")));
    }
    // Step ratio 10; the leading error is O(h) one-sided and O(h²) for the symmetric mean.
    let p0 = match path {
        ZPath::Constant(_) => 2,
        ZPath::OneMinusAlpha => 1,
    };
    let mut order = p0;
    let mut top = level[level.len() - 1];
    let mut previous_top = top;
    while level.len() > 1 {
        let f = 10f64.powi(order);
        let next: Vec<f64> = level.windows(2).map(|w| (f * w[1] - w[0]) / (f - 1.0)).collect();
        previous_top = top;
        top = next[next.len() - 1];
        level = next;
        order += p0;
    }
    let error = (top - previous_top).abs();
    Ok(LimitEstimate { value: top, error, samples })
}

/// Classical Rényi divergence `(1/(α−1)) log Σ p^α q^{1−α}` in bits.
pub fn classical_renyi(p: &[f64], q: &[f64], alpha: f64) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::Dimension(format!("lengths {} and {}", p.len(), q.len())));
    }
    if alpha == 1.0 || alpha == 0.0 {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} is excluded")));
    }
    let mut s = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a > 0.0 {
            if b == 0.0 {
                if alpha > 1.0 {
                    return Ok(f64::INFINITY);
                }
                continue;
            }
            s += a.powf(alpha) * b.powf(1.0 - alpha);
        }
    }
    Ok(s.log2() / (alpha - 1.0))
}
