use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex;

use crate::combinat::{binomial, Frequency, YoungFrame};
use crate::error::{Error, Result};
use crate::matcore::{hermitian_eig, tensor_power_apply};
use crate::schur_weyl::{
    antisym_vector, projector_lambda_spectral, string_index, Block, Isotypic, ProjectorBlock, SchurWeylCaps,
};
use crate::{ComplexMatrix, C64};

type Key = (Frequency, YoungFrame);

fn cache() -> &'static Mutex<HashMap<Key, Arc<ProjectorBlock>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<ProjectorBlock>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `P_{f,λ}` on `T_f`, memoized. Class sums are used while `n` is within the caps, the
/// spectral construction beyond that.
pub fn projector(f: &Frequency, lambda: &YoungFrame, caps: &SchurWeylCaps) -> Result<Arc<ProjectorBlock>> {
    let key = (f.clone(), lambda.clone());
    if let Some(p) = cache().lock().expect("projector cache poisoned").get(&key) {
        return Ok(Arc::clone(p));
    }
    let block = Block::type_class(f, caps.enumeration_cap)?;
    let built: Vec<(Key, Arc<ProjectorBlock>)> = if f.n() <= caps.max_n(f.d()) {
        let iso = Isotypic::new(block, caps)?;
        YoungFrame::all(f.n(), f.d())
            .into_iter()
            .map(|l| {
                let p = Arc::new(iso.projector(&l));
                ((f.clone(), l), p)
            })
            .collect()
    } else {
        if block.len() > caps.max_spectral_block {
            return Err(Error::CapExceeded { size: block.len() as u128, cap: caps.max_spectral_block as u128 });
        }
        vec![(key.clone(), Arc::new(projector_lambda_spectral(lambda, &block)?))]
    };
    let mut guard = cache().lock().expect("projector cache poisoned");
    for (k, p) in built {
        guard.entry(k).or_insert(p);
    }
    Ok(Arc::clone(guard.get(&key).expect("projector was just inserted")))
}

fn check_square(x: &ComplexMatrix, d: usize) -> Result<()> {
    if x.rows() != d || x.cols() != d {
        return Err(Error::Dimension(format!("{}x{} matrix for d = {d}", x.rows(), x.cols())));
    }
    Ok(())
}

/// Product `Π_i x[(a_i, b_i)]` after dividing every entry by `scale`.
fn scaled_product(x: &ComplexMatrix, a: &[u8], b: &[u8], scale: f64) -> C64 {
    a.iter().zip(b).fold(Complex::new(1.0, 0.0), |acc, (&i, &j)| acc * x[(i as usize, j as usize)] / scale)
}

/// Treats values that sit inside the accumulated rounding noise as exact zeros.
fn log2_or_zero(value: f64, magnitude: f64, log2_scale: f64) -> f64 {
    if !(value > 1e-13 * magnitude) || value <= 0.0 {
        return f64::NEG_INFINITY;
    }
    value.log2() + log2_scale
}

/// `log₂ tr{P_{f,λ} X^{⊗n}}` for any square `X`.
///
/// For positive semidefinite `X` the trace is evaluated as `Σ_j ‖(X^{1/2})^{⊗n} P e_j‖²`
/// over the columns of `P` (`P = P P†`), a sum of nonnegative terms that keeps full
/// relative accuracy even when the trace is many orders below its terms. Other matrices go
/// through the block sum `Σ_{x,y∈T_f} P_{xy} Π_i X_{y_i x_i}`.
pub fn log2_trace_state(f: &Frequency, lambda: &YoungFrame, x: &ComplexMatrix, caps: &SchurWeylCaps) -> Result<f64> {
    check_square(x, f.d())?;
    let p = projector(f, lambda, caps)?;
    match psd_root(x) {
        Some((root, scale)) => log2_trace_psd(&p, &root, scale),
        None => log2_trace_block(&p, x),
    }
}

/// `(X/c)^{1/2}` and `c = λ_max(X)` when `X` is Hermitian positive semidefinite.
fn psd_root(x: &ComplexMatrix) -> Option<(ComplexMatrix, f64)> {
    let eig = hermitian_eig(x).ok()?;
    let top = eig.values.first().copied().unwrap_or(0.0);
    let min = eig.values.last().copied().unwrap_or(0.0);
    if !(top > 0.0) || min < -1e-12 * top {
        return None;
    }
    Some((eig.reconstruct_with(|w| (w.max(0.0) / top).sqrt()), top))
}

fn log2_trace_psd(p: &ProjectorBlock, root: &ComplexMatrix, scale: f64) -> Result<f64> {
    let (n, d) = (p.n(), p.d());
    let full = d.pow(n as u32);
    let idx: Vec<usize> = p.basis().iter().map(|x| string_index(x, d)).collect();
    let m = p.matrix();
    let mut total = 0.0;
    let mut col = vec![Complex::new(0.0, 0.0); full];
    for j in 0..idx.len() {
        let mut any = false;
        for (i, &g) in idx.iter().enumerate() {
            col[g] = m[(i, j)];
            any |= m[(i, j)].norm() > 0.0;
        }
        if any {
            let image = tensor_power_apply(root, n, &col)?;
            total += image.iter().map(|z| z.norm_sqr()).sum::<f64>();
        }
        for &g in &idx {
            col[g] = Complex::new(0.0, 0.0);
        }
    }
    if !(total > 0.0) {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(total.log2() + n as f64 * scale.log2())
}

fn log2_trace_block(p: &ProjectorBlock, x: &ComplexMatrix) -> Result<f64> {
    let basis = p.basis();
    let m = p.matrix();
    let scale = x.max_abs().max(f64::MIN_POSITIVE);
    let (mut acc, mut mag) = (Complex::new(0.0, 0.0), 0.0);
    for (i, xs) in basis.iter().enumerate() {
        for (j, ys) in basis.iter().enumerate() {
            let pij = m[(i, j)];
            if pij.norm() == 0.0 {
                continue;
            }
            let term = pij * scaled_product(x, ys, xs, scale);
            acc += term;
            mag += term.norm();
        }
    }
    Ok(log2_or_zero(acc.re, mag, p.n() as f64 * scale.log2()))
}

/// `tr{P_{f,λ} X^{⊗n}}`.
pub fn trace_state(f: &Frequency, lambda: &YoungFrame, x: &ComplexMatrix, caps: &SchurWeylCaps) -> Result<f64> {
    Ok(log2_trace_state(f, lambda, x, caps)?.exp2())
}

/// `log₂ tr{P_{f,λ} A^{⊗n} P_{g,μ} A†^{⊗n}}` computed without the selection rule.
fn log2_conjugated_any(
    f: &Frequency,
    lambda: &YoungFrame,
    g: &Frequency,
    mu: &YoungFrame,
    a: &ComplexMatrix,
    caps: &SchurWeylCaps,
) -> Result<f64> {
    check_square(a, f.d())?;
    if f.n() != g.n() || f.d() != g.d() {
        return Err(Error::Dimension(format!("types {f} and {g} differ in length or alphabet")));
    }
    let pf = projector(f, lambda, caps)?;
    let pg = projector(g, mu, caps)?;
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    let (bf, bg) = (pf.basis(), pg.basis());
    let b = ComplexMatrix::from_fn(bf.len(), bg.len(), |i, j| scaled_product(a, &bf[i], &bg[j], scale));
    let bnb = &(&b * pg.matrix()) * &b.adjoint();
    let m = pf.matrix();
    let (mut acc, mut mag) = (Complex::new(0.0, 0.0), 0.0);
    for i in 0..bf.len() {
        for j in 0..bf.len() {
            let term = m[(i, j)] * bnb[(j, i)];
            acc += term;
            mag += m[(i, j)].norm() * bnb[(j, i)].norm();
        }
    }
    Ok(log2_or_zero(acc.re, mag, 2.0 * f.n() as f64 * scale.log2()))
}

/// `log₂ tr{P_{f,λ} A^{⊗n} P_{g,λ} A†^{⊗n}}`.
pub fn log2_trace_conjugated(
    f: &Frequency,
    lambda: &YoungFrame,
    g: &Frequency,
    a: &ComplexMatrix,
    caps: &SchurWeylCaps,
) -> Result<f64> {
    log2_conjugated_any(f, lambda, g, lambda, a, caps)
}

/// `tr{P_{f,λ} A^{⊗n} P_{g,λ} A†^{⊗n}}`.
pub fn trace_conjugated(
    f: &Frequency,
    lambda: &YoungFrame,
    g: &Frequency,
    a: &ComplexMatrix,
    caps: &SchurWeylCaps,
) -> Result<f64> {
    Ok(log2_trace_conjugated(f, lambda, g, a, caps)?.exp2())
}

/// `tr{P_{f,λ} A^{⊗n} P_{g,μ} A†^{⊗n}}`, exactly zero when `λ ≠ μ` since `A^{⊗n}` commutes
/// with the permutation action.
pub fn trace_conjugated_frames(
    f: &Frequency,
    lambda: &YoungFrame,
    g: &Frequency,
    mu: &YoungFrame,
    a: &ComplexMatrix,
    caps: &SchurWeylCaps,
) -> Result<f64> {
    if lambda != mu {
        return Ok(0.0);
    }
    trace_conjugated(f, lambda, g, a, caps)
}

/// Same trace as [`trace_conjugated_frames`] but evaluated numerically for every pair of
/// frames, which exposes the selection rule as a checkable identity.
pub fn trace_conjugated_unchecked(
    f: &Frequency,
    lambda: &YoungFrame,
    g: &Frequency,
    mu: &YoungFrame,
    a: &ComplexMatrix,
    caps: &SchurWeylCaps,
) -> Result<f64> {
    check_square(a, f.d())?;
    let pf = projector(f, lambda, caps)?;
    let pg = projector(g, mu, caps)?;
    let (bf, bg) = (pf.basis(), pg.basis());
    let b = ComplexMatrix::from_fn(bf.len(), bg.len(), |i, j| scaled_product(a, &bf[i], &bg[j], 1.0));
    let bnb = &(&b * pg.matrix()) * &b.adjoint();
    Ok((pf.matrix() * &bnb).trace().re)
}

/// `⟨v_f, X^{⊗n} v_f⟩` with `v_f = |T_f|^{-1/2} Σ_{x∈T_f} e_x`.
pub fn overlap_vf(f: &Frequency, x: &ComplexMatrix) -> Result<f64> {
    check_square(x, f.d())?;
    let block = Block::type_class(f, crate::combinat::DEFAULT_ENUMERATION_CAP)?;
    let mut acc = Complex::new(0.0, 0.0);
    for a in block.strings() {
        for b in block.strings() {
            acc += scaled_product(x, a, b, 1.0);
        }
    }
    Ok(acc.re / block.len() as f64)
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if n <= 100 {
        return (binomial(n, k) as f64).ln();
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// `(ln |z|, z/|z|)` of `c^e`, with `0^0 = 1`.
fn ln_power(c: C64, e: usize) -> Option<(f64, C64)> {
    if e == 0 {
        return Some((0.0, Complex::new(1.0, 0.0)));
    }
    let r = c.norm();
    if r == 0.0 {
        return None;
    }
    Some((e as f64 * r.ln(), (c / r).powu(e as u32)))
}

/// `log₂ ⟨v_f, A^{⊗n} P_g A†^{⊗n} v_f⟩` for `d = 2`, through the binomial expansion of the
/// common amplitude `⟨y, A†^{⊗n} v_f⟩`, `y ∈ T_g`.
pub fn log2_theta1_overlap(a: &ComplexMatrix, f: &Frequency, g: &Frequency) -> Result<f64> {
    check_square(a, 2)?;
    if f.d() != 2 || g.d() != 2 || f.n() != g.n() {
        return Err(Error::Dimension(format!("qubit types of equal length required, got {f} and {g}")));
    }
    let n = f.n();
    let b = a.adjoint();
    let (g0, g1) = (g.counts()[0], g.counts()[1]);
    let f0 = f.counts()[0];
    let mut terms: Vec<(f64, C64)> = Vec::new();
    for k in 0..=g0.min(f0) {
        if f0 - k > g1 {
            continue;
        }
        let factors = [
            ln_power(b[(0, 0)], k),
            ln_power(b[(0, 1)], g0 - k),
            ln_power(b[(1, 0)], f0 - k),
            ln_power(b[(1, 1)], g1 - (f0 - k)),
        ];
        if factors.iter().any(Option::is_none) {
            continue;
        }
        let (mut ln, mut phase) = (ln_binomial(g0, k) + ln_binomial(g1, f0 - k), Complex::new(1.0, 0.0));
        for (l, ph) in factors.into_iter().flatten() {
            ln += l;
            phase *= ph;
        }
        terms.push((ln, phase));
    }
    let top = terms.iter().map(|t| t.0).fold(f64::NEG_INFINITY, f64::max);
    if !top.is_finite() {
        return Ok(f64::NEG_INFINITY);
    }
    let (mut sum, mut mag) = (Complex::new(0.0, 0.0), 0.0);
    for (l, ph) in &terms {
        let w = (l - top).exp();
        sum += ph * w;
        mag += w;
    }
    if !(sum.norm() > 1e-13 * mag) {
        return Ok(f64::NEG_INFINITY);
    }
    let ln_amp = top + sum.norm().ln();
    let ln_value = 2.0 * ln_amp + ln_binomial(n, g0) - ln_binomial(n, f0);
    Ok(ln_value / std::f64::consts::LN_2)
}

/// `⟨v_f, A^{⊗n} P_g A†^{⊗n} v_f⟩` for `d = 2`.
pub fn theta1_overlap(a: &ComplexMatrix, f: &Frequency, g: &Frequency) -> Result<f64> {
    Ok(log2_theta1_overlap(a, f, g)?.exp2())
}

/// `log₂ ⟨v₂^{⊗n}, A^{⊗2n} P_g A†^{⊗2n} v₂^{⊗n}⟩` for a type `g` of length `2n`, by dynamic
/// programming over the pairs.
pub fn log2_theta2_overlap(a: &ComplexMatrix, g: &Frequency) -> Result<f64> {
    check_square(a, 2)?;
    if g.d() != 2 || g.n() % 2 != 0 {
        return Err(Error::Dimension(format!("type {g} must be a qubit type of even length")));
    }
    let w = tensor_power_apply(&a.adjoint(), 2, antisym_vector(2, 2)?.amps())?;
    // Weight of a pair by its number of zeros.
    let mut by_zeros = [0.0; 3];
    for (idx, amp) in w.iter().enumerate() {
        let zeros = 2 - (idx >> 1) - (idx & 1);
        by_zeros[zeros] += amp.norm_sqr();
    }
    let pairs = g.n() / 2;
    let target = g.counts()[0];
    let mut dp = vec![0.0; 2 * pairs + 1];
    dp[0] = 1.0;
    let mut ln_scale = 0.0;
    for step in 0..pairs {
        let mut next = vec![0.0; 2 * pairs + 1];
        for z in 0..=2 * step {
            if dp[z] == 0.0 {
                continue;
            }
            for (k, &wk) in by_zeros.iter().enumerate() {
                next[z + k] += dp[z] * wk;
            }
        }
        let top = next.iter().copied().fold(0.0, f64::max);
        if top == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        for v in next.iter_mut() {
            *v /= top;
        }
        ln_scale += top.ln();
        dp = next;
    }
    let v = dp[target];
    if !(v > 1e-300) {
        return Ok(f64::NEG_INFINITY);
    }
    Ok((v.ln() + ln_scale) / std::f64::consts::LN_2)
}

/// `⟨v₂^{⊗n}, A^{⊗2n} P_g A†^{⊗2n} v₂^{⊗n}⟩`.
pub fn theta2_overlap(a: &ComplexMatrix, g: &Frequency) -> Result<f64> {
    Ok(log2_theta2_overlap(a, g)?.exp2())
}
