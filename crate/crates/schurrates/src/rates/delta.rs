use serde::Serialize;

use super::golden::golden_section;
use crate::combinat::{kl, majorizes};
use crate::error::{Error, Result};
use crate::matcore::{det, hermitian_eig};
use crate::{ComplexMatrix, Dist, State};

/// `D̄(p ‖ X)` with its minimizing channel parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DbarValue {
    pub value: f64,
    pub a_star: f64,
}

/// `D̄(p ‖ X) = min Σ_j p(j) D(W(δ_j) ‖ |X_{·j}|)` over two-level channels with `W(p) = p`,
/// parametrized by `W(δ₁) = (1−a, a)`, `W(δ₂) = (a p₁/p₂, 1 − a p₁/p₂)`.
///
/// `|X_{·j}|` is the entrywise modulus of column `j` (not normalized). `p` may be any
/// nonnegative pair.
pub fn dbar(p: &[f64], x: &ComplexMatrix) -> Result<DbarValue> {
    if p.len() != 2 || x.require_square()? != 2 {
        return Err(Error::Dimension("dbar is defined for d = 2".into()));
    }
    if p.iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::InvalidDistribution(format!("negative weight in {p:?}")));
    }
    let col = |j: usize| [x[(0, j)].norm(), x[(1, j)].norm()];
    let (c1, c2) = (col(0), col(1));
    let (p1, p2) = (p[0], p[1]);
    if p2 == 0.0 || p1 == 0.0 {
        let value = p1 * kl(&[1.0, 0.0], &c1)? + p2 * kl(&[0.0, 1.0], &c2)?;
        return Ok(DbarValue { value, a_star: 0.0 });
    }
    let ratio = p1 / p2;
    let objective = |a: f64| {
        let w1 = [1.0 - a, a];
        let w2 = [(a * ratio).min(1.0), (1.0 - a * ratio).max(0.0)];
        p1 * kl(&w1, &c1).unwrap_or(f64::INFINITY) + p2 * kl(&w2, &c2).unwrap_or(f64::INFINITY)
    };
    let (a_star, value) = golden_section(objective, 0.0, 1f64.min(p2 / p1), 1e-13);
    Ok(DbarValue { value, a_star })
}

/// `Δ_A(p, s, σ)` for `d = 2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaValue {
    pub rate: f64,
    /// `p' = (p − s₂)/(s₁ − s₂)`, absent when `s₁ = s₂`.
    pub p_prime: Option<[f64; 2]>,
    pub dbar: Option<DbarValue>,
    pub log2_det: f64,
}

/// `Δ_A(p, s, σ) = −H(s) − s₂ log₂ det X + (s₁ − s₂) D̄(p' ‖ X)` with `X = A†σA`.
///
/// `σ` may be any positive semidefinite matrix. Requires `s` descending with `s ⪰ p`.
pub fn delta_a_closed(p: &Dist, s: &Dist, sigma: &ComplexMatrix, a: &ComplexMatrix) -> Result<DeltaValue> {
    let x = conjugated(sigma, a, true)?;
    let (s1, s2) = check_pair(p, s)?;
    let log2_det = log2_det_psd(&x)?;
    let mut rate = -s.entropy();
    if s2 > 0.0 {
        rate -= s2 * log2_det;
    }
    if s1 - s2 <= 0.0 {
        return Ok(DeltaValue { rate, p_prime: None, dbar: None, log2_det });
    }
    let pp = [(p.probs()[0] - s2) / (s1 - s2), (p.probs()[1] - s2) / (s1 - s2)].map(|v| v.clamp(0.0, 1.0));
    let db = dbar(&pp, &x)?;
    rate += (s1 - s2) * db.value;
    Ok(DeltaValue { rate, p_prime: Some(pp), dbar: Some(db), log2_det })
}

/// The two-level `Δ_A` formula with the printed orientation `X = AσA†` and arguments
/// `((p₁−p₂)/ŝ(2), (p₂−s₂)/ŝ(2))`, `−H(s) − ŝ(2) log₂ det X + ŝ(1) D̄(· ‖ X)`.
pub fn delta_a_paper_literal(p: &Dist, s: &Dist, sigma: &ComplexMatrix, a: &ComplexMatrix) -> Result<f64> {
    let x = conjugated(sigma, a, false)?;
    let (s1, s2) = check_pair(p, s)?;
    let (h1, h2) = (s1 - s2, 2.0 * s2);
    let mut rate = -s.entropy() - h2 * log2_det_psd(&x)?;
    if h1 > 0.0 {
        if h2 <= 0.0 {
            return Err(Error::InvalidParameter("ŝ(2) = 0 leaves the literal argument undefined".into()));
        }
        let (p1, p2) = (p.probs()[0], p.probs()[1]);
        rate += h1 * dbar(&[(p1 - p2) / h2, (p2 - s2) / h2], &x)?.value;
    }
    Ok(rate)
}

/// The two-level `Δ_A` formula as it appears in the derivation:
/// `−H(s) + s₂ log₂ det X + (s₁ − s₂) D̄(p' ‖ X)` with `X = A†σA`.
pub fn delta_a_proof_literal(p: &Dist, s: &Dist, sigma: &ComplexMatrix, a: &ComplexMatrix) -> Result<f64> {
    let resolved = delta_a_closed(p, s, sigma, a)?;
    let s2 = s.probs()[1];
    let flip = if s2 > 0.0 { 2.0 * s2 * resolved.log2_det } else { 0.0 };
    Ok(resolved.rate + flip)
}

/// `Λ(ρ‖σ)` via `Δ_{U_σ}(pinch(U_σ†ρU_σ), spec ρ, σ)`; equals `D(ρ‖σ)`.
pub fn lambda_rate_d2(rho: &State, sigma: &State) -> Result<f64> {
    let u = hermitian_eig(sigma.matrix())?.vectors;
    let p = Dist::from_f64(&rho.conjugate(&u.adjoint()).pinching())?;
    let s = Dist::from_f64(&rho.spectrum()?)?;
    Ok(delta_a_closed(&p, &s, sigma.matrix(), u.matrix())?.rate)
}

/// `Φ(ρ‖σ)` via `Δ_{V_ρ}(spec ρ, spec ρ, σ)`.
pub fn phi_rate_d2(rho: &State, sigma: &State) -> Result<f64> {
    let v = hermitian_eig(rho.matrix())?.vectors;
    let s = Dist::from_f64(&rho.spectrum()?)?;
    Ok(delta_a_closed(&s, &s, sigma.matrix(), v.matrix())?.rate)
}

fn conjugated(sigma: &ComplexMatrix, a: &ComplexMatrix, adjoint_first: bool) -> Result<ComplexMatrix> {
    if sigma.require_square()? != 2 || a.require_square()? != 2 {
        return Err(Error::Dimension("two-level closed form needs d = 2".into()));
    }
    let x = if adjoint_first {
        a.adjoint().matmul(sigma)?.matmul(a)?
    } else {
        a.matmul(sigma)?.matmul(&a.adjoint())?
    };
    Ok(x.hermitian_part())
}

fn check_pair(p: &Dist, s: &Dist) -> Result<(f64, f64)> {
    if p.len() != 2 || s.len() != 2 {
        return Err(Error::Dimension("two-level closed form needs d = 2".into()));
    }
    if !s.is_descending() {
        return Err(Error::InvalidDistribution("s must be sorted descending".into()));
    }
    if !majorizes(s.probs(), p.sorted_desc().probs()) {
        return Err(Error::Infeasible(format!("{:?} does not majorize {:?}", s.probs(), p.probs())));
    }
    Ok((s.probs()[0], s.probs()[1]))
}

fn log2_det_psd(x: &ComplexMatrix) -> Result<f64> {
    let dv = det(x)?.re;
    Ok(if dv > 0.0 { dv.log2() } else { f64::NEG_INFINITY })
}

