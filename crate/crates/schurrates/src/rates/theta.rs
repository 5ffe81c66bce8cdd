use serde::Serialize;

use super::golden::golden_section;
use super::iproj::{i_projection, weighted_i_projection, MarginalConstraint, WeightedAtom};
use super::tuples::{p_k_distribution, TupleDistribution};
use crate::combinat::{entropy, kl, s_hat, Distribution};
use crate::error::{Error, Result};
use crate::{ComplexMatrix, Dist, Unitary};

/// A growth exponent with its solver diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateValue {
    /// `lim (1/n) log₂ t_n`; `−∞` when the constraint set is empty.
    pub growth: f64,
    pub feasible: bool,
    pub residual: f64,
    pub iterations: usize,
}

impl RateValue {
    pub fn rate(&self) -> f64 {
        -self.growth
    }

    fn infeasible() -> Self {
        Self { growth: f64::NEG_INFINITY, feasible: false, residual: f64::INFINITY, iterations: 0 }
    }
}

/// `Θ(q, s, A)` together with the minimizing channel and conditionals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaGrowth {
    pub growth: f64,
    /// `min Σ_k ŝ(k)/k · D(p(·|k) ‖ p_k)` in bits.
    pub min_divergence: f64,
    pub feasible: bool,
    /// `W(δ_k)` for `k = 1..d` (uniform where `ŝ(k) = 0`).
    pub columns: Vec<Vec<f64>>,
    /// `p(·|k)`, absent where `ŝ(k) = 0`.
    pub conditionals: Vec<Option<TupleDistribution>>,
    pub residual: f64,
    pub iterations: usize,
}

impl ThetaGrowth {
    pub fn rate(&self) -> f64 {
        -self.growth
    }
}

/// Growth exponent of `tr{A^{⊗n}† P_g A^{⊗n} P_λ}` along `g/n → q`, `λ/n → s`:
///
/// `H(s) − min Σ_k ŝ(k)/k · D(p(·|k) ‖ p_k)` over channels `W` with `W(ŝ) = q` and
/// `p(·|k) ∈ 𝔓(W(δ_k), k)`, where `p_k(t) = |det A[t, 1..k]|² / k!`.
///
/// Eliminating `W` leaves one weighted I-projection over pairs `(k, t)`, solved jointly.
pub fn theta_growth(q: &Dist, s: &Dist, a: &ComplexMatrix) -> Result<ThetaGrowth> {
    let d = a.require_square()?;
    if q.len() != d || s.len() != d {
        return Err(Error::Dimension(format!("q and s must have length {d}")));
    }
    let sh = s_hat(s)?;
    let mut atoms = Vec::new();
    let mut owners = Vec::new();
    let mut refs = Vec::with_capacity(d);
    for k in 1..=d {
        let pk = p_k_distribution(a, k)?;
        let weight = sh.probs()[k - 1];
        for idx in pk.repetition_free() {
            let t = pk.tuple(idx);
            let allowed = weight > 0.0 && t.iter().all(|&c| q.probs()[c as usize] > 0.0);
            let mut features = vec![(k - 1, 1.0)];
            features.extend(t.iter().map(|&c| (d + c as usize, 1.0 / k as f64)));
            atoms.push(WeightedAtom {
                weight: 1.0 / k as f64,
                reference: if allowed { weight * pk.probs()[idx] } else { 0.0 },
                features,
            });
            owners.push((k, idx));
        }
        refs.push(pk);
    }
    let targets: Vec<f64> = sh.probs().iter().chain(q.probs()).copied().collect();
    let proj = weighted_i_projection(&atoms, &targets)?;
    let uniform = vec![1.0 / d as f64; d];
    if !proj.feasible {
        return Ok(ThetaGrowth {
            growth: f64::NEG_INFINITY,
            min_divergence: f64::INFINITY,
            feasible: false,
            columns: vec![uniform; d],
            conditionals: vec![None; d],
            residual: proj.residual,
            iterations: proj.iterations,
        });
    }
    let mut conditionals = Vec::with_capacity(d);
    let mut columns = Vec::with_capacity(d);
    for k in 1..=d {
        let weight = sh.probs()[k - 1];
        if weight <= 0.0 {
            conditionals.push(None);
            columns.push(uniform.clone());
            continue;
        }
        let mut probs = vec![0.0; refs[k - 1].probs().len()];
        for (&(kk, idx), &x) in owners.iter().zip(&proj.solution) {
            if kk == k {
                probs[idx] = x / weight;
            }
        }
        let cond = TupleDistribution::new(k, d, probs)?;
        columns.push(cond.letter_mass().iter().map(|m| m / k as f64).collect());
        conditionals.push(Some(cond));
    }
    Ok(ThetaGrowth {
        growth: s.entropy() - proj.value,
        min_divergence: proj.value,
        feasible: true,
        columns,
        conditionals,
        residual: proj.residual,
        iterations: proj.iterations,
    })
}

/// `q̃(i) = Σ_k ŝ(k) Σ_{l≤k} |u_{il}|² / k`, where `Θ(·, s, U)` attains `H(s)`.
pub fn theta_minimizer_location(s: &Dist, u: &Unitary) -> Result<Dist> {
    let d = u.dim();
    if s.len() != d {
        return Err(Error::Dimension(format!("s must have length {d}")));
    }
    let sh = s_hat(s)?;
    let m = u.matrix();
    let q = (0..d)
        .map(|i| {
            (1..=d)
                .map(|k| sh.probs()[k - 1] * (0..k).map(|l| m[(i, l)].norm_sqr()).sum::<f64>() / k as f64)
                .sum()
        })
        .collect();
    Distribution::new(q)
}

/// `Θ₁` growth and its minimizer.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theta1Value {
    pub growth: f64,
    /// Minimizing `r(1,1)`.
    pub t_star: f64,
    /// `H(q) + min D(r ‖ c)` over couplings with first marginal `p` and second `q`.
    pub literal_rate: f64,
}

impl Theta1Value {
    pub fn rate(&self) -> f64 {
        -self.growth
    }
}

/// Growth exponent of `|⟨v_f, A^{⊗n} P_g A^{⊗n}† v_f⟩|²`-type overlaps (`d = 2`) along
/// `f/n → p`, `g/n → q`:
///
/// `−min_r [D(r ‖ c) + I(r)]`, `c(i, j) = |⟨e_i, A† e_j⟩|²`, over couplings `r` with marginal
/// `q` on `i` and `p` on `j`; `I` is the mutual information.
pub fn theta1(a: &ComplexMatrix, p: &Dist, q: &Dist) -> Result<Theta1Value> {
    let b = two_by_two(a)?.adjoint();
    let c = [b[(0, 0)].norm_sqr(), b[(0, 1)].norm_sqr(), b[(1, 0)].norm_sqr(), b[(1, 1)].norm_sqr()];
    let (p1, q1) = (p.probs()[0], q.probs()[0]);
    let coupling = |t: f64, row: f64, col: f64| [t, row - t, col - t, 1.0 - row - col + t].map(|x| x.max(0.0));
    let mi = |r: &[f64; 4], row: &[f64], col: &[f64]| entropy(row) + entropy(col) - entropy(r);
    let objective = |t: f64| {
        let r = coupling(t, q1, p1);
        kl(&r, &c).unwrap_or(f64::INFINITY) + mi(&r, q.probs(), p.probs())
    };
    let (lo, hi) = ((q1 + p1 - 1.0).max(0.0), q1.min(p1));
    let (t_star, min) = golden_section(objective, lo, hi, 1e-13);
    // The literal variant fixes the first marginal (rows `i`) to `p`.
    let literal = |t: f64| kl(&coupling(t, p1, q1), &c).unwrap_or(f64::INFINITY);
    let (_, lmin) = golden_section(literal, (q1 + p1 - 1.0).max(0.0), q1.min(p1), 1e-13);
    Ok(Theta1Value { growth: -min, t_star, literal_rate: q.entropy() + lmin })
}

/// Growth exponent of `|⟨v_2^{⊗n}, A^{⊗2n} P_g A^{⊗2n}† v_2^{⊗n}⟩|`-type overlaps (`d = 2`):
/// `−½ min { D(r ‖ p_{2,A†}) : r ∈ 𝔓(q, 2) }`, feasible only at `q = (½, ½)`.
pub fn theta2(a: &ComplexMatrix, q: &Dist) -> Result<RateValue> {
    let adj = two_by_two(a)?.adjoint();
    let p2 = p_k_distribution(&adj, 2)?;
    let proj = i_projection(&p2, &MarginalConstraint::new(q, 2)?)?;
    if !proj.feasible {
        return Ok(RateValue::infeasible());
    }
    Ok(RateValue { growth: -0.5 * proj.value, feasible: true, residual: proj.residual, iterations: proj.iterations })
}

/// `Θ(q, s, A)` at `d = 2` assembled from the two-level pieces:
/// `H(s) + ŝ(1)·Θ₁(A†, δ₁, q₁) + ŝ(2)·Θ₂(A†)` with `q = ŝ(1) q₁ + ŝ(2)(½, ½)`.
pub fn theta_growth_d2(q: &Dist, s: &Dist, a: &ComplexMatrix) -> Result<RateValue> {
    let adj = two_by_two(a)?.adjoint();
    if q.len() != 2 || s.len() != 2 {
        return Err(Error::Dimension("theta_growth_d2 needs d = 2".into()));
    }
    let sh = s_hat(s)?;
    let (s1, s2) = (sh.probs()[0], sh.probs()[1]);
    let half = Dist::uniform(2);
    let mut growth = s.entropy();
    if s2 > 0.0 {
        growth += s2 * theta2(&adj, &half)?.growth;
    }
    if s1 > 0.0 {
        let raw: Vec<f64> = (0..2).map(|i| (q.probs()[i] - 0.5 * s2) / s1).collect();
        if raw.iter().any(|&x| x < -1e-12) {
            return Ok(RateValue::infeasible());
        }
        let q1 = Distribution::new(raw.iter().map(|x| x.clamp(0.0, 1.0)).collect())?;
        growth += s1 * theta1(&adj, &Dist::delta(2, 0), &q1)?.growth;
    } else if q.l1(&half) > 1e-12 {
        return Ok(RateValue::infeasible());
    }
    Ok(RateValue { growth, feasible: growth > f64::NEG_INFINITY, residual: 0.0, iterations: 0 })
}

fn two_by_two(a: &ComplexMatrix) -> Result<&ComplexMatrix> {
    if a.require_square()? != 2 {
        return Err(Error::Dimension("two-level closed form needs a 2x2 matrix".into()));
    }
    Ok(a)
}
