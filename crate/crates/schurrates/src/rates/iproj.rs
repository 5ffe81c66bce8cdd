use std::f64::consts::LN_2;

use serde::Serialize;

use super::tuples::TupleDistribution;
use crate::error::{Error, Result};
use crate::Dist;

const MAX_ITER: usize = 400;
const GRAD_TOL: f64 = 1e-13;
/// Residual above which the constraint set is declared empty.
const FEASIBILITY_TOL: f64 = 1e-7;

/// One coordinate of a weighted I-projection: the objective is `Σ w P ln(P / R)` subject to
/// `Σ_atoms P·F = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedAtom {
    pub weight: f64,
    pub reference: f64,
    /// Sparse feature vector `(constraint, coefficient)`.
    pub features: Vec<(usize, f64)>,
}

/// Solution of an I-projection problem.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IProjection {
    /// Minimum of the objective in bits (`+∞` when infeasible).
    pub value: f64,
    /// Minimizer, one entry per atom (for [`i_projection`], one per tuple index).
    pub solution: Vec<f64>,
    /// Dual variables `θ`; the minimizer is `R exp(θ·F / w − 1)`.
    pub multipliers: Vec<f64>,
    /// Largest constraint violation `|Σ P F − b|` at the minimizer (the KKT residual).
    pub residual: f64,
    pub iterations: usize,
    pub feasible: bool,
}

/// Minimizes `Σ w P ln(P/R)` over `P ≥ 0` with linear constraints, by damped Newton ascent on
/// the concave dual `g(θ) = θ·b − Σ w R exp(θ·F/w − 1)`.
pub fn weighted_i_projection(atoms: &[WeightedAtom], targets: &[f64]) -> Result<IProjection> {
    let m = targets.len();
    for a in atoms {
        if !(a.weight > 0.0) || !(a.reference >= 0.0) || a.features.iter().any(|&(c, _)| c >= m) {
            return Err(Error::InvalidParameter("malformed atom".into()));
        }
    }
    let live: Vec<&WeightedAtom> = atoms.iter().filter(|a| a.reference > 0.0).collect();
    let primal = |theta: &[f64]| -> Vec<f64> {
        live.iter()
            .map(|a| {
                let dot: f64 = a.features.iter().map(|&(c, f)| theta[c] * f).sum();
                a.reference * (dot / a.weight - 1.0).exp()
            })
            .collect()
    };
    let dual = |theta: &[f64], p: &[f64]| -> f64 {
        let lin: f64 = theta.iter().zip(targets).map(|(t, b)| t * b).sum();
        lin - live.iter().zip(p).map(|(a, &x)| a.weight * x).sum::<f64>()
    };
    let gradient = |p: &[f64]| -> Vec<f64> {
        let mut g = targets.to_vec();
        for (a, &x) in live.iter().zip(p) {
            for &(c, f) in &a.features {
                g[c] -= x * f;
            }
        }
        g
    };

    let mut theta = vec![0.0; m];
    let mut p = primal(&theta);
    let mut g_val = dual(&theta, &p);
    let mut grad = gradient(&p);
    let mut iterations = 0;
    while iterations < MAX_ITER {
        let gnorm = grad.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        if gnorm <= GRAD_TOL {
            break;
        }
        iterations += 1;
        let mut h = vec![vec![0.0; m]; m];
        for (a, &x) in live.iter().zip(&p) {
            let s = x / a.weight;
            for &(c1, f1) in &a.features {
                for &(c2, f2) in &a.features {
                    h[c1][c2] += s * f1 * f2;
                }
            }
        }
        let diag_max = (0..m).fold(0.0f64, |acc, i| acc.max(h[i][i]));
        let ridge = 1e-14 * diag_max.max(1e-300);
        for (i, row) in h.iter_mut().enumerate() {
            row[i] += ridge;
        }
        let Some(step) = solve_spd(h, grad.clone()) else { break };
        let slope: f64 = step.iter().zip(&grad).map(|(a, b)| a * b).sum();
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let trial: Vec<f64> = theta.iter().zip(&step).map(|(a, b)| a + t * b).collect();
            let tp = primal(&trial);
            let tv = dual(&trial, &tp);
            if tv.is_finite() {
                let tg = gradient(&tp);
                let tnorm = tg.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
                let armijo = tv >= g_val + 1e-4 * t * slope && (tv > g_val || tnorm < gnorm);
                // Near the optimum the dual is flat to roundoff; a shrinking gradient decides.
                let flat = (tv - g_val).abs() <= 1e-13 * g_val.abs().max(1.0) && tnorm < 0.5 * gnorm;
                if armijo || flat {
                    theta = trial;
                    p = tp;
                    g_val = tv;
                    grad = tg;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    let residual = grad.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let feasible = residual <= FEASIBILITY_TOL;
    let mut solution = vec![0.0; atoms.len()];
    let mut live_iter = p.iter();
    for (slot, a) in solution.iter_mut().zip(atoms) {
        if a.reference > 0.0 {
            *slot = *live_iter.next().unwrap_or(&0.0);
        }
    }
    let value = if feasible {
        atoms
            .iter()
            .zip(&solution)
            .filter(|(_, &x)| x > 0.0)
            .map(|(a, &x)| a.weight * x * (x / a.reference).ln())
            .sum::<f64>()
            / LN_2
    } else {
        f64::INFINITY
    };
    Ok(IProjection { value, solution, multipliers: theta, residual, iterations, feasible })
}

/// The marginal conditions defining `𝔓(q, k)`: distributions on repetition-free `k`-tuples
/// with `p([d]^k_i) = k q(i)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginalConstraint {
    pub k: usize,
    /// `k q(i)` for each letter.
    pub masses: Vec<f64>,
}

impl MarginalConstraint {
    pub fn new(q: &Dist, k: usize) -> Result<Self> {
        if k == 0 || k > q.len() {
            return Err(Error::OutOfRange(format!("k = {k} for d = {}", q.len())));
        }
        Ok(Self { k, masses: q.probs().iter().map(|&x| k as f64 * x).collect() })
    }

    pub fn d(&self) -> usize {
        self.masses.len()
    }

    /// Necessary condition `k q(i) ≤ 1` for every letter.
    pub fn is_feasible(&self) -> bool {
        self.masses.iter().all(|&m| m <= 1.0 + 1e-12)
    }
}

/// `min { D(p ‖ reference) : p ∈ 𝔓(q, k) }`. The solution vector is indexed like the
/// reference tuples; `+∞` is returned when the set misses the reference support.
pub fn i_projection(reference: &TupleDistribution, constraint: &MarginalConstraint) -> Result<IProjection> {
    let (k, d) = (reference.k(), reference.d());
    if constraint.d() != d || constraint.k != k {
        return Err(Error::Dimension(format!("constraint ({}, {}) for tuples ({k}, {d})", constraint.k, constraint.d())));
    }
    let len = reference.probs().len();
    let infeasible = |iterations, residual| IProjection {
        value: f64::INFINITY,
        solution: vec![0.0; len],
        multipliers: vec![0.0; d],
        residual,
        iterations,
        feasible: false,
    };
    if !constraint.is_feasible() {
        return Ok(infeasible(0, f64::INFINITY));
    }
    let free = reference.repetition_free();
    let mut atoms = Vec::with_capacity(len);
    for idx in 0..len {
        let t = reference.tuple(idx);
        let allowed = free.contains(&idx) && t.iter().all(|&c| constraint.masses[c as usize] > 0.0);
        atoms.push(WeightedAtom {
            weight: 1.0,
            reference: if allowed { reference.probs()[idx] } else { 0.0 },
            features: t.iter().map(|&c| (c as usize, 1.0)).collect(),
        });
    }
    let proj = weighted_i_projection(&atoms, &constraint.masses)?;
    if !proj.feasible {
        return Ok(infeasible(proj.iterations, proj.residual));
    }
    Ok(proj)
}

/// Solves `H x = b` for symmetric positive definite `H` by Cholesky.
fn solve_spd(mut h: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for j in 0..n {
        let mut s = h[j][j];
        for k in 0..j {
            s -= h[j][k] * h[j][k];
        }
        if !(s > 0.0) {
            return None;
        }
        let l = s.sqrt();
        h[j][j] = l;
        for i in j + 1..n {
            let mut s = h[i][j];
            for k in 0..j {
                s -= h[i][k] * h[j][k];
            }
            h[i][j] = s / l;
        }
    }
    for i in 0..n {
        for k in 0..i {
            b[i] -= h[i][k] * b[k];
        }
        b[i] /= h[i][i];
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            b[i] -= h[k][i] * b[k];
        }
        b[i] /= h[i][i];
    }
    Some(b)
}
