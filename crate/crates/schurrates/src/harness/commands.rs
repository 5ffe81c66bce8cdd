use std::path::PathBuf;

use super::io::{num, read_matrix, Csv};
use super::ExperimentConfig;
use crate::divergences::{alpha_z, phi_closed, quantum_relative_entropy, reverse_sandwiched, sandwiched};
use crate::error::{Error, Result};
use crate::matcore::{haar_unitary, random_density};
use crate::oracle::{rate_series, Quantity, SeriesTarget};
use crate::qubit_rt::r_t;
use crate::rates::{delta_a_closed, theta1, theta2, theta_growth, theta_minimizer_location};
use crate::schur_weyl::SchurWeylCaps;
use crate::{ComplexMatrix, Dist, State, Unitary};

fn load_state(path: &Option<PathBuf>, d: usize, seed: u64) -> Result<State> {
    match path {
        Some(p) => State::new(read_matrix(p)?),
        None => random_density(d, seed, d),
    }
}

/// `(ρ, σ)` from `--state-a`/`--state-b`, or drawn from the seed.
fn load_pair(cfg: &ExperimentConfig) -> Result<(State, State)> {
    let rho = load_state(&cfg.state_a, cfg.d, cfg.seed)?;
    let sigma = load_state(&cfg.state_b, rho.dim(), cfg.seed.wrapping_add(1))?;
    if rho.dim() != sigma.dim() {
        return Err(Error::Dimension(format!("states of dimension {} and {}", rho.dim(), sigma.dim())));
    }
    Ok((rho, sigma))
}

fn load_matrix(cfg: &ExperimentConfig, d: usize) -> Result<ComplexMatrix> {
    let a = match &cfg.matrix {
        Some(p) => read_matrix(p)?,
        None => haar_unitary(d, cfg.seed.wrapping_add(2)).into_matrix(),
    };
    if a.require_square()? != d {
        return Err(Error::Dimension(format!("matrix of size {} for dimension {d}", a.rows())));
    }
    Ok(a)
}

fn dist_or(given: &Option<Vec<f64>>, fallback: impl FnOnce() -> Result<Dist>) -> Result<Dist> {
    match given {
        Some(p) => Dist::from_f64(p),
        None => fallback(),
    }
}

/// Table of `D`, `Φ`, `D̃_α`, `D̂_α` and `D_{α,z}` in bits.
pub fn cmd_divergence(cfg: &ExperimentConfig) -> Result<String> {
    if let Some(a) = cfg.alphas.iter().find(|&&a| a == 1.0 || !(a > 0.0) || !a.is_finite()) {
        return Err(Error::InvalidParameter(format!("alpha = {a} is excluded (need alpha > 0, alpha != 1)")));
    }
    if let Some(z) = cfg.zs.iter().find(|&&z| !(z > 0.0) || !z.is_finite()) {
        return Err(Error::InvalidParameter(format!("z = {z} is excluded (need z > 0)")));
    }
    let (rho, sigma) = load_pair(cfg)?;
    let mut csv = Csv::new(&["quantity", "alpha", "z", "value_bits"]);
    csv.row(&["relative_entropy".into(), num(1.0), String::new(), num(quantum_relative_entropy(&rho, &sigma)?.value)]);
    csv.row(&["phi".into(), num(1.0), num(0.0), num(phi_closed(&rho, &sigma)?.value)]);
    for &alpha in &cfg.alphas {
        csv.row(&["sandwiched".into(), num(alpha), num(alpha), num(sandwiched(&rho, &sigma, alpha)?.value)]);
        csv.row(&["reverse_sandwiched".into(), num(alpha), String::new(), num(reverse_sandwiched(&rho, &sigma, alpha)?.value)]);
        for &z in &cfg.zs {
            csv.row(&["alpha_z".into(), num(alpha), num(z), num(alpha_z(&rho, &sigma, alpha, z)?.value)]);
        }
    }
    Ok(csv.finish())
}

/// Series target and closed-form rate for the configured quantity.
fn converge_target(cfg: &ExperimentConfig) -> Result<(SeriesTarget, f64)> {
    let infeasible = |what: &str| Error::Infeasible(format!("{what}: constraint set is empty"));
    match cfg.quantity {
        Quantity::Phi => {
            let (rho, sigma) = load_pair(cfg)?;
            let closed = phi_closed(&rho, &sigma)?.value;
            Ok((SeriesTarget::Phi { rho, sigma }, closed))
        }
        Quantity::Lambda => {
            let (rho, sigma) = load_pair(cfg)?;
            let closed = quantum_relative_entropy(&rho, &sigma)?.value;
            Ok((SeriesTarget::Lambda { rho, sigma }, closed))
        }
        Quantity::Delta => {
            let (rho, sigma) = load_pair(cfg)?;
            let a = load_matrix(cfg, rho.dim())?;
            let s = Dist::from_f64(&rho.spectrum()?)?;
            let p = dist_or(&cfg.p, || {
                let rotated = &(&a.adjoint() * rho.matrix()) * &a;
                let diag: Vec<f64> = rotated.diag().iter().map(|z| z.re).collect();
                let total: f64 = diag.iter().sum();
                Dist::from_f64(&diag.iter().map(|x| x / total).collect::<Vec<_>>())
            })?;
            let closed = delta_a_closed(&p, &s, sigma.matrix(), &a)?.rate;
            Ok((SeriesTarget::Delta { p, s, sigma: sigma.into_matrix(), a }, closed))
        }
        Quantity::Theta => {
            let rho = load_state(&cfg.state_a, cfg.d, cfg.seed)?;
            let a = load_matrix(cfg, rho.dim())?;
            let s = Dist::from_f64(&rho.spectrum()?)?;
            let adj = a.adjoint();
            let q = dist_or(&cfg.q, || {
                let u = Unitary::new(adj.clone())
                    .map_err(|_| Error::InvalidParameter("theta with a non-unitary matrix needs --q".into()))?;
                theta_minimizer_location(&s, &u)
            })?;
            let g = theta_growth(&q, &s, &adj)?;
            if !g.feasible {
                return Err(infeasible("theta"));
            }
            Ok((SeriesTarget::Theta { q, s, a }, -g.growth))
        }
        Quantity::Theta1 => {
            let a = load_matrix(cfg, 2)?;
            let p = dist_or(&cfg.p, || Dist::from_f64(&[0.6, 0.4]))?;
            let q = dist_or(&cfg.q, || Dist::from_f64(&[0.35, 0.65]))?;
            let closed = -theta1(&a, &p, &q)?.growth;
            Ok((SeriesTarget::Theta1 { a, p, q }, closed))
        }
        Quantity::Theta2 => {
            let a = load_matrix(cfg, 2)?;
            let q = dist_or(&cfg.q, || Ok(Dist::uniform(2)))?;
            let v = theta2(&a, &q)?;
            if !v.feasible {
                return Err(infeasible("theta2"));
            }
            Ok((SeriesTarget::Theta2 { a, q }, v.rate()))
        }
    }
}

/// Sizes used by `converge` for a quantity and an optional `--n-max`.
pub fn series_sizes(quantity: Quantity, n_max: Option<usize>) -> Vec<usize> {
    match quantity {
        // The overlap formula is cheap and its rounding noise only settles for n ≥ 10.
        Quantity::Theta1 => {
            let hi = n_max.unwrap_or(40);
            ((hi / 4).max(2)..=hi).collect()
        }
        Quantity::Theta2 => (2..=n_max.unwrap_or(8)).collect(),
        _ => (2..=n_max.unwrap_or(10)).collect(),
    }
}

/// Exact finite-`n` values, the extrapolated rate and the closed form.
pub fn cmd_converge(cfg: &ExperimentConfig) -> Result<String> {
    let (target, closed) = converge_target(cfg)?;
    let ns = series_sizes(cfg.quantity, cfg.n_max);
    let series = rate_series(&target, &ns, &SchurWeylCaps::default())?;
    if series.ns.is_empty() {
        return Err(Error::Infeasible("no admissible size in the requested range".into()));
    }
    let mut csv = Csv::new(&["n", "t_n", "r_n", "r_inf", "closed_form", "gap"]);
    for (i, &n) in series.ns.iter().enumerate() {
        csv.row(&[
            n.to_string(),
            num(series.log2_values[i].exp2()),
            num(series.rates[i]),
            num(series.limit),
            num(closed),
            num(series.limit - closed),
        ]);
    }
    Ok(csv.finish())
}

/// `t ↦ R_t(ρ‖σ)` on a uniform grid, with endpoint residuals against `Φ` and `D`.
pub fn cmd_rt_scan(cfg: &ExperimentConfig) -> Result<String> {
    let (rho, sigma) = load_pair(cfg)?;
    if rho.dim() != 2 {
        return Err(Error::Dimension("rt-scan needs qubit states".into()));
    }
    if cfg.steps == 0 {
        return Err(Error::InvalidParameter("steps must be positive".into()));
    }
    let phi = phi_closed(&rho, &sigma)?.value;
    let d = quantum_relative_entropy(&rho, &sigma)?.value;
    let mut csv = Csv::new(&["t", "r_t", "endpoint_residual"]);
    for i in 0..=cfg.steps {
        let t = i as f64 / cfg.steps as f64;
        let r = r_t(rho.matrix(), &sigma, t)?;
        let residual = match i {
            0 => num(r - phi),
            _ if i == cfg.steps => num(r - d),
            _ => String::new(),
        };
        csv.row(&[num(t), num(r), residual]);
    }
    Ok(csv.finish())
}
