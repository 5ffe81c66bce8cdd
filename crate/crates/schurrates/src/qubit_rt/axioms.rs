use rand::Rng;
use serde::Serialize;

use super::{r_t, r_t_scalar, rotation_path};
use crate::divergences::{phi_closed, quantum_relative_entropy};
use crate::error::Result;
use crate::matcore::{haar_unitary_with, psd_power, random_density_with, seeded_rng};
use crate::{ComplexMatrix, State, C64};

const T_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// Outcome of one randomized axiom check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomCheck {
    /// Short identifier, unique within a report.
    pub key: String,
    pub axiom: String,
    /// Whether the property is expected to hold for `R_t`.
    pub expected: bool,
    pub holds: bool,
    pub trials: usize,
    /// Largest violation measure seen (meaning depends on the axiom).
    pub worst: f64,
    pub tolerance: f64,
    pub counterexample: Option<String>,
}

impl AxiomCheck {
    pub fn as_expected(&self) -> bool {
        self.holds == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub seed: u64,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_as_expected(&self) -> bool {
        self.checks.iter().all(AxiomCheck::as_expected)
    }

    pub fn get(&self, key: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.key == key)
    }
}

struct Tracker {
    check: AxiomCheck,
}

impl Tracker {
    fn new(key: &str, axiom: &str, expected: bool, tolerance: f64) -> Self {
        Self {
            check: AxiomCheck {
                key: key.into(),
                axiom: axiom.into(),
                expected,
                holds: true,
                trials: 0,
                worst: 0.0,
                tolerance,
                counterexample: None,
            },
        }
    }

    /// Records a violation measure; anything above the tolerance is a counterexample.
    fn record(&mut self, violation: f64, describe: impl FnOnce() -> String) {
        self.check.trials += 1;
        let v = if violation.is_nan() { f64::INFINITY } else { violation };
        if v > self.check.worst {
            self.check.worst = v;
        }
        if v > self.check.tolerance && self.check.counterexample.is_none() {
            self.check.holds = false;
            self.check.counterexample = Some(describe());
        }
    }
}

fn show(m: &ComplexMatrix) -> String {
    let e = |i, j| {
        let z: C64 = m[(i, j)];
        format!("{:.17e}{:+.17e}j", z.re, z.im)
    };
    format!("[[{}, {}], [{}, {}]]", e(0, 0), e(0, 1), e(1, 0), e(1, 1))
}

fn random_hermitian(rng: &mut impl Rng, norm: f64) -> ComplexMatrix {
    let a = rng.random::<f64>() - 0.5;
    let b = rng.random::<f64>() - 0.5;
    let c = C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
    let h = ComplexMatrix::new(2, 2, vec![C64::new(a, 0.0), c, c.conj(), C64::new(b, 0.0)]).expect("2x2");
    h.scale(norm / h.max_abs().max(1e-300))
}

fn perturbed_state(s: &State, rng: &mut impl Rng, delta: f64) -> Result<State> {
    let m = s.matrix() + &random_hermitian(rng, delta);
    let tr = m.trace().re;
    State::from_psd(&m.scale(1.0 / tr))
}

/// Randomized checks of continuity, unitary invariance, normalization, order, additivity and
/// the mean value property, plus the endpoint identities `R₀ = Φ`, `R₁ = D`.
pub fn axiom_suite(seed: u64, trials: usize) -> Result<AxiomReport> {
    let mut rng = seeded_rng(seed);
    let mut checks = Vec::new();

    let mut endpoints = Tracker::new("endpoints", "endpoints", true, 1e-6);
    for _ in 0..trials {
        let rho = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let sigma = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let phi = phi_closed(&rho, &sigma)?.value;
        let d = quantum_relative_entropy(&rho, &sigma)?.value;
        let r0 = r_t(rho.matrix(), &sigma, 0.0)?;
        let r1 = r_t(rho.matrix(), &sigma, 1.0)?;
        endpoints.record((r0 - phi).abs().max((r1 - d).abs()), || {
            format!("rho={} sigma={} R0={r0} phi={phi} R1={r1} D={d}", show(rho.matrix()), show(sigma.matrix()))
        });
    }
    checks.push(endpoints.check);

    let mut continuity = Tracker::new("continuity", "continuity", true, 1e-3);
    while continuity.check.trials < trials {
        let rho = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let sigma = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let spec = rho.spectrum()?;
        let path = rotation_path(&rho, &sigma)?;
        let off = (&(path.frame().matrix() * sigma.matrix()) * &path.frame().matrix().adjoint())[(0, 1)].norm();
        if spec[0] - spec[1] < 0.05 || off < 0.05 || spec[1] < 0.05 {
            continue;
        }
        let t: f64 = rng.random();
        let base = r_t(rho.matrix(), &sigma, t)?;
        let rho2 = perturbed_state(&rho, &mut rng, 1e-6)?;
        let sigma2 = perturbed_state(&sigma, &mut rng, 1e-6)?;
        let moved = r_t(rho2.matrix(), &sigma2, t)?;
        continuity.record((moved - base).abs(), || {
            format!("rho={} sigma={} t={t} R={base} perturbed R={moved}", show(rho.matrix()), show(sigma.matrix()))
        });
    }
    checks.push(continuity.check);

    let mut invariance = Tracker::new("unitary_invariance", "unitary invariance", true, 1e-8);
    for _ in 0..trials {
        let rho = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let sigma = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let u = haar_unitary_with::<f64, _>(2, &mut rng);
        let t: f64 = rng.random();
        let a = r_t(rho.matrix(), &sigma, t)?;
        let b = r_t(rho.conjugate(&u).matrix(), &sigma.conjugate(&u), t)?;
        invariance.record((a - b).abs(), || {
            format!("rho={} sigma={} U={} t={t}: {a} vs {b}", show(rho.matrix()), show(sigma.matrix()), show(u.matrix()))
        });
    }
    checks.push(invariance.check);

    let mut normalization = Tracker::new("normalization", "normalization", true, 0.0);
    let unit = r_t_scalar(1.0, 0.5)?;
    normalization.record((unit - 1.0).abs(), || format!("R(1‖1/2) = {unit}"));
    for _ in 0..trials {
        let rho = random_density_with::<f64, _>(2, 2, &mut rng)?;
        for t in T_GRID {
            let v = r_t(rho.matrix(), &rho, t)?;
            normalization.record((v.abs() - 1e-12).max(0.0), || format!("R_{t}(rho‖rho) = {v} for rho={}", show(rho.matrix())));
        }
    }
    checks.push(normalization.check);

    // ρ ≥ σ: ρ = σ + εP for a random PSD P.
    let mut order_above = Tracker::new("order_above", "order: rho >= sigma implies R_t >= 0", true, 1e-10);
    // ρ ≤ σ: ρ = σ^{1/2} M σ^{1/2} with 0 ≤ M ≤ I.
    let mut order_below = Tracker::new("order_below", "order: rho <= sigma implies R_t <= 0", true, 1e-10);
    for _ in 0..trials {
        let sigma = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let p = random_density_with::<f64, _>(2, 1 + rng.random_range(0..2), &mut rng)?;
        let eps: f64 = rng.random::<f64>() * 0.5;
        let above = sigma.matrix() + &p.matrix().scale(eps);
        let m = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let top = m.spectrum()?[0];
        let contraction = m.matrix().scale(rng.random::<f64>() / top);
        let root = psd_power(sigma.matrix(), 0.5, 1e-14)?;
        let below = &(&root * &contraction) * &root;
        for t in T_GRID {
            let ra = r_t(&above, &sigma, t)?;
            order_above.record(-ra, || format!("rho={} sigma={} t={t} R={ra}", show(&above), show(sigma.matrix())));
            let rb = r_t(&below, &sigma, t)?;
            order_below.record(rb, || format!("rho={} sigma={} t={t} R={rb}", show(&below), show(sigma.matrix())));
        }
    }
    checks.push(order_above.check);
    checks.push(order_below.check);

    // Additivity under scalar (d = 1) factors: R_t(cρ‖σ) = R_t(ρ‖σ) + R(c‖1).
    let mut additivity = Tracker::new("additivity_scalar", "additivity: scalar factors", true, 1e-10);
    for _ in 0..trials {
        let (r1, s1, r2, s2) = (rng.random::<f64>() + 0.1, rng.random::<f64>() + 0.1, rng.random::<f64>() + 0.1, rng.random::<f64>() + 0.1);
        let lhs = r_t_scalar(r1 * r2, s1 * s2)?;
        let rhs = r_t_scalar(r1, s1)? + r_t_scalar(r2, s2)?;
        additivity.record((lhs - rhs).abs(), || format!("R({r1}·{r2}‖{s1}·{s2})"));
        let rho = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let sigma = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let c = rng.random::<f64>() * 3.0 + 0.05;
        let t: f64 = rng.random();
        let scaled = r_t(&rho.matrix().scale(c), &sigma, t)?;
        let split = r_t(rho.matrix(), &sigma, t)? + r_t_scalar(c, 1.0)?;
        additivity.record((scaled - split).abs(), || format!("c={c} rho={} sigma={} t={t}", show(rho.matrix()), show(sigma.matrix())));
    }
    checks.push(additivity.check);

    // Mean values over direct sums of one-dimensional blocks. With the arithmetic mean the
    // property holds; with the exponential mean 2^{(α-1)x} it fails.
    let mut arithmetic = Tracker::new("mean_value_arithmetic", "mean value: arithmetic", true, 1e-10);
    let mut exponential = Tracker::new("mean_value_exponential", "mean value: exponential (alpha = 2)", true, 1e-6);
    for _ in 0..trials {
        let (r1, r2) = (rng.random::<f64>() * 0.5 + 0.01, rng.random::<f64>() * 0.5 + 0.01);
        let s1 = rng.random::<f64>() * 0.9 + 0.05;
        let s2 = 1.0 - s1;
        let sigma = State::new(ComplexMatrix::from_diag(&[s1, s2]))?;
        let x1 = r_t_scalar(r1, s1)?;
        let x2 = r_t_scalar(r2, s2)?;
        let (w1, w2) = (r1 / (r1 + r2), r2 / (r1 + r2));
        let t: f64 = rng.random();
        let joint = r_t(&ComplexMatrix::from_diag(&[r1, r2]), &sigma, t)?;
        arithmetic.record((joint - (w1 * x1 + w2 * x2)).abs(), || format!("r=({r1},{r2}) s=({s1},{s2})"));
        let mean = (w1 * x1.exp2() + w2 * x2.exp2()).log2();
        exponential.record((joint - mean).abs(), || {
            format!("r=({r1},{r2}) s=({s1},{s2}): R_t = {joint}, exponential mean of the blocks = {mean}")
        });
    }
    exponential.check.expected = false;
    checks.push(arithmetic.check);
    checks.push(exponential.check);

    Ok(AxiomReport { seed, checks })
}
