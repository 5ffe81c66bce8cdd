use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::io::format_matrix;
use super::ExperimentConfig;
use crate::combinat::{dim_irrep, kl, kostka, Frequency, YoungFrame, DEFAULT_ENUMERATION_CAP};
use crate::divergences::{
    corner_operator, numeric_limit_alpha1, phi_closed, quantum_relative_entropy, reverse_sandwiched, sandwiched,
    ZPath,
};
use crate::error::Result;
use crate::matcore::{haar_unitary_with, hermitian_eig, leading_principal_minor, random_density_with, seeded_rng};
use crate::oracle::{rate_series, trace_state, SeriesTarget};
use crate::qubit_rt::{axiom_suite, r_t, r_t_scaled, SigmaScaling};
use crate::rates::{
    cauchy_binet_check, cauchy_binet_check_scaled, dbar, delta_a_closed, delta_a_paper_literal, delta_a_proof_literal, i_projection,
    norm_estimate_check, p_k_distribution, theta1, theta2, theta_growth, theta_minimizer_location,
    MarginalConstraint, TupleDistribution,
};
use crate::schur_weyl::{Block, Isotypic, SchurWeylCaps};
use crate::{ComplexMatrix, Dist, State, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A literal variant fails as predicted and the resolved form passes.
    Reconciled,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckEntry {
    pub check: String,
    pub anchor: String,
    pub status: CheckStatus,
    pub evidence: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub paper_literal: bool,
    /// No check has status `fail`.
    pub passed: bool,
    pub checks: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn get(&self, check: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.check == check)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Worst error over a randomized sweep, keeping the first violating input.
struct Sweep {
    tol: f64,
    count: usize,
    worst: f64,
    violations: usize,
    first: Option<Value>,
}

impl Sweep {
    fn new(tol: f64) -> Self {
        Self { tol, count: 0, worst: 0.0, violations: 0, first: None }
    }

    fn record(&mut self, err: f64, input: impl FnOnce() -> Value) {
        let err = if err.is_nan() { f64::INFINITY } else { err };
        self.count += 1;
        self.worst = self.worst.max(err);
        if err > self.tol {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(input());
            }
        }
    }

    fn holds(&self) -> bool {
        self.count > 0 && self.violations == 0
    }

    fn evidence(&self, extra: Value) -> Value {
        let mut v = json!({
            "cases": self.count,
            "worst_error": self.worst,
            "tolerance": self.tol,
            "violations": self.violations,
        });
        if let Some(first) = &self.first {
            v["counterexample"] = first.clone();
        }
        merge(v, extra)
    }

    fn entry(self, check: &str, anchor: &str, extra: Value) -> CheckEntry {
        let status = if self.holds() { CheckStatus::Pass } else { CheckStatus::Fail };
        CheckEntry { check: check.into(), anchor: anchor.into(), status, evidence: self.evidence(extra) }
    }
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

fn failed(check: &str, anchor: &str, err: impl std::fmt::Display) -> CheckEntry {
    CheckEntry { check: check.into(), anchor: anchor.into(), status: CheckStatus::Fail, evidence: json!({ "error": err.to_string() }) }
}

fn run(check: &str, anchor: &str, f: impl FnOnce() -> Result<CheckEntry>) -> CheckEntry {
    f().unwrap_or_else(|e| failed(check, anchor, e))
}

fn random_dist(d: usize, rng: &mut ChaCha8Rng) -> Dist {
    let raw: Vec<f64> = (0..d).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    Dist::from_f64(&raw.iter().map(|x| x / total).collect::<Vec<_>>()).expect("normalized")
}

fn grid_min(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    (0..=10_000).map(|i| f(lo + (hi - lo) * i as f64 / 10_000.0)).fold(f64::INFINITY, f64::min)
}

fn cauchy_binet(seed: u64, trials: usize) -> Result<CheckEntry> {
    let mut rng = seeded_rng(seed);
    let mut sweep = Sweep::new(1e-10);
    for d in 2..=6 {
        for _ in 0..trials {
            let u = haar_unitary_with::<f64, _>(d, &mut rng);
            for k in 1..=d {
                for j in 0..d {
                    let cb = cauchy_binet_check(&u, k, j)?;
                    sweep.record(cb.diff, || json!({ "d": d, "k": k, "j": j, "unitary": format_matrix(u.matrix()) }));
                }
            }
        }
    }
    Ok(sweep.entry("cauchy_binet", "antisymmetric tuple marginals", json!({ "unitaries_per_dimension": trials })))
}

fn cauchy_binet_literal(seed: u64, trials: usize) -> Result<CheckEntry> {
    let mut rng = seeded_rng(seed);
    let mut literal = Sweep::new(1e-10);
    let mut resolved = Sweep::new(1e-10);
    for _ in 0..trials {
        let u = haar_unitary_with::<f64, _>(3, &mut rng);
        for j in 0..3 {
            let lit = cauchy_binet_check_scaled(&u, 3, j, 1.0 / 3f64.sqrt())?;
            literal.record(lit.diff, || json!({ "d": 3, "k": 3, "j": j, "lhs": lit.lhs, "rhs": lit.rhs, "unitary": format_matrix(u.matrix()) }));
            resolved.record(cauchy_binet_check(&u, 3, j)?.diff, || json!({ "j": j }));
        }
    }
    let status = if !literal.holds() && resolved.holds() { CheckStatus::Reconciled } else { CheckStatus::Fail };
    Ok(CheckEntry {
        check: "cauchy_binet_literal_prefactor".into(),
        anchor: "antisymmetric tuple marginals".into(),
        status,
        evidence: json!({
            "note": "known typo",
            "literal_prefactor": "1/sqrt(k)",
            "resolved_prefactor": "1/sqrt(k!)",
            "literal": literal.evidence(json!({})),
            "resolved": resolved.evidence(json!({})),
        }),
    })
}

fn exact_trace_identity(seed: u64, trials: usize) -> Result<CheckEntry> {
    let mut rng = seeded_rng(seed);
    let caps = SchurWeylCaps::default();
    let mut sweep = Sweep::new(1e-9);
    for (d, max_n) in [(2usize, 8usize), (3, 6)] {
        for _ in 0..trials {
            let sigma = random_density_with::<f64, _>(d, d, &mut rng)?;
            let minors: Vec<f64> =
                (1..=d).map(|k| leading_principal_minor(sigma.matrix(), k).map(|z| z.re)).collect::<Result<_>>()?;
            for n in 2..=max_n {
                for l in YoungFrame::all(n, d) {
                    let rows = l.padded(d).expect("at most d rows");
                    let f = Frequency::new(rows.clone())?;
                    let t = trace_state(&f, &l, sigma.matrix(), &caps)?;
                    let mut expected = dim_irrep(&l) as f64;
                    for j in 0..d {
                        let next = if j + 1 < d { rows[j + 1] } else { 0 };
                        expected *= minors[j].powi((rows[j] - next) as i32);
                    }
                    sweep.record(((t - expected) / expected).abs(), || {
                        json!({ "frame": l.rows(), "sigma": format_matrix(sigma.matrix()), "trace": t, "expected": expected })
                    });
                }
            }
        }
    }
    Ok(sweep.entry("exact_trace_identity", "isotypic trace determinant formula", json!({ "states_per_dimension": trials })))
}

fn duality(seed: u64, trials: usize) -> Result<CheckEntry> {
    let mut rng = seeded_rng(seed);
    let mut sweep = Sweep::new(1e-9);
    for d in [2, 3] {
        for _ in 0..trials {
            let rho = random_density_with::<f64, _>(d, d, &mut rng)?;
            let sigma = random_density_with::<f64, _>(d, d, &mut rng)?;
            for k in 1..=9 {
                let alpha = k as f64 / 10.0;
                let lhs = (alpha - 1.0) * reverse_sandwiched(&rho, &sigma, alpha)?.value;
                let rhs = alpha * sandwiched(&sigma, &rho, 1.0 - alpha)?.value;
                sweep.record((lhs + rhs).abs(), || {
                    json!({ "alpha": alpha, "rho": format_matrix(rho.matrix()), "sigma": format_matrix(sigma.matrix()) })
                });
            }
        }
    }
    Ok(sweep.entry("duality_identity", "sandwiched and reverse sandwiched duality", json!({ "pairs_per_dimension": trials })))
}

fn corner_telescoping(seed: u64, trials: usize) -> Result<CheckEntry> {
    let mut rng = seeded_rng(seed);
    let mut sweep = Sweep::new(1e-10);
    for d in 2..=4 {
        for _ in 0..trials {
            let sigma = random_density_with::<f64, _>(d, d, &mut rng)?;
            let corner = corner_operator(sigma.matrix())?;
            let mut prod = 1.0;
            for k in 1..=d {
                prod *= corner[k - 1];
                let det: f64 = hermitian_eig(&sigma.matrix().leading_block(k))?.values.iter().product();
                sweep.record(((prod - det) / det).abs(), || json!({ "k": k, "sigma": format_matrix(sigma.matrix()) }));
            }
        }
    }
    Ok(sweep.entry("corner_operator_telescoping", "corner operator", json!({ "states_per_dimension": trials })))
}

fn alpha_one_limits(seed: u64, trials: usize) -> Result<Vec<CheckEntry>> {
    let mut rng = seeded_rng(seed);
    let mut phi = Sweep::new(1e-3);
    let mut petz = Sweep::new(1e-3);
    for _ in 0..trials {
        let rho = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let sigma = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let input = || json!({ "rho": format_matrix(rho.matrix()), "sigma": format_matrix(sigma.matrix()) });
        let closed = phi_closed(&rho, &sigma)?.value;
        let lim = numeric_limit_alpha1(&rho, &sigma, ZPath::OneMinusAlpha)?.value;
        phi.record((closed - lim).abs(), input);
        let d = quantum_relative_entropy(&rho, &sigma)?.value;
        let lim = numeric_limit_alpha1(&rho, &sigma, ZPath::Constant(1.0))?.value;
        petz.record((d - lim).abs(), input);
    }
    Ok(vec![
        phi.entry("phi_closed_vs_limit", "alpha-z limit along z = 1 - alpha", json!({})),
        petz.entry("relative_entropy_vs_limit", "alpha-z limit at fixed z", json!({})),
    ])
}

fn norm_estimate(seed: u64, trials: usize) -> Result<CheckEntry> {
    let mut rng = seeded_rng(seed);
    let mut sweep = Sweep::new(1e-10);
    for trial in 0..trials {
        let d = 2 + trial % 3;
        let u = haar_unitary_with::<f64, _>(d, &mut rng);
        let s = random_dist(d, &mut rng).sorted_desc();
        let eps: f64 = rng.random();
        let mut conds = Vec::new();
        let mut qks = Vec::new();
        for k in 1..=d {
            let pk = p_k_distribution(u.matrix(), k)?;
            let mut probs = pk.probs().to_vec();
            for idx in pk.repetition_free() {
                probs[idx] = (1.0 - eps) * probs[idx] + eps * rng.random::<f64>();
            }
            let total: f64 = probs.iter().sum();
            let cond = TupleDistribution::new(k, d, probs.iter().map(|x| x / total).collect())?;
            qks.push(Dist::from_f64(&cond.letter_mass().iter().map(|m| m / k as f64).collect::<Vec<_>>())?);
            conds.push(cond);
        }
        let est = norm_estimate_check(&s, &u, &qks, &conds)?;
        sweep.record(est.rhs - est.lhs, || {
            json!({ "d": d, "s": s.probs(), "eps": eps, "unitary": format_matrix(u.matrix()), "lhs": est.lhs, "rhs": est.rhs })
        });
    }
    Ok(sweep.entry("norm_estimate", "norm estimate for tuple conditionals", json!({ "instances": trials })))
}

fn projector_algebra(max_n: usize) -> Result<CheckEntry> {
    let caps = SchurWeylCaps::default();
    let mut sweep = Sweep::new(1e-8);
    for d in [2usize, 3] {
        for n in 1..=max_n {
            let full = Isotypic::new(Block::full(n, d, DEFAULT_ENUMERATION_CAP)?, &caps)?;
            let strings = full.block().strings().to_vec();
            let types: Vec<Frequency> = strings.iter().map(|x| Frequency::of_string(x, d)).collect();
            let types_of_blocks = Frequency::all(n, d);
            let blocks: Vec<Isotypic> = types_of_blocks
                .iter()
                .map(|f| Isotypic::new(Block::type_class(f, DEFAULT_ENUMERATION_CAP)?, &caps))
                .collect::<Result<_>>()?;
            let mut covered = 0;
            let mut sums: Vec<ComplexMatrix> =
                blocks.iter().map(|b| ComplexMatrix::zeros(b.block().len(), b.block().len())).collect();
            for l in YoungFrame::all(n, d) {
                let p = full.projector(&l);
                let m = p.matrix();
                let rows = l.rows().to_vec();
                let at = |what: &'static str| {
                    let rows = rows.clone();
                    move || json!({ "d": d, "n": n, "frame": rows, "property": what })
                };
                sweep.record(p.idempotence_error(), at("idempotence of P_lambda"));
                sweep.record(p.hermiticity_error(), at("hermiticity of P_lambda"));
                // [P_f, P_λ] = 0: no weight between strings of different types.
                let mut off = 0.0f64;
                for i in 0..strings.len() {
                    for j in 0..strings.len() {
                        if types[i] != types[j] {
                            off = off.max(m[(i, j)].norm());
                        }
                    }
                }
                sweep.record(off, at("commutation with P_f"));
                for ((f, iso), sum) in types_of_blocks.iter().zip(&blocks).zip(sums.iter_mut()) {
                    let pf = iso.projector(&l);
                    sweep.record(pf.idempotence_error(), at("idempotence of P_f,lambda"));
                    sweep.record(pf.hermiticity_error(), at("hermiticity of P_f,lambda"));
                    let tr = pf.trace();
                    let expected = (kostka(&l, f) as u128 * dim_irrep(&l)) as f64;
                    sweep.record((tr - tr.round()).abs().max((tr - expected).abs()), at("integer trace"));
                    // P_f P_λ P_f restricted to T_f is P_{f,λ}.
                    let idx: Vec<usize> = iso.block().strings().iter().map(|x| full.block().position(x).expect("string")).collect();
                    let restricted = m.select(&idx, &idx);
                    sweep.record(restricted.max_abs_diff(pf.matrix()), at("restriction of P_lambda"));
                    *sum = &*sum + pf.matrix();
                }
            }
            for (iso, sum) in blocks.iter().zip(&sums) {
                covered += iso.block().len();
                let err = sum.max_abs_diff(&ComplexMatrix::identity(iso.block().len()));
                sweep.record(err, || json!({ "d": d, "n": n, "property": "completeness" }));
            }
            sweep.record((covered as f64 - strings.len() as f64).abs(), || json!({ "d": d, "n": n, "property": "type classes cover the space" }));
        }
    }
    Ok(sweep.entry("projector_algebra", "Schur-Weyl projector algebra", json!({ "d": [2, 3], "n_max": max_n })))
}

fn theta_maximizer(seed: u64, trials: usize, others: usize) -> Result<CheckEntry> {
    let mut rng = seeded_rng(seed);
    let mut at_max = Sweep::new(1e-8);
    let mut min_gap = f64::INFINITY;
    let mut bad: Option<Value> = None;
    for d in [2usize, 3] {
        for _ in 0..trials {
            let u = haar_unitary_with::<f64, _>(d, &mut rng);
            let s = random_dist(d, &mut rng).sorted_desc();
            let h = s.entropy();
            let qt = theta_minimizer_location(&s, &u)?;
            let g = theta_growth(&qt, &s, u.matrix())?;
            let input = || json!({ "s": s.probs(), "unitary": format_matrix(u.matrix()) });
            at_max.record((g.growth - h).abs(), input);
            for _ in 0..others {
                let q = random_dist(d, &mut rng);
                let gap = h - theta_growth(&q, &s, u.matrix())?.growth;
                min_gap = min_gap.min(gap);
                if !(gap > 0.0) && bad.is_none() {
                    bad = Some(json!({ "s": s.probs(), "q": q.probs(), "unitary": format_matrix(u.matrix()) }));
                }
            }
        }
    }
    let mut entry = at_max.entry(
        "theta_maximizer",
        "maximizer of the growth exponent",
        json!({ "unitaries_per_dimension": trials, "other_points": others, "smallest_gap_below_entropy": min_gap }),
    );
    if let Some(b) = bad {
        entry.status = CheckStatus::Fail;
        entry.evidence["strictness_counterexample"] = b;
    }
    Ok(entry)
}

fn convex_solvers(seed: u64, trials: usize) -> Result<CheckEntry> {
    let mut rng = seeded_rng(seed);
    let mut sweep = Sweep::new(1e-6);
    for _ in 0..trials {
        // D̄ against its one-parameter parametrization.
        let x = ComplexMatrix::from_fn(2, 2, |_, _| C64::new(rng.random::<f64>() + 0.01, rng.random::<f64>()));
        let p = random_dist(2, &mut rng);
        let (p1, p2) = (p.probs()[0], p.probs()[1]);
        let c1 = [x[(0, 0)].norm(), x[(1, 0)].norm()];
        let c2 = [x[(0, 1)].norm(), x[(1, 1)].norm()];
        let f = |a: f64| {
            p1 * kl(&[1.0 - a, a], &c1).unwrap_or(f64::INFINITY)
                + p2 * kl(&[a * p1 / p2, 1.0 - a * p1 / p2], &c2).unwrap_or(f64::INFINITY)
        };
        let v = dbar(p.probs(), &x)?.value;
        let grid = grid_min(0.0, 1f64.min(p2 / p1), f);
        sweep.record((v - grid).abs(), || json!({ "solver": "dbar", "p": p.probs(), "x": format_matrix(&x) }));

        // Θ₁ against the coupling parametrization.
        let a = haar_unitary_with::<f64, _>(2, &mut rng).into_matrix();
        let (p, q) = (random_dist(2, &mut rng), random_dist(2, &mut rng));
        let b = a.adjoint();
        let c = [b[(0, 0)].norm_sqr(), b[(0, 1)].norm_sqr(), b[(1, 0)].norm_sqr(), b[(1, 1)].norm_sqr()];
        let (p1, q1) = (p.probs()[0], q.probs()[0]);
        let f = |t: f64| {
            let r = [t, q1 - t, p1 - t, 1.0 - p1 - q1 + t].map(|x: f64| x.max(0.0));
            kl(&r, &c).unwrap_or(f64::INFINITY) + q.entropy() + p.entropy() - crate::combinat::entropy(&r)
        };
        let grid = grid_min((p1 + q1 - 1.0).max(0.0), p1.min(q1), f);
        let v = -theta1(&a, &p, &q)?.growth;
        sweep.record((v - grid).abs(), || json!({ "solver": "theta1", "p": p.probs(), "q": q.probs(), "a": format_matrix(&a) }));

        // Θ₂ and the inner I-projection over pairs (letters forced to be uniform).
        let a = ComplexMatrix::from_fn(2, 2, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        let p2 = p_k_distribution(&a.adjoint(), 2)?;
        let (w01, w10) = (p2.probs()[p2.index(&[0, 1])], p2.probs()[p2.index(&[1, 0])]);
        let grid = grid_min(0.0, 1.0, |t| kl(&[t, 1.0 - t], &[w01, w10]).unwrap_or(f64::INFINITY));
        let v = theta2(&a, &Dist::uniform(2))?.rate() * 2.0;
        sweep.record((v - grid).abs(), || json!({ "solver": "theta2", "a": format_matrix(&a) }));
        let proj = i_projection(&p2, &MarginalConstraint::new(&Dist::uniform(2), 2)?)?;
        sweep.record((proj.value - grid).abs(), || json!({ "solver": "i_projection", "a": format_matrix(&a) }));
    }
    Ok(sweep.entry("convex_solvers_vs_grid", "one-dimensional optimizations", json!({ "instances": trials, "grid_points": 10_001 })))
}

fn series_check(name: &str, target: SeriesTarget, ns: &[usize], closed: f64, tol: f64) -> Result<CheckEntry> {
    let series = rate_series(&target, ns, &SchurWeylCaps::default())?;
    let gap = (series.limit - closed).abs();
    let mut sweep = Sweep::new(tol);
    sweep.record(gap, || json!({ "target": format!("{target:?}") }));
    Ok(sweep.entry(
        &format!("rate_series_{name}"),
        &format!("finite-n convergence: {name}"),
        json!({ "ns": series.ns, "rates": series.rates, "r_inf": series.limit, "closed_form": closed }),
    ))
}

fn rate_series_checks(seed: u64, tol: Option<f64>) -> Vec<CheckEntry> {
    let mut rng = seeded_rng(seed);
    let ns: Vec<usize> = (2..=10).collect();
    let mut out = Vec::new();
    let tight = tol.unwrap_or(0.05);
    let loose = tol.unwrap_or(0.1);
    let mut push = |name: &str, f: &mut dyn FnMut() -> Result<CheckEntry>| {
        out.push(f().unwrap_or_else(|e| failed(&format!("rate_series_{name}"), &format!("finite-n convergence: {name}"), e)));
    };
    push("phi", &mut || {
        let rho = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let sigma = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let closed = phi_closed(&rho, &sigma)?.value;
        series_check("phi", SeriesTarget::Phi { rho, sigma }, &ns, closed, tight)
    });
    push("lambda", &mut || {
        let rho = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let w: f64 = 0.2 + 0.6 * rng.random::<f64>();
        let sigma = State::new(ComplexMatrix::from_diag(&[w, 1.0 - w]))?;
        let closed = quantum_relative_entropy(&rho, &sigma)?.value;
        series_check("lambda", SeriesTarget::Lambda { rho, sigma }, &ns, closed, tight)
    });
    push("delta", &mut || {
        let sigma = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let a = haar_unitary_with::<f64, _>(2, &mut rng).into_matrix();
        let (p, s) = (Dist::from_f64(&[0.4, 0.6])?, Dist::from_f64(&[0.75, 0.25])?);
        let closed = delta_a_closed(&p, &s, sigma.matrix(), &a)?.rate;
        series_check("delta", SeriesTarget::Delta { p, s, sigma: sigma.into_matrix(), a }, &ns, closed, loose)
    });
    push("theta", &mut || {
        let a = haar_unitary_with::<f64, _>(2, &mut rng).into_matrix();
        let (s, q) = (Dist::from_f64(&[0.85, 0.15])?, Dist::from_f64(&[0.3, 0.7])?);
        let closed = -theta_growth(&q, &s, &a.adjoint())?.growth;
        series_check("theta", SeriesTarget::Theta { q, s, a }, &ns, closed, loose)
    });
    push("theta1", &mut || {
        let a = ComplexMatrix::from_fn(2, 2, |_, _| C64::new(0.2 + rng.random::<f64>(), 0.0));
        let (p, q) = (Dist::from_f64(&[0.6, 0.4])?, Dist::from_f64(&[0.35, 0.65])?);
        let closed = -theta1(&a, &p, &q)?.growth;
        series_check("theta1", SeriesTarget::Theta1 { a, p, q }, &(10..=40).collect::<Vec<_>>(), closed, loose)
    });
    push("theta2", &mut || {
        let a = haar_unitary_with::<f64, _>(2, &mut rng).into_matrix();
        let closed = theta2(&a, &Dist::uniform(2))?.rate();
        series_check("theta2", SeriesTarget::Theta2 { a, q: Dist::uniform(2) }, &(2..=8).collect::<Vec<_>>(), closed, loose)
    });
    out
}

fn delta_calibration(seed: u64, trials: usize) -> Result<CheckEntry> {
    let rho = State::new(ComplexMatrix::from_diag(&[0.7, 0.3]))?;
    let s = Dist::from_f64(&[0.7, 0.3])?;
    let id = ComplexMatrix::identity(2);
    let mut sweep = Sweep::new(1e-9);
    let v = delta_a_closed(&s, &s, rho.matrix(), &id)?.rate;
    sweep.record(v.abs(), || json!({ "case": "commuting, sigma = rho", "value": v }));
    // With A = 1 and diagonal σ the rate is the relative entropy.
    let mut rng = seeded_rng(seed);
    for _ in 0..trials {
        let rho = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let w: f64 = 0.05 + 0.9 * rng.random::<f64>();
        let sigma = State::new(ComplexMatrix::from_diag(&[w, 1.0 - w]))?;
        let p = Dist::from_f64(&rho.pinching())?;
        let sp = Dist::from_f64(&rho.spectrum()?)?;
        let d = quantum_relative_entropy(&rho, &sigma)?.value;
        let v = delta_a_closed(&p, &sp, sigma.matrix(), &id)?.rate;
        sweep.record((v - d).abs(), || json!({ "rho": format_matrix(rho.matrix()), "sigma_diag": [w, 1.0 - w] }));
    }
    Ok(sweep.entry("delta_calibration", "commuting calibration of the Delta rate", json!({})))
}

fn delta_literal() -> Result<CheckEntry> {
    let rho = State::new(ComplexMatrix::from_diag(&[0.7, 0.3]))?;
    let s = Dist::from_f64(&[0.7, 0.3])?;
    let id = ComplexMatrix::identity(2);
    let resolved = delta_a_closed(&s, &s, rho.matrix(), &id)?.rate;
    let literal = delta_a_paper_literal(&s, &s, rho.matrix(), &id)?;
    let proof = delta_a_proof_literal(&s, &s, rho.matrix(), &id)?;
    let reconciled = resolved.abs() <= 1e-9 && literal.abs() > 1e-6 && proof.abs() > 1e-6;
    Ok(CheckEntry {
        check: "delta_literal_constants".into(),
        anchor: "commuting calibration of the Delta rate".into(),
        status: if reconciled { CheckStatus::Reconciled } else { CheckStatus::Fail },
        evidence: json!({
            "note": "known typo",
            "calibration_point": { "p": s.probs(), "s": s.probs(), "sigma_diag": [0.7, 0.3], "a": "identity" },
            "expected": 0.0,
            "resolved": resolved,
            "literal_constants": literal,
            "literal_sign_variant": proof,
        }),
    })
}

fn rt_axioms(seed: u64, trials: usize) -> Result<Vec<CheckEntry>> {
    let report = axiom_suite(seed, trials)?;
    Ok(report
        .checks
        .into_iter()
        .map(|c| CheckEntry {
            check: format!("rt_{}", c.key),
            anchor: format!("R_t family: {}", c.axiom),
            status: if c.as_expected() { CheckStatus::Pass } else { CheckStatus::Fail },
            evidence: serde_json::to_value(&c).expect("serializable"),
        })
        .collect())
}

fn rt_literal_scaling(seed: u64, trials: usize) -> Result<CheckEntry> {
    let mut rng = seeded_rng(seed);
    let mut literal = Sweep::new(1e-10);
    let mut resolved = Sweep::new(1e-10);
    for _ in 0..trials {
        let sigma = random_density_with::<f64, _>(2, 2, &mut rng)?;
        let p = random_density_with::<f64, _>(2, 1, &mut rng)?;
        let rho = sigma.matrix() + &p.matrix().scale(0.5 * rng.random::<f64>());
        let t: f64 = rng.random();
        let lit = r_t_scaled(&rho, &sigma, t, SigmaScaling::TraceOfInverse)?;
        literal.record(-lit, || json!({ "rho": format_matrix(&rho), "sigma": format_matrix(sigma.matrix()), "t": t, "value": lit }));
        let res = r_t(&rho, &sigma, t)?;
        resolved.record(-res, || json!({ "t": t, "value": res }));
    }
    let status = if !literal.holds() && resolved.holds() { CheckStatus::Reconciled } else { CheckStatus::Fail };
    Ok(CheckEntry {
        check: "rt_literal_sigma_scaling".into(),
        anchor: "R_t family: order".into(),
        status,
        evidence: json!({
            "note": "known typo",
            "literal_factor": "tr(rho^-1)",
            "resolved_factor": "1/tr(rho)",
            "literal": literal.evidence(json!({})),
            "resolved": resolved.evidence(json!({})),
        }),
    })
}

fn scaled(n: usize, scale: f64) -> usize {
    ((n as f64 * scale).ceil() as usize).max(1)
}

/// Runs every invariant suite and, with `paper_literal`, the reconciliation entries.
///
/// Each check draws from its own stream derived from `cfg.seed`, so the report is a
/// deterministic function of the configuration.
pub fn cmd_verify(cfg: &ExperimentConfig) -> VerificationReport {
    let seed = cfg.seed;
    let sub = |k: u64| seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k);
    let n = |base: usize| scaled(base, cfg.trials_scale);
    let mut checks = vec![
        run("cauchy_binet", "antisymmetric tuple marginals", || cauchy_binet(sub(1), n(100))),
        run("exact_trace_identity", "isotypic trace determinant formula", || exact_trace_identity(sub(2), n(20))),
        run("duality_identity", "sandwiched and reverse sandwiched duality", || duality(sub(3), n(100))),
        run("corner_operator_telescoping", "corner operator", || corner_telescoping(sub(4), n(100))),
    ];
    match alpha_one_limits(sub(5), n(50)) {
        Ok(v) => checks.extend(v),
        Err(e) => checks.push(failed("phi_closed_vs_limit", "alpha-z limit along z = 1 - alpha", e)),
    }
    checks.push(run("norm_estimate", "norm estimate for tuple conditionals", || norm_estimate(sub(6), n(1000))));
    checks.push(run("projector_algebra", "Schur-Weyl projector algebra", || projector_algebra(6)));
    checks.push(run("theta_maximizer", "maximizer of the growth exponent", || theta_maximizer(sub(7), n(20), n(50))));
    checks.push(run("convex_solvers_vs_grid", "one-dimensional optimizations", || convex_solvers(sub(8), n(100))));
    checks.extend(rate_series_checks(sub(9), cfg.tol));
    checks.push(run("delta_calibration", "commuting calibration of the Delta rate", || delta_calibration(sub(10), n(20))));
    match rt_axioms(sub(11), n(100)) {
        Ok(v) => checks.extend(v),
        Err(e) => checks.push(failed("rt_axioms", "R_t family", e)),
    }
    if cfg.paper_literal {
        checks.push(run("cauchy_binet_literal_prefactor", "antisymmetric tuple marginals", || cauchy_binet_literal(sub(12), n(100))));
        checks.push(run("delta_literal_constants", "commuting calibration of the Delta rate", delta_literal));
        checks.push(run("rt_literal_sigma_scaling", "R_t family: order", || rt_literal_scaling(sub(13), n(100))));
    }
    let passed = checks.iter().all(|c| c.status != CheckStatus::Fail);
    VerificationReport { seed, paper_literal: cfg.paper_literal, passed, checks }
}
