//! Acceptance suite. Runs every criterion (concurrently), prints one line per criterion and
//! exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use schurrates::combinat::{dim_irrep, entropy, kl, kostka, Frequency, YoungFrame, DEFAULT_ENUMERATION_CAP};
use schurrates::divergences::{
    numeric_limit_alpha1, phi_closed, quantum_relative_entropy, reverse_sandwiched, sandwiched, ZPath,
};
use schurrates::matcore::{haar_unitary_with, random_density_with, seeded_rng, tensor_power_apply};
use schurrates::oracle::{rate_series, trace_state, SeriesTarget};
use schurrates::qubit_rt::{r_t, r_t_scalar};
use schurrates::rates::{
    dbar, i_projection, p_k_distribution, theta1, theta2, theta_growth, MarginalConstraint, TupleDistribution,
};
use schurrates::schur_weyl::{antisym_vector, Block, Isotypic, SchurWeylCaps};
use schurrates::{ComplexMatrix, Dist, State, C64};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn random_state(d: usize, rng: &mut ChaCha8Rng) -> State {
    random_density_with::<f64, _>(d, d, rng).unwrap()
}

fn random_dist(d: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let raw: Vec<f64> = (0..d).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|x| x / total).collect()
}

fn desc(mut p: Vec<f64>) -> Vec<f64> {
    p.sort_by(|a, b| b.total_cmp(a));
    p
}

fn dist(p: &[f64]) -> Dist {
    Dist::from_f64(p).unwrap()
}

/// Cofactor expansion; fine for the 1..3 dimensional blocks used here.
fn cofactor_det(m: &ComplexMatrix, rows: &[usize], cols: &[usize]) -> C64 {
    if rows.len() == 1 {
        return m[(rows[0], cols[0])];
    }
    let mut acc = C64::new(0.0, 0.0);
    for (c, &col) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != col).collect();
        let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
        acc += m[(rows[0], col)] * cofactor_det(m, &rows[1..], &rest) * sign;
    }
    acc
}

/// Independent qubit formulas: `(spec ρ, eigenvectors)` with descending eigenvalues.
fn qubit_eig(rho: &ComplexMatrix) -> ([f64; 2], [[C64; 2]; 2]) {
    let (a, b, c) = (rho[(0, 0)].re, rho[(1, 1)].re, rho[(0, 1)]);
    let mean = 0.5 * (a + b);
    let rad = (0.25 * (a - b) * (a - b) + c.norm_sqr()).sqrt();
    let (l1, l2) = (mean + rad, mean - rad);
    let v1 = if c.norm() < 1e-300 {
        if a >= b { [C64::new(1.0, 0.0), C64::new(0.0, 0.0)] } else { [C64::new(0.0, 0.0), C64::new(1.0, 0.0)] }
    } else {
        let v = [c, C64::new(l1 - a, 0.0)];
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / n, v[1] / n]
    };
    let v2 = [-v1[1].conj(), v1[0].conj()];
    ([l1, l2], [v1, v2])
}

fn quad(v: &[C64; 2], m: &ComplexMatrix) -> f64 {
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            acc += v[i].conj() * m[(i, j)] * v[j];
        }
    }
    acc.re
}

fn phi_oracle(rho: &State, sigma: &State) -> f64 {
    let (l, v) = qubit_eig(rho.matrix());
    let s = sigma.matrix();
    let det = (s[(0, 0)] * s[(1, 1)] - s[(0, 1)] * s[(1, 0)]).re;
    let c1 = quad(&v[0], s);
    kl(&l, &[c1, det / c1]).unwrap()
}

fn relative_entropy_oracle_diag(rho: &State, sigma_diag: [f64; 2]) -> f64 {
    let (l, v) = qubit_eig(rho.matrix());
    let mut d = 0.0;
    for i in 0..2 {
        if l[i] > 0.0 {
            d += l[i] * l[i].log2();
            for (j, s) in sigma_diag.iter().enumerate() {
                d -= l[i] * v[i][j].norm_sqr() * s.log2();
            }
        }
    }
    d
}

fn criterion1() -> Outcome {
    let mut rng = seeded_rng(101);
    let caps = SchurWeylCaps::default();
    let mut worst = 0.0f64;
    let mut cases = 0;
    for (d, max_n) in [(2usize, 8usize), (3, 6)] {
        for _ in 0..20 {
            let sigma = random_state(d, &mut rng);
            let idx: Vec<usize> = (0..d).collect();
            let minors: Vec<f64> = (1..=d).map(|k| cofactor_det(sigma.matrix(), &idx[..k], &idx[..k]).re).collect();
            for n in 2..=max_n {
                for l in YoungFrame::all(n, d) {
                    let rows = l.padded(d).unwrap();
                    let t = trace_state(&Frequency::new(rows.clone()).unwrap(), &l, sigma.matrix(), &caps).unwrap();
                    let mut expected = dim_irrep(&l) as f64;
                    for j in 0..d {
                        let next = rows.get(j + 1).copied().unwrap_or(0);
                        expected *= minors[j].powi((rows[j] - next) as i32);
                    }
                    worst = worst.max(((t - expected) / expected).abs());
                    cases += 1;
                }
            }
        }
    }
    outcome(worst <= 1e-9, format!("{cases} traces, worst relative error {worst:.2e} (tol 1e-9)"))
}

fn criterion2() -> Outcome {
    let mut rng = seeded_rng(202);
    let mut worst = 0.0f64;
    let mut norm_worst = 0.0f64;
    for d in 2..=6usize {
        for _ in 0..100 {
            let u = haar_unitary_with::<f64, _>(d, &mut rng);
            for k in 1..=d {
                let v = antisym_vector(k, d).unwrap();
                let norm: f64 = v.amps().iter().map(|z| z.norm_sqr()).sum();
                norm_worst = norm_worst.max((norm - 1.0).abs());
                let amp = tensor_power_apply(u.matrix(), k, v.amps()).unwrap();
                let mut lhs = vec![0.0; d];
                for (idx, z) in amp.iter().enumerate() {
                    let mut rest = idx;
                    let mut seen = vec![false; d];
                    for _ in 0..k {
                        seen[rest % d] = true;
                        rest /= d;
                    }
                    for j in 0..d {
                        if seen[j] {
                            lhs[j] += z.norm_sqr();
                        }
                    }
                }
                for j in 0..d {
                    let rhs: f64 = (0..k).map(|i| u.matrix()[(j, i)].norm_sqr()).sum();
                    worst = worst.max((lhs[j] - rhs).abs());
                }
            }
        }
    }
    let pass = worst <= 1e-10 && norm_worst <= 1e-12;
    outcome(pass, format!("worst |lhs - rhs| {worst:.2e} (tol 1e-10), unit norm of v_k within {norm_worst:.1e}"))
}

fn criterion3() -> Outcome {
    let mut rng = seeded_rng(303);
    let caps = SchurWeylCaps::default();
    let ns: Vec<usize> = (2..=10).collect();
    let (mut lim_worst, mut oracle_worst, mut series_worst) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..50 {
        let rho = random_state(2, &mut rng);
        let sigma = random_state(2, &mut rng);
        let phi = phi_closed(&rho, &sigma).unwrap().value;
        oracle_worst = oracle_worst.max((phi - phi_oracle(&rho, &sigma)).abs());
        let lim = numeric_limit_alpha1(&rho, &sigma, ZPath::OneMinusAlpha).unwrap().value;
        lim_worst = lim_worst.max((phi - lim).abs());
        let series = rate_series(&SeriesTarget::Phi { rho, sigma }, &ns, &caps).unwrap();
        series_worst = series_worst.max((series.limit - phi).abs());
    }
    let pass = lim_worst <= 1e-3 && series_worst <= 0.05 && oracle_worst <= 1e-10;
    outcome(
        pass,
        format!(
            "Richardson gap {lim_worst:.2e} (tol 1e-3), series gap {series_worst:.4} (tol 0.05), closed form vs qubit oracle {oracle_worst:.1e}"
        ),
    )
}

fn criterion4() -> Outcome {
    let mut rng = seeded_rng(404);
    let caps = SchurWeylCaps::default();
    let ns: Vec<usize> = (2..=10).collect();
    let (mut worst, mut oracle_worst) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let rho = random_state(2, &mut rng);
        let w: f64 = 0.05 + 0.9 * rng.random::<f64>();
        let sigma = State::new(ComplexMatrix::from_diag(&[w, 1.0 - w])).unwrap();
        let d = relative_entropy_oracle_diag(&rho, [w, 1.0 - w]);
        oracle_worst = oracle_worst.max((d - quantum_relative_entropy(&rho, &sigma).unwrap().value).abs());
        let series = rate_series(&SeriesTarget::Lambda { rho, sigma }, &ns, &caps).unwrap();
        worst = worst.max((series.limit - d).abs());
    }
    outcome(
        worst <= 0.05 && oracle_worst <= 1e-10,
        format!("series gap {worst:.2e} (tol 0.05), library D vs qubit oracle {oracle_worst:.1e}"),
    )
}

fn criterion5() -> Outcome {
    let mut rng = seeded_rng(505);
    let mut worst = 0.0f64;
    for d in [2, 3] {
        for _ in 0..100 {
            let rho = random_state(d, &mut rng);
            let sigma = random_state(d, &mut rng);
            for k in 1..=9 {
                let alpha = k as f64 / 10.0;
                let lhs = (alpha - 1.0) * reverse_sandwiched(&rho, &sigma, alpha).unwrap().value
                    + alpha * sandwiched(&sigma, &rho, 1.0 - alpha).unwrap().value;
                worst = worst.max(lhs.abs());
            }
        }
    }
    outcome(worst <= 1e-9, format!("200 pairs x 9 alphas, worst residual {worst:.2e} (tol 1e-9)"))
}

fn criterion6() -> Outcome {
    let caps = SchurWeylCaps::default();
    let mut worst = 0.0f64;
    let mut count = 0;
    for d in [2usize, 3] {
        for n in 1..=6 {
            let full = Isotypic::new(Block::full(n, d, DEFAULT_ENUMERATION_CAP).unwrap(), &caps).unwrap();
            let strings = full.block().strings().to_vec();
            let types: Vec<Frequency> = strings.iter().map(|x| Frequency::of_string(x, d)).collect();
            let classes = Frequency::all(n, d);
            let blocks: Vec<Isotypic> = classes
                .iter()
                .map(|f| Isotypic::new(Block::type_class(f, DEFAULT_ENUMERATION_CAP).unwrap(), &caps).unwrap())
                .collect();
            let mut sums: Vec<ComplexMatrix> =
                blocks.iter().map(|b| ComplexMatrix::zeros(b.block().len(), b.block().len())).collect();
            for l in YoungFrame::all(n, d) {
                let p = full.projector(&l);
                let m = p.matrix();
                worst = worst.max(p.idempotence_error()).max(p.hermiticity_error());
                for i in 0..strings.len() {
                    for j in 0..strings.len() {
                        if types[i] != types[j] {
                            worst = worst.max(m[(i, j)].norm());
                        }
                    }
                }
                for ((f, iso), sum) in classes.iter().zip(&blocks).zip(sums.iter_mut()) {
                    let pf = iso.projector(&l);
                    count += 1;
                    worst = worst.max(pf.idempotence_error()).max(pf.hermiticity_error());
                    let tr = pf.trace();
                    let expected = (kostka(&l, f) as u128 * dim_irrep(&l)) as f64;
                    worst = worst.max((tr - tr.round()).abs()).max((tr - expected).abs());
                    let idx: Vec<usize> = iso.block().strings().iter().map(|x| full.block().position(x).unwrap()).collect();
                    worst = worst.max(m.select(&idx, &idx).max_abs_diff(pf.matrix()));
                    *sum = &*sum + pf.matrix();
                }
            }
            let mut covered = 0;
            for (iso, sum) in blocks.iter().zip(&sums) {
                covered += iso.block().len();
                worst = worst.max(sum.max_abs_diff(&ComplexMatrix::identity(iso.block().len())));
            }
            worst = worst.max((covered as f64 - strings.len() as f64).abs());
        }
    }
    outcome(worst <= 1e-8, format!("{count} projectors P_(f,lambda), worst deviation {worst:.2e} (tol 1e-8)"))
}

fn s_hat(s: &[f64]) -> Vec<f64> {
    (0..s.len()).map(|k| (s[k] - s.get(k + 1).copied().unwrap_or(0.0)) * (k + 1) as f64).collect()
}

fn criterion7() -> Outcome {
    let mut rng = seeded_rng(707);
    let (mut worst, mut min_gap) = (0.0f64, f64::INFINITY);
    for d in [2usize, 3] {
        for _ in 0..20 {
            let u = haar_unitary_with::<f64, _>(d, &mut rng);
            let s = desc(random_dist(d, &mut rng));
            let sh = s_hat(&s);
            let m = u.matrix();
            let qt: Vec<f64> = (0..d)
                .map(|i| (1..=d).map(|k| sh[k - 1] * (0..k).map(|l| m[(i, l)].norm_sqr()).sum::<f64>() / k as f64).sum())
                .collect();
            let h = entropy(&s);
            let g = theta_growth(&dist(&qt), &dist(&s), m).unwrap().growth;
            worst = worst.max((g - h).abs());
            for _ in 0..50 {
                let q = random_dist(d, &mut rng);
                let g = theta_growth(&dist(&q), &dist(&s), m).unwrap().growth;
                min_gap = min_gap.min(h - g);
            }
        }
    }
    outcome(
        worst <= 1e-8 && min_gap > 0.0,
        format!("|growth(q~) - H(s)| <= {worst:.2e} (tol 1e-8), smallest H(s) - growth(q) over q != q~ is {min_gap:.2e}"),
    )
}

fn grid_min(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    (0..=10_000).map(|i| f(lo + (hi - lo) * i as f64 / 10_000.0)).fold(f64::INFINITY, f64::min)
}

fn criterion8() -> Outcome {
    let mut rng = seeded_rng(808);
    let mut worst = [0.0f64; 4];
    for _ in 0..100 {
        let x = ComplexMatrix::from_fn(2, 2, |_, _| C64::new(rng.random::<f64>() + 0.01, rng.random::<f64>()));
        let p = random_dist(2, &mut rng);
        let c1 = [x[(0, 0)].norm(), x[(1, 0)].norm()];
        let c2 = [x[(0, 1)].norm(), x[(1, 1)].norm()];
        let f = |a: f64| p[0] * kl(&[1.0 - a, a], &c1).unwrap() + p[1] * kl(&[a * p[0] / p[1], 1.0 - a * p[0] / p[1]], &c2).unwrap();
        let grid = grid_min(0.0, 1f64.min(p[1] / p[0]), f);
        worst[0] = worst[0].max((dbar(&p, &x).unwrap().value - grid).abs());

        let a = haar_unitary_with::<f64, _>(2, &mut rng).into_matrix();
        let (p, q) = (random_dist(2, &mut rng), random_dist(2, &mut rng));
        let b = a.adjoint();
        let c = [b[(0, 0)].norm_sqr(), b[(0, 1)].norm_sqr(), b[(1, 0)].norm_sqr(), b[(1, 1)].norm_sqr()];
        let f = |t: f64| {
            let r = [t, q[0] - t, p[0] - t, 1.0 - p[0] - q[0] + t].map(|x: f64| x.max(0.0));
            kl(&r, &c).unwrap() + entropy(&q) + entropy(&p) - entropy(&r)
        };
        let grid = grid_min((p[0] + q[0] - 1.0).max(0.0), p[0].min(q[0]), f);
        worst[1] = worst[1].max((-theta1(&a, &dist(&p), &dist(&q)).unwrap().growth - grid).abs());

        let a = ComplexMatrix::from_fn(2, 2, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        let b = a.adjoint();
        let w01 = (b[(0, 0)] * b[(1, 1)] - b[(0, 1)] * b[(1, 0)]).norm_sqr() / 2.0;
        let grid = grid_min(0.0, 1.0, |t| kl(&[t, 1.0 - t], &[w01, w01]).unwrap());
        worst[2] = worst[2].max((2.0 * theta2(&a, &Dist::uniform(2)).unwrap().rate() - grid).abs());

        let raw = [rng.random::<f64>() + 0.05, rng.random::<f64>() + 0.05];
        let reference = TupleDistribution::new(2, 2, vec![0.0, raw[0], raw[1], 0.0]).unwrap();
        let proj = i_projection(&reference, &MarginalConstraint::new(&Dist::uniform(2), 2).unwrap()).unwrap();
        let grid = grid_min(0.0, 1.0, |t| kl(&[t, 1.0 - t], &raw).unwrap());
        worst[3] = worst[3].max((proj.value - grid).abs());
    }
    let pass = worst.iter().all(|&w| w <= 1e-6);
    outcome(
        pass,
        format!(
            "worst |solver - grid|: dbar {:.1e}, theta1 {:.1e}, theta2 {:.1e}, i-projection {:.1e} (tol 1e-6)",
            worst[0], worst[1], worst[2], worst[3]
        ),
    )
}

fn criterion9() -> Outcome {
    let mut rng = seeded_rng(909);
    let mut violations = 0;
    let mut slack = f64::INFINITY;
    for trial in 0..1000 {
        let d = 2 + trial % 3;
        let u = haar_unitary_with::<f64, _>(d, &mut rng);
        let s = desc(random_dist(d, &mut rng));
        let sh = s_hat(&s);
        let eps: f64 = if trial % 10 == 0 { 1.0 } else { rng.random() };
        let mut lhs = 0.0;
        let mut q = vec![0.0; d];
        let mut qt = vec![0.0; d];
        for k in 1..=d {
            let pk = p_k_distribution(u.matrix(), k).unwrap();
            let mut cond = pk.probs().to_vec();
            for idx in pk.repetition_free() {
                cond[idx] = (1.0 - eps) * cond[idx] + eps * rng.random::<f64>();
            }
            let total: f64 = cond.iter().sum();
            cond.iter_mut().for_each(|x| *x /= total);
            lhs += sh[k - 1] * cond.iter().zip(pk.probs()).map(|(a, b)| (a - b).abs()).sum::<f64>();
            for (idx, (&c, &r)) in cond.iter().zip(pk.probs()).enumerate() {
                for letter in pk.tuple(idx) {
                    q[letter as usize] += sh[k - 1] * c / k as f64;
                    qt[letter as usize] += sh[k - 1] * r / k as f64;
                }
            }
        }
        let rhs: f64 = q.iter().zip(&qt).map(|(a, b)| (a - b).abs()).sum();
        if lhs < rhs - 1e-10 {
            violations += 1;
        }
        slack = slack.min(lhs - rhs);
    }
    outcome(violations == 0, format!("1000 instances, {violations} violations, smallest lhs - rhs {slack:.2e}"))
}

fn criterion10() -> Outcome {
    let mut rng = seeded_rng(1010);
    let (mut endpoint, mut invariance, mut order) = (0.0f64, 0.0f64, f64::INFINITY);
    for _ in 0..100 {
        let rho = random_state(2, &mut rng);
        let sigma = random_state(2, &mut rng);
        let phi = phi_oracle(&rho, &sigma);
        let d = quantum_relative_entropy(&rho, &sigma).unwrap().value;
        endpoint = endpoint
            .max((r_t(rho.matrix(), &sigma, 0.0).unwrap() - phi).abs())
            .max((r_t(rho.matrix(), &sigma, 1.0).unwrap() - d).abs());
        let u = haar_unitary_with::<f64, _>(2, &mut rng);
        let t: f64 = rng.random();
        let a = r_t(rho.matrix(), &sigma, t).unwrap();
        let b = r_t(rho.conjugate(&u).matrix(), &sigma.conjugate(&u), t).unwrap();
        invariance = invariance.max((a - b).abs());
        // Ordered pair ρ = σ + εP ≥ σ.
        let p = random_density_with::<f64, _>(2, 1, &mut rng).unwrap();
        let above = sigma.matrix() + &p.matrix().scale(0.5 * rng.random::<f64>());
        for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
            order = order.min(r_t(&above, &sigma, t).unwrap());
        }
    }
    let normalization = r_t_scalar(1.0, 0.5).unwrap();
    // Mean value with g(x) = 2^x over classical direct sums of one-dimensional blocks.
    let mut counterexample = None;
    for _ in 0..100 {
        let (r1, r2) = (0.01 + 0.5 * rng.random::<f64>(), 0.01 + 0.5 * rng.random::<f64>());
        let s1 = 0.05 + 0.9 * rng.random::<f64>();
        let sigma = State::new(ComplexMatrix::from_diag(&[s1, 1.0 - s1])).unwrap();
        let (x1, x2) = (r_t_scalar(r1, s1).unwrap(), r_t_scalar(r2, 1.0 - s1).unwrap());
        let (w1, w2) = (r1 / (r1 + r2), r2 / (r1 + r2));
        let joint = r_t(&ComplexMatrix::from_diag(&[r1, r2]), &sigma, 0.5).unwrap();
        let mean = (w1 * x1.exp2() + w2 * x2.exp2()).log2();
        if (joint - mean).abs() > 1e-6 {
            counterexample = Some((r1, r2, s1, joint, mean));
            break;
        }
    }
    let pass = endpoint <= 1e-6 && invariance <= 1e-8 && normalization == 1.0 && order >= -1e-10 && counterexample.is_some();
    let gmv = counterexample.map_or("none".to_string(), |(r1, r2, s1, j, m)| {
        format!("r=({r1:.3},{r2:.3}) s=({s1:.3},{:.3}): R={j:.4} vs mean {m:.4}", 1.0 - s1)
    });
    outcome(
        pass,
        format!(
            "endpoints {endpoint:.1e} (tol 1e-6), invariance {invariance:.1e} (tol 1e-8), R(1||1/2) = {normalization}, min R_t on ordered pairs {order:.3e}, mean value counterexample {gmv}"
        ),
    )
}

fn criterion11() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_schurrates"))
        .args(["verify", "--paper-literal", "--seed", "11", "--trials-scale", "0.25", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let find = |name: &str| report["checks"].as_array().unwrap().iter().find(|c| c["check"] == name).cloned();
    let status_of = |name: &str| find(name).map(|c| c["status"].as_str().unwrap().to_string()).unwrap_or_default();
    let cb = find("cauchy_binet_literal_prefactor").unwrap_or_default();
    let literal_k3 = cb["evidence"]["literal"]["counterexample"]["k"] == 3 && cb["evidence"]["literal"]["counterexample"]["d"] == 3;
    let delta = find("delta_literal_constants").unwrap_or_default();
    let pass = status.code() == Some(0)
        && status_of("cauchy_binet_literal_prefactor") == "reconciled"
        && cb["evidence"]["note"] == "known typo"
        && literal_k3
        && status_of("delta_literal_constants") == "reconciled"
        && delta["evidence"]["note"] == "known typo"
        && status_of("cauchy_binet") == "pass"
        && status_of("delta_calibration") == "pass";
    outcome(
        pass,
        format!(
            "exit {:?}; literal 1/sqrt(k) at (3,3): {}; literal Delta constants {} (expected 0): {}",
            status.code(),
            status_of("cauchy_binet_literal_prefactor"),
            delta["evidence"]["literal_constants"],
            status_of("delta_literal_constants")
        ),
    )
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "exact trace identity", Duration::from_secs(60), criterion1),
        (2, "Cauchy-Binet marginals", Duration::from_secs(30), criterion2),
        (3, "Phi closed form, limit and series", Duration::from_secs(180), criterion3),
        (4, "relative entropy series", Duration::from_secs(180), criterion4),
        (5, "duality identity", Duration::from_secs(10), criterion5),
        (6, "projector algebra", Duration::from_secs(120), criterion6),
        (7, "growth exponent maximizer", Duration::from_secs(120), criterion7),
        (8, "convex solvers vs grid", Duration::from_secs(60), criterion8),
        (9, "norm estimate", Duration::from_secs(60), criterion9),
        (10, "R_t family", Duration::from_secs(120), criterion10),
        (11, "reconciliation ledger", Duration::from_secs(300), criterion11),
    ];
    let results: Vec<(Outcome, Duration)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, _, _, f)| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let out = f();
                    (out, start.elapsed())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| (outcome(false, "panicked".into()), Duration::ZERO)))
            .collect()
    });
    let mut all = true;
    for ((num, name, budget, _), (out, elapsed)) in criteria.iter().zip(results) {
        let pass = out.pass && elapsed <= *budget;
        all &= pass;
        println!(
            "criterion {num:>2} {name}: {} [{:.1}s of {}s] {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            out.detail
        );
    }
    if all { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
