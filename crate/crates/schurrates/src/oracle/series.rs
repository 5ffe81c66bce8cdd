use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::rounding::{frame_rounding, largest_remainder};
use super::traces::{log2_theta1_overlap, log2_theta2_overlap, log2_trace_conjugated, log2_trace_state};
use crate::combinat::{dim_irrep, entropy, kostka, majorizes, Frequency, YoungFrame};
use crate::error::{Error, Result};
use crate::matcore::hermitian_eig;
use crate::schur_weyl::SchurWeylCaps;
use crate::{ComplexMatrix, Dist, State};

/// Which limit a rate sequence approximates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Phi,
    Lambda,
    Delta,
    Theta,
    Theta1,
    Theta2,
}

impl Quantity {
    pub const ALL: [Quantity; 6] =
        [Quantity::Phi, Quantity::Lambda, Quantity::Delta, Quantity::Theta, Quantity::Theta1, Quantity::Theta2];

    pub fn name(&self) -> &'static str {
        match self {
            Quantity::Phi => "phi",
            Quantity::Lambda => "lambda",
            Quantity::Delta => "delta",
            Quantity::Theta => "theta",
            Quantity::Theta1 => "theta1",
            Quantity::Theta2 => "theta2",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown quantity '{s}'")))
    }
}

/// Inputs of one rate sequence.
#[derive(Clone, Debug)]
pub enum SeriesTarget {
    /// `tr{P_{λ,λ} (U_ρ σ U_ρ†)^{⊗n}}` with `λ/n → spec ρ`.
    Phi { rho: State, sigma: State },
    /// `tr{P_{f,λ} (U_σ† σ U_σ)^{⊗n}}` with `f/n → pinch(U_σ† ρ U_σ)` and `λ/n → spec ρ`.
    Lambda { rho: State, sigma: State },
    /// `tr{A^{⊗n} P_{f,λ} A†^{⊗n} σ^{⊗n}}` with `f/n → p`, `λ/n → s`.
    Delta { p: Dist, s: Dist, sigma: ComplexMatrix, a: ComplexMatrix },
    /// `tr{P_{λ,λ} A^{⊗n} P_{g,λ} A†^{⊗n}}` with `g/n → q`, `λ/n → s`.
    Theta { q: Dist, s: Dist, a: ComplexMatrix },
    /// `⟨v_f, A^{⊗n} P_g A†^{⊗n} v_f⟩` with `f/n → p`, `g/n → q` (`d = 2`).
    Theta1 { a: ComplexMatrix, p: Dist, q: Dist },
    /// `⟨v₂^{⊗n}, A^{⊗2n} P_g A†^{⊗2n} v₂^{⊗n}⟩` with `g/2n → q` (`d = 2`), normalized by `2n`.
    Theta2 { a: ComplexMatrix, q: Dist },
}

impl SeriesTarget {
    pub fn quantity(&self) -> Quantity {
        match self {
            SeriesTarget::Phi { .. } => Quantity::Phi,
            SeriesTarget::Lambda { .. } => Quantity::Lambda,
            SeriesTarget::Delta { .. } => Quantity::Delta,
            SeriesTarget::Theta { .. } => Quantity::Theta,
            SeriesTarget::Theta1 { .. } => Quantity::Theta1,
            SeriesTarget::Theta2 { .. } => Quantity::Theta2,
        }
    }
}

/// Least-squares fit `r_n ≈ limit + a·log₂(n)/n + b/n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RateFit {
    pub limit: f64,
    pub log_coefficient: f64,
    pub inverse_coefficient: f64,
    /// Root-mean-square residual.
    pub residual: f64,
}

/// Exact finite-`n` values, their rates and the extrapolated limit.
#[derive(Clone, Debug, Serialize)]
pub struct RateSeries {
    pub quantity: Quantity,
    pub ns: Vec<usize>,
    /// `log₂ t_n` at the rounded point (kept in log form so large `n` cannot underflow).
    pub log2_values: Vec<f64>,
    /// `r_n = −(1/n) log₂ t_n`.
    pub rates: Vec<f64>,
    /// Sizes without an admissible rounding or with `t_n = 0`, and why.
    pub skipped: Vec<(usize, String)>,
    /// Limit of the normalizer part `−(1/n) log₂ tr P_{f,λ}`, known in closed form.
    pub normalizer_limit: f64,
    /// Raw rates interpolated to the exact target point, one per entry of `ns`.
    pub smoothed: Vec<f64>,
    /// Normalized rates interpolated to the exact target point, one per entry of `ns`.
    pub interpolated: Vec<f64>,
    /// Fit of the interpolated normalized rates; its limit plus `normalizer_limit` is `limit`.
    pub fit: Option<RateFit>,
    /// Extrapolated `r_∞`.
    pub limit: f64,
    /// Fit of the raw rates at the rounded points.
    pub raw_fit: Option<RateFit>,
}

impl RateSeries {
    /// `t_n` as plain numbers.
    pub fn values(&self) -> Vec<f64> {
        self.log2_values.iter().map(|v| v.exp2()).collect()
    }

    pub fn residual(&self) -> f64 {
        self.fit.map_or(f64::NAN, |f| f.residual)
    }
}

fn solve_small(mut m: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Option<Vec<f64>> {
    let k = rhs.len();
    for c in 0..k {
        let piv = (c..k).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[piv][c].abs() < 1e-300 {
            return None;
        }
        m.swap(c, piv);
        rhs.swap(c, piv);
        for r in 0..k {
            if r != c {
                let factor = m[r][c] / m[c][c];
                for cc in c..k {
                    m[r][cc] -= factor * m[c][cc];
                }
                rhs[r] -= factor * rhs[c];
            }
        }
    }
    Some((0..k).map(|i| rhs[i] / m[i][i]).collect())
}

/// Ridge-stabilized least squares; column 0 is the intercept and is not penalized.
fn least_squares(rows: &[Vec<f64>], y: &[f64], ridge: f64) -> Option<Vec<f64>> {
    let k = rows.first()?.len();
    let mut m = vec![vec![0.0; k]; k];
    let mut rhs = vec![0.0; k];
    for (row, &v) in rows.iter().zip(y) {
        for i in 0..k {
            rhs[i] += row[i] * v;
            for j in 0..k {
                m[i][j] += row[i] * row[j];
            }
        }
    }
    for (i, r) in m.iter_mut().enumerate().skip(1) {
        r[i] += ridge;
    }
    solve_small(m, rhs)
}

/// Fits `limit + a·log₂(n)/n + b/n`; with fewer than three points the model is truncated.
pub fn fit_rate(ns: &[usize], rates: &[f64]) -> Option<RateFit> {
    let pts: Vec<(f64, f64)> = ns.iter().zip(rates).filter(|(_, r)| r.is_finite()).map(|(&n, &r)| (n as f64, r)).collect();
    if pts.is_empty() {
        return None;
    }
    let cols = pts.len().min(3);
    let rows: Vec<Vec<f64>> =
        pts.iter().map(|&(n, _)| [1.0, n.log2() / n, 1.0 / n][..cols].to_vec()).collect();
    let y: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let c = least_squares(&rows, &y, 0.0)?;
    let residual = (rows
        .iter()
        .zip(&y)
        .map(|(row, v)| {
            let pred: f64 = row.iter().zip(&c).map(|(a, b)| a * b).sum();
            (pred - v).powi(2)
        })
        .sum::<f64>()
        / pts.len() as f64)
        .sqrt();
    Some(RateFit {
        limit: c[0],
        log_coefficient: c.get(1).copied().unwrap_or(0.0),
        inverse_coefficient: c.get(2).copied().unwrap_or(0.0),
        residual,
    })
}

/// Integer vectors of total `n` whose first `d−1` entries are floors or ceilings of `n·x`.
fn lattice(x: &[f64], n: usize, descending: bool) -> Vec<Vec<usize>> {
    let d = x.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let free = d - 1;
    for mask in 0..(1usize << free) {
        let mut v = Vec::with_capacity(d);
        let mut sum = 0usize;
        for (i, &xi) in x.iter().enumerate().take(free) {
            let t = xi * n as f64;
            let c = if mask >> i & 1 == 1 { t.ceil() } else { t.floor() } as usize;
            sum += c;
            v.push(c);
        }
        if sum > n {
            continue;
        }
        v.push(n - sum);
        if descending && v.windows(2).any(|w| w[0] < w[1]) {
            continue;
        }
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// One lattice point: integer vectors for each component of the target.
struct Point {
    parts: Vec<Vec<usize>>,
}

struct Problem {
    /// Target (real vector, whether the component is a frame) for each component.
    targets: Vec<(Vec<f64>, bool)>,
    /// Number of letters per unit of `n`.
    letters: usize,
    /// Whether `tr P_{f,λ}` normalizes the trace.
    normalized: bool,
}

fn dist(x: &[f64]) -> Result<Dist> {
    Dist::from_f64(x)
}

fn qubit(a: &ComplexMatrix) -> Result<()> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::Dimension("theta1 and theta2 are defined for d = 2".into()));
    }
    Ok(())
}

impl SeriesTarget {
    fn problem(&self) -> Result<(Problem, Evaluator)> {
        match self {
            SeriesTarget::Phi { rho, sigma } => {
                let eig = hermitian_eig(rho.matrix())?;
                let v = eig.vectors.matrix();
                let x = &(&v.adjoint() * sigma.matrix()) * v;
                let s = eig.values.iter().map(|w| w.max(0.0)).collect::<Vec<_>>();
                Ok((Problem { targets: vec![(s, true)], letters: 1, normalized: true }, Evaluator::Tied(x)))
            }
            SeriesTarget::Lambda { rho, sigma } => {
                let es = hermitian_eig(sigma.matrix())?;
                let u = es.vectors.matrix();
                let x = &(&u.adjoint() * sigma.matrix()) * u;
                let p = rho.conjugate(&es.vectors.adjoint()).pinching();
                let s = rho.spectrum()?.iter().map(|w| w.max(0.0)).collect::<Vec<_>>();
                Ok((
                    Problem { targets: vec![(p, false), (s, true)], letters: 1, normalized: true },
                    Evaluator::Delta(x),
                ))
            }
            SeriesTarget::Delta { p, s, sigma, a } => {
                if !s.is_descending() {
                    return Err(Error::InvalidDistribution("s must be sorted descending".into()));
                }
                if !majorizes(s.probs(), p.sorted_desc().probs()) {
                    return Err(Error::Infeasible("s does not majorize p".into()));
                }
                let x = &(&a.adjoint() * sigma) * a;
                Ok((
                    Problem {
                        targets: vec![(p.probs().to_vec(), false), (s.probs().to_vec(), true)],
                        letters: 1,
                        normalized: true,
                    },
                    Evaluator::Delta(x),
                ))
            }
            SeriesTarget::Theta { q, s, a } => {
                if !s.is_descending() {
                    return Err(Error::InvalidDistribution("s must be sorted descending".into()));
                }
                Ok((
                    Problem {
                        targets: vec![(q.probs().to_vec(), false), (s.probs().to_vec(), true)],
                        letters: 1,
                        normalized: true,
                    },
                    Evaluator::Theta(a.clone()),
                ))
            }
            SeriesTarget::Theta1 { a, p, q } => {
                qubit(a)?;
                Ok((
                    Problem {
                        targets: vec![(p.probs().to_vec(), false), (q.probs().to_vec(), false)],
                        letters: 1,
                        normalized: false,
                    },
                    Evaluator::Theta1(a.clone()),
                ))
            }
            SeriesTarget::Theta2 { a, q } => {
                qubit(a)?;
                Ok((
                    Problem { targets: vec![(q.probs().to_vec(), false)], letters: 2, normalized: false },
                    Evaluator::Theta2(a.clone()),
                ))
            }
        }
    }
}

enum Evaluator {
    Tied(ComplexMatrix),
    Delta(ComplexMatrix),
    Theta(ComplexMatrix),
    Theta1(ComplexMatrix),
    Theta2(ComplexMatrix),
}

impl Evaluator {
    /// `(log₂ t, log₂ normalizer)` at a point, `None` when the point is not admissible.
    fn eval(&self, pt: &Point, caps: &SchurWeylCaps) -> Result<Option<(f64, f64)>> {
        let norm = |f: &Frequency, l: &YoungFrame| -> Option<f64> {
            let k = kostka(l, f);
            (k > 0).then(|| (k as f64).log2() + (dim_irrep(l) as f64).log2())
        };
        Ok(match self {
            Evaluator::Tied(x) => {
                let l = YoungFrame::new(pt.parts[0].clone())?;
                let f = Frequency::new(pt.parts[0].clone())?;
                Some((log2_trace_state(&f, &l, x, caps)?, norm(&f, &l).expect("K_{λ,λ} = 1")))
            }
            Evaluator::Delta(x) => {
                let f = Frequency::new(pt.parts[0].clone())?;
                let l = YoungFrame::new(pt.parts[1].clone())?;
                match norm(&f, &l) {
                    Some(nz) => Some((log2_trace_state(&f, &l, x, caps)?, nz)),
                    None => None,
                }
            }
            Evaluator::Theta(a) => {
                let g = Frequency::new(pt.parts[0].clone())?;
                let l = YoungFrame::new(pt.parts[1].clone())?;
                let f = Frequency::new(pt.parts[1].clone())?;
                if kostka(&l, &g) == 0 {
                    None
                } else {
                    Some((log2_trace_conjugated(&f, &l, &g, a, caps)?, norm(&f, &l).expect("K_{λ,λ} = 1")))
                }
            }
            Evaluator::Theta1(a) => {
                let f = Frequency::new(pt.parts[0].clone())?;
                let g = Frequency::new(pt.parts[1].clone())?;
                Some((log2_theta1_overlap(a, &f, &g)?, 0.0))
            }
            Evaluator::Theta2(a) => Some((log2_theta2_overlap(a, &Frequency::new(pt.parts[0].clone())?)?, 0.0)),
        })
    }
}

/// Rounded point for size `n` (type/frame rounding where a frame is involved).
fn rounded(problem: &Problem, n: usize) -> Result<Point> {
    let m = n * problem.letters;
    let parts = match problem.targets.as_slice() {
        [(p, false), (s, true)] => {
            let (f, l) = frame_rounding(&dist(p)?, &dist(s)?, m)?;
            vec![f.counts().to_vec(), l.padded(p.len()).expect("frame fits")]
        }
        [(s, true)] => {
            let (_, l) = frame_rounding(&dist(s)?, &dist(s)?, m)?;
            vec![l.padded(s.len()).expect("frame fits")]
        }
        targets => targets.iter().map(|(x, _)| largest_remainder(x, m)).collect(),
    };
    Ok(Point { parts })
}

/// Exact rate sequence over `ns` with its extrapolated limit.
///
/// At every `n` the normalized rate `−(1/n) log₂(t_n / tr P_{f,λ})` is evaluated on the
/// floor/ceiling lattice around the exact target and interpolated there by an affine least
/// squares fit, which removes the rounding jitter before extrapolation. The normalizer part
/// converges to `−H(s)`.
pub fn rate_series(target: &SeriesTarget, ns: &[usize], caps: &SchurWeylCaps) -> Result<RateSeries> {
    let (problem, evaluator) = target.problem()?;
    let mut out = RateSeries { quantity: target.quantity(), ..RateSeries::empty() };
    if problem.normalized {
        let s = &problem.targets.iter().find(|t| t.1).expect("normalized problems carry a frame").0;
        out.normalizer_limit = -entropy(s);
    }
    for &n in ns {
        match series_point(&problem, &evaluator, n, caps) {
            Ok((log2_t, smooth, interp)) => {
                let m = (n * problem.letters) as f64;
                out.ns.push(n);
                out.log2_values.push(log2_t);
                out.rates.push(-log2_t / m);
                out.smoothed.push(smooth);
                out.interpolated.push(interp);
            }
            Err(Error::CapExceeded { size, cap }) => return Err(Error::CapExceeded { size, cap }),
            Err(e) => out.skipped.push((n, e.to_string())),
        }
    }
    out.fit = fit_rate(&out.ns, &out.interpolated);
    out.raw_fit = fit_rate(&out.ns, &out.rates);
    out.limit = out.fit.map_or(f64::NAN, |f| f.limit + out.normalizer_limit);
    Ok(out)
}

impl RateSeries {
    fn empty() -> Self {
        RateSeries {
            quantity: Quantity::Phi,
            ns: Vec::new(),
            log2_values: Vec::new(),
            rates: Vec::new(),
            skipped: Vec::new(),
            normalizer_limit: 0.0,
            smoothed: Vec::new(),
            interpolated: Vec::new(),
            fit: None,
            limit: f64::NAN,
            raw_fit: None,
        }
    }
}

fn series_point(problem: &Problem, evaluator: &Evaluator, n: usize, caps: &SchurWeylCaps) -> Result<(f64, f64, f64)> {
    let m = n * problem.letters;
    let center = rounded(problem, n)?;
    let (log2_t, _) = evaluator
        .eval(&center, caps)?
        .ok_or_else(|| Error::Infeasible(format!("rounded point at n = {n} is not admissible")))?;
    if !log2_t.is_finite() {
        return Err(Error::Infeasible(format!("t_n = 0 at n = {n}")));
    }
    let grids: Vec<Vec<Vec<usize>>> =
        problem.targets.iter().map(|(x, frame)| lattice(x, m, *frame)).collect();
    let mut points: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for g in &grids {
        points = points
            .into_iter()
            .flat_map(|prefix| {
                g.iter().map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v.clone());
                    next
                })
            })
            .collect();
    }
    if !points.contains(&center.parts) {
        points.push(center.parts.clone());
    }
    let mut rows = Vec::new();
    let mut ys = Vec::new();
    let mut raw = Vec::new();
    for parts in points {
        let pt = Point { parts };
        let Some((lt, ln)) = evaluator.eval(&pt, caps)? else { continue };
        if !lt.is_finite() {
            continue;
        }
        let mut row = vec![1.0];
        for (part, (x, _)) in pt.parts.iter().zip(&problem.targets) {
            for (i, &c) in part.iter().enumerate().take(x.len() - 1) {
                row.push(c as f64 - m as f64 * x[i]);
            }
        }
        rows.push(row);
        let norm = if problem.normalized { ln } else { 0.0 };
        ys.push(-(lt - norm) / m as f64);
        raw.push(-lt / m as f64);
    }
    let fit = |y: &[f64]| least_squares(&rows, y, 1e-6).ok_or_else(|| Error::NoConvergence("lattice fit".into()));
    Ok((log2_t, fit(&raw)?[0], fit(&ys)?[0]))
}
