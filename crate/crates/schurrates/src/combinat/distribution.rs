use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Probability vector on a finite index set.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution<T> {
    probs: Vec<T>,
}

impl<T: Scalar> Distribution<T> {
    /// Clamps entries in `[-1e-14, 0)` to zero and renormalizes sums within `1e-10` of one
    /// (tolerances widen accordingly for `f32`).
    pub fn new(mut probs: Vec<T>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty".into()));
        }
        let clamp = T::lit(T::VALIDATION_TOL * 1e-2);
        for p in probs.iter_mut() {
            if !p.is_finite() || *p < -clamp {
                return Err(Error::InvalidDistribution(format!("entry {p}")));
            }
            if *p < T::zero() {
                *p = T::zero();
            }
        }
        let sum = probs.iter().fold(T::zero(), |s, &p| s + p);
        if (sum - T::one()).abs() > T::lit(T::RECONSTRUCTION_TOL) {
            return Err(Error::InvalidDistribution(format!("sum {sum}")));
        }
        if sum != T::one() {
            for p in probs.iter_mut() {
                *p /= sum;
            }
        }
        Ok(Self { probs })
    }

    pub fn from_f64(probs: &[f64]) -> Result<Self> {
        Self::new(probs.iter().map(|&p| T::lit(p)).collect())
    }

    pub fn uniform(d: usize) -> Self {
        Self { probs: vec![T::one() / T::from_usize(d).unwrap(); d] }
    }

    /// Point mass `δ_i` on `d` symbols.
    pub fn delta(d: usize, i: usize) -> Self {
        let mut probs = vec![T::zero(); d];
        probs[i] = T::one();
        Self { probs }
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn sorted_desc(&self) -> Self {
        let mut probs = self.probs.clone();
        probs.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        Self { probs }
    }

    pub fn is_descending(&self) -> bool {
        self.probs.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn entropy(&self) -> T {
        entropy(&self.probs)
    }

    /// Total variation style l1 distance `Σ |p_i - q_i|`.
    pub fn l1(&self, other: &Self) -> T {
        self.probs.iter().zip(&other.probs).fold(T::zero(), |s, (a, b)| s + (*a - *b).abs())
    }
}

/// Shannon entropy in bits, with `0 log 0 = 0`.
pub fn entropy<T: Scalar>(p: &[T]) -> T {
    -p.iter().filter(|&&x| x > T::zero()).fold(T::zero(), |s, &x| s + x * x.log2())
}

/// Kullback-Leibler divergence `Σ p log2(p/q)` in bits. `q` may be any nonnegative vector;
/// the result is `+∞` when `p` puts mass where `q` vanishes.
pub fn kl<T: Scalar>(p: &[T], q: &[T]) -> Result<T> {
    if p.len() != q.len() {
        return Err(Error::Dimension(format!("kl of lengths {} and {}", p.len(), q.len())));
    }
    if let Some(bad) = q.iter().find(|&&x| x < T::zero() || x.is_nan()) {
        return Err(Error::InvalidDistribution(format!("negative reference entry {bad}")));
    }
    let mut s = T::zero();
    for (&a, &b) in p.iter().zip(q) {
        if a > T::zero() {
            if b == T::zero() {
                return Ok(T::infinity());
            }
            s += a * (a / b).log2();
        }
    }
    Ok(s)
}

/// Partial-sum dominance `Σ_{i≤k} g_i ≥ Σ_{i≤k} f_i` for every `k`, without sorting.
pub fn majorizes<T: Scalar>(g: &[T], f: &[T]) -> bool {
    if g.len() != f.len() {
        return false;
    }
    let tol = T::lit(T::VALIDATION_TOL);
    let (mut sg, mut sf) = (T::zero(), T::zero());
    for (&a, &b) in g.iter().zip(f) {
        sg += a;
        sf += b;
        if sg + tol < sf {
            return false;
        }
    }
    true
}

/// `ŝ(k) = (s(k) - s(k+1))·k` with `s(d+1) = 0`, for descending `s`.
pub fn s_hat<T: Scalar>(s: &Distribution<T>) -> Result<Distribution<T>> {
    if !s.is_descending() {
        return Err(Error::InvalidDistribution("s must be sorted descending".into()));
    }
    let p = s.probs();
    let d = p.len();
    let out = (0..d)
        .map(|k| {
            let next = if k + 1 < d { p[k + 1] } else { T::zero() };
            (p[k] - next) * T::from_usize(k + 1).unwrap()
        })
        .collect();
    Distribution::new(out)
}

/// Stochastic matrix `w(y|x)`; column `x` is the output distribution for input `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Channel<T> {
    kernel: Vec<Vec<T>>,
}

impl<T: Scalar> Channel<T> {
    /// `kernel[y][x] = w(y|x)`.
    pub fn new(kernel: Vec<Vec<T>>) -> Result<Self> {
        let outputs = kernel.len();
        let inputs = kernel.first().map_or(0, Vec::len);
        if outputs == 0 || inputs == 0 || kernel.iter().any(|r| r.len() != inputs) {
            return Err(Error::Dimension("channel kernel must be a nonempty rectangle".into()));
        }
        for x in 0..inputs {
            let mut sum = T::zero();
            for row in &kernel {
                if row[x] < T::zero() {
                    return Err(Error::InvalidDistribution(format!("negative kernel entry {}", row[x])));
                }
                sum += row[x];
            }
            if (sum - T::one()).abs() > T::lit(T::VALIDATION_TOL) {
                return Err(Error::InvalidDistribution(format!("column {x} sums to {sum}")));
            }
        }
        Ok(Self { kernel })
    }

    /// Builds the channel whose `x`-th column is `columns[x]`.
    pub fn from_columns(columns: &[Distribution<T>]) -> Result<Self> {
        let outputs = columns.first().map_or(0, Distribution::len);
        let kernel = (0..outputs).map(|y| columns.iter().map(|c| c.probs()[y]).collect()).collect();
        Self::new(kernel)
    }

    pub fn w(&self, y: usize, x: usize) -> T {
        self.kernel[y][x]
    }

    pub fn inputs(&self) -> usize {
        self.kernel[0].len()
    }

    pub fn outputs(&self) -> usize {
        self.kernel.len()
    }

    /// `W(δ_x)`.
    pub fn column(&self, x: usize) -> Vec<T> {
        self.kernel.iter().map(|r| r[x]).collect()
    }

    /// `W(p) = Σ_x p(x) W(δ_x)`.
    pub fn apply(&self, p: &[T]) -> Result<Vec<T>> {
        if p.len() != self.inputs() {
            return Err(Error::Dimension("channel input length".into()));
        }
        Ok(self
            .kernel
            .iter()
            .map(|row| row.iter().zip(p).fold(T::zero(), |s, (w, x)| s + *w * *x))
            .collect())
    }
}
