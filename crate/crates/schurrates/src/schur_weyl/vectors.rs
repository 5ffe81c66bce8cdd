use num_complex::Complex;
use num_traits::Zero;

use super::block::string_index;
use super::permutation::{permute_vector, Permutation};
use crate::combinat::{enumerate_type_class, factorial, type_class_size, Frequency, YoungFrame, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::C64;

/// Vector on `(C^d)^{⊗n}` in the computational basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialVector {
    n: usize,
    d: usize,
    amps: Vec<C64>,
}

impl SpecialVector {
    pub fn new(n: usize, d: usize, amps: Vec<C64>) -> Result<Self> {
        if amps.len() != d.pow(n as u32) {
            return Err(Error::Dimension(format!("{} amplitudes for d^n = {}", amps.len(), d.pow(n as u32))));
        }
        Ok(Self { n, d, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::Dimension("local dimensions differ".into()));
        }
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(Self { n: self.n + other.n, d: self.d, amps })
    }

    /// The empty tensor product (scalar 1).
    pub fn unit(d: usize) -> Self {
        Self { n: 0, d, amps: vec![Complex::new(1.0, 0.0)] }
    }

    pub fn inner(&self, other: &Self) -> C64 {
        self.amps.iter().zip(&other.amps).fold(Complex::zero(), |s, (a, b)| s + a.conj() * b)
    }
}

/// `prefactor · Σ_{τ∈S_k} sgn(τ) 𝔹(τ)(e_1 ⊗ … ⊗ e_k)` in `(C^d)^{⊗k}`.
pub fn antisym_vector_scaled(k: usize, d: usize, prefactor: f64) -> Result<SpecialVector> {
    if k == 0 || k > d {
        return Err(Error::OutOfRange(format!("antisymmetric vector v_{k} needs 1 <= k <= d = {d}")));
    }
    let mut amps = vec![Complex::zero(); d.pow(k as u32)];
    let base: Vec<u8> = (0..k as u8).collect();
    for tau in Permutation::all(k) {
        amps[string_index(&tau.act(&base), d)] += Complex::new(prefactor * tau.sign() as f64, 0.0);
    }
    SpecialVector::new(k, d, amps)
}

/// Unit-norm totally antisymmetric `v_k` (prefactor `1/√k!`).
pub fn antisym_vector(k: usize, d: usize) -> Result<SpecialVector> {
    antisym_vector_scaled(k, d, 1.0 / (factorial(k) as f64).sqrt())
}

/// Unit-norm symmetric vector `|T_g|^{-1/2} Σ_{x∈T_g} e_x`.
pub fn sym_type_vector(g: &Frequency) -> Result<SpecialVector> {
    let strings = enumerate_type_class(g, DEFAULT_ENUMERATION_CAP)?;
    let amp = 1.0 / (type_class_size(g) as f64).sqrt();
    let mut amps = vec![Complex::zero(); g.d().pow(g.n() as u32)];
    for s in &strings {
        amps[string_index(s, g.d())] = Complex::new(amp, 0.0);
    }
    SpecialVector::new(g.n(), g.d(), amps)
}

/// Standard Young tableau; entries are the positions `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = YoungFrame::new(rows.iter().map(Vec::len).collect())?;
        let n = shape.n();
        let mut seen = vec![false; n];
        for &e in rows.iter().flatten() {
            if e >= n || std::mem::replace(&mut seen[e], true) {
                return Err(Error::InvalidShape("tableau entries must be 0..n once each".into()));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidShape("rows must increase".into()));
            }
            if i > 0 && row.iter().enumerate().any(|(j, &e)| e <= rows[i - 1][j]) {
                return Err(Error::InvalidShape("columns must increase".into()));
            }
        }
        Ok(Self { rows })
    }

    /// Tableau filled row by row: `0..λ_1` in the first row and so on.
    pub fn row_reading(lambda: &YoungFrame) -> Self {
        let mut next = 0;
        let rows = lambda
            .rows()
            .iter()
            .map(|&r| {
                let row: Vec<usize> = (next..next + r).collect();
                next += r;
                row
            })
            .collect();
        Self { rows }
    }

    pub fn shape(&self) -> YoungFrame {
        YoungFrame::new(self.rows.iter().map(Vec::len).collect()).expect("valid shape")
    }

    pub fn n(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width).map(|j| self.rows.iter().filter_map(|r| r.get(j).copied()).collect()).collect()
    }
}

/// All products of permutations of the given disjoint position sets.
fn group_of(n: usize, sets: &[Vec<usize>]) -> Vec<Permutation> {
    let mut group = vec![Permutation::identity(n)];
    for set in sets.iter().filter(|s| s.len() > 1) {
        let factors = Permutation::all_on(n, set);
        group = group.iter().flat_map(|g| factors.iter().map(move |h| g.compose(h))).collect();
    }
    group
}

/// `E_T v = Σ_{υ∈C_T} Σ_{τ∈R_T} sgn(υ) 𝔹(υ∘τ) v` for a full-space vector `v`.
pub fn young_symmetrizer_apply(t: &StandardTableau, v: &[C64], d: usize) -> Result<Vec<C64>> {
    let n = t.n();
    if n > 8 {
        return Err(Error::CapExceeded { size: n as u128, cap: 8 });
    }
    let rows = group_of(n, t.rows());
    let cols = group_of(n, &t.columns());
    let mut row_sym = vec![Complex::zero(); v.len()];
    for tau in &rows {
        for (a, b) in row_sym.iter_mut().zip(permute_vector(tau, v, d)?) {
            *a += b;
        }
    }
    let mut out = vec![Complex::zero(); v.len()];
    for ups in &cols {
        let s = ups.sign() as f64;
        for (a, b) in out.iter_mut().zip(permute_vector(ups, &row_sym, d)?) {
            *a += b * s;
        }
    }
    Ok(out)
}

/// Unit vector in the range of `P_{f,λ}`.
///
/// For `f = λ` (any `d`) this is `⊗_k v_k^{⊗(λ_k − λ_{k+1})}`; for `d = 2` and
/// `f(i) ≥ λ_2` it is `v_2^{⊗λ_2} ⊗ v_{f − λ_2}`.
pub fn highest_weight_vector(f: &Frequency, lambda: &YoungFrame, d: usize) -> Result<SpecialVector> {
    let padded = lambda
        .padded(d)
        .ok_or_else(|| Error::InvalidShape(format!("{lambda} has more than {d} rows")))?;
    if f.d() != d || f.n() != lambda.n() {
        return Err(Error::InvalidShape(format!("frequency {f} does not match frame {lambda}")));
    }
    if f.counts() == padded.as_slice() {
        let mut v = SpecialVector::unit(d);
        for k in 1..=d {
            let reps = padded[k - 1] - padded.get(k).copied().unwrap_or(0);
            if reps == 0 {
                continue;
            }
            let vk = antisym_vector(k, d)?;
            for _ in 0..reps {
                v = v.tensor(&vk)?;
            }
        }
        return Ok(v);
    }
    if d == 2 && f.counts().iter().all(|&c| c >= padded[1]) {
        let l2 = padded[1];
        let rest = Frequency::new(vec![f.counts()[0] - l2, f.counts()[1] - l2])?;
        let mut v = SpecialVector::unit(2);
        let v2 = antisym_vector(2, 2)?;
        for _ in 0..l2 {
            v = v.tensor(&v2)?;
        }
        return v.tensor(&sym_type_vector(&rest)?);
    }
    Err(Error::InvalidShape(format!("no highest weight construction for f={f}, λ={lambda}, d={d}")))
}
