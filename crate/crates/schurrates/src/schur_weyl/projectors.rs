use std::collections::HashMap;

use num_complex::Complex;

use super::block::Block;
use super::permutation::Permutation;
use crate::combinat::{
    character, class_size, dim_irrep, factorial, kostka, Frequency, YoungFrame, DEFAULT_ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::{ComplexMatrix, C64};

/// Size limits for exact projector construction.
#[derive(Clone, Debug)]
pub struct SchurWeylCaps {
    /// Largest `n` for the class-sum construction when `d ≤ 2`.
    pub max_n_qubit: usize,
    /// Largest `n` for the class-sum construction when `d = 3`.
    pub max_n_qutrit: usize,
    /// Largest `n` for the class-sum construction when `d ≥ 4`.
    pub max_n_other: usize,
    /// Largest block handled by the spectral construction.
    pub max_spectral_block: usize,
    pub enumeration_cap: u128,
}

impl Default for SchurWeylCaps {
    fn default() -> Self {
        Self {
            max_n_qubit: 8,
            max_n_qutrit: 6,
            max_n_other: 5,
            max_spectral_block: 4000,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl SchurWeylCaps {
    pub fn max_n(&self, d: usize) -> usize {
        match d {
            0..=2 => self.max_n_qubit,
            3 => self.max_n_qutrit,
            _ => self.max_n_other,
        }
    }

    fn check(&self, n: usize, d: usize) -> Result<()> {
        let cap = self.max_n(d);
        if n > cap {
            return Err(Error::CapExceeded { size: n as u128, cap: cap as u128 });
        }
        Ok(())
    }
}

/// How isotypic projectors are realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectorMethod {
    /// `(dim F_λ / n!) Σ_μ χ_λ(μ) C_μ` over all conjugacy classes.
    ClassSums,
    /// Spectral projector of a generic combination of cycle class sums.
    Spectral,
}

/// Operator on `(C^d)^{⊗n}` stored on a permutation-closed block of basis strings.
#[derive(Clone, Debug)]
pub struct ProjectorBlock {
    n: usize,
    d: usize,
    basis: Vec<Vec<u8>>,
    matrix: ComplexMatrix,
}

impl ProjectorBlock {
    fn from_real(block: &Block, m: &[f64]) -> Self {
        let len = block.len();
        let matrix = ComplexMatrix::from_fn(len, len, |i, j| Complex::new(m[i * len + j], 0.0));
        Self { n: block.n(), d: block.d(), basis: block.strings().to_vec(), matrix }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Trace rounded to the nearest integer.
    pub fn rank(&self) -> usize {
        self.trace().round().max(0.0) as usize
    }

    pub fn idempotence_error(&self) -> f64 {
        (&self.matrix * &self.matrix).max_abs_diff(&self.matrix)
    }

    pub fn hermiticity_error(&self) -> f64 {
        self.matrix.hermitian_deviation()
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        self.matrix.mul_vec(v)
    }

    /// Applies the operator to a full-space vector (zero outside the block).
    pub fn apply_full(&self, v: &[C64]) -> Result<Vec<C64>> {
        let len = self.d.pow(self.n as u32);
        if v.len() != len {
            return Err(Error::Dimension(format!("vector of length {} for d^n = {len}", v.len())));
        }
        let idx: Vec<usize> = self.basis.iter().map(|s| super::block::string_index(s, self.d)).collect();
        let local: Vec<C64> = idx.iter().map(|&i| v[i]).collect();
        let image = self.matrix.mul_vec(&local)?;
        let mut out = vec![Complex::new(0.0, 0.0); len];
        for (&i, z) in idx.iter().zip(image) {
            out[i] = z;
        }
        Ok(out)
    }

    /// Dense `d^n × d^n` matrix of the operator.
    pub fn to_full(&self) -> ComplexMatrix {
        let len = self.d.pow(self.n as u32);
        let idx: Vec<usize> = self.basis.iter().map(|s| super::block::string_index(s, self.d)).collect();
        let mut out = ComplexMatrix::zeros(len, len);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out[(i, j)] = self.matrix[(a, b)];
            }
        }
        out
    }
}

/// Diagonal projector onto the span of the type class `T_f`.
pub fn projector_f(f: &Frequency) -> Result<ProjectorBlock> {
    let block = Block::type_class(f, DEFAULT_ENUMERATION_CAP)?;
    let len = block.len();
    let mut m = vec![0.0; len * len];
    for i in 0..len {
        m[i * len + i] = 1.0;
    }
    Ok(ProjectorBlock::from_real(&block, &m))
}

/// Class sums `C_μ = Σ_{τ of type μ} 𝔹(τ)` on one block, reusable across frames.
#[derive(Clone, Debug)]
pub struct Isotypic {
    block: Block,
    classes: Vec<(YoungFrame, Vec<f64>)>,
}

impl Isotypic {
    pub fn new(block: Block, caps: &SchurWeylCaps) -> Result<Self> {
        caps.check(block.n(), block.d())?;
        let n = block.n();
        let len = block.len();
        let mut slot: HashMap<YoungFrame, usize> = HashMap::new();
        let mut classes: Vec<(YoungFrame, Vec<f64>)> = Vec::new();
        let mut y = vec![0u8; n];
        for tau in Permutation::all(n) {
            let ct = tau.cycle_type();
            let k = *slot.entry(ct.clone()).or_insert_with(|| {
                classes.push((ct, vec![0.0; len * len]));
                classes.len() - 1
            });
            let m = &mut classes[k].1;
            for (col, x) in block.strings().iter().enumerate() {
                tau.act_into(x, &mut y);
                let row = block
                    .position(&y)
                    .ok_or_else(|| Error::InvalidParameter("block is not permutation closed".into()))?;
                m[row * len + col] += 1.0;
            }
        }
        Ok(Self { block, classes })
    }

    pub fn block(&self) -> &Block {
        &self.block
    }

    /// Class sum for the given cycle type.
    pub fn class_sum(&self, cycle_type: &YoungFrame) -> Option<&[f64]> {
        self.classes.iter().find(|(c, _)| c == cycle_type).map(|(_, m)| m.as_slice())
    }

    /// `P_λ` restricted to the block.
    pub fn projector(&self, lambda: &YoungFrame) -> ProjectorBlock {
        let len = self.block.len();
        let n = self.block.n();
        let mut acc = vec![0.0; len * len];
        if lambda.n() == n {
            for (mu, m) in &self.classes {
                let chi = character(lambda, mu) as f64;
                if chi != 0.0 {
                    for (a, b) in acc.iter_mut().zip(m) {
                        *a += chi * b;
                    }
                }
            }
            let coef = dim_irrep(lambda) as f64 / factorial(n) as f64;
            for a in acc.iter_mut() {
                *a *= coef;
            }
        }
        ProjectorBlock::from_real(&self.block, &acc)
    }
}

/// `P_λ` on a block through class sums (`n` limited by the default caps).
pub fn projector_lambda(lambda: &YoungFrame, block: &Block) -> Result<ProjectorBlock> {
    Ok(Isotypic::new(block.clone(), &SchurWeylCaps::default())?.projector(lambda))
}

/// `P_{f,λ} = P_f P_λ` restricted to `T_f`.
pub fn projector_f_lambda(
    f: &Frequency,
    lambda: &YoungFrame,
    method: ProjectorMethod,
    caps: &SchurWeylCaps,
) -> Result<ProjectorBlock> {
    let block = Block::type_class(f, caps.enumeration_cap)?;
    match method {
        ProjectorMethod::ClassSums => Ok(Isotypic::new(block, caps)?.projector(lambda)),
        ProjectorMethod::Spectral => {
            if block.len() > caps.max_spectral_block {
                return Err(Error::CapExceeded { size: block.len() as u128, cap: caps.max_spectral_block as u128 });
            }
            projector_lambda_spectral(lambda, &block)
        }
    }
}

const CLASS_WEIGHTS: [f64; 6] = [1.0, 0.577_215_664_9, 0.331_662_479_0, 0.271_828_182_8, 0.141_421_356_2, 0.099_999_7];

/// `P_λ` on a block as the spectral projector of a central element built from single-cycle
/// class sums (transpositions first, longer cycles only when needed to separate frames).
///
/// On the `μ`-isotypic component the class sum of `m`-cycles acts as `|C_m| χ_μ(C_m) / dim F_μ`.
pub fn projector_lambda_spectral(lambda: &YoungFrame, block: &Block) -> Result<ProjectorBlock> {
    let (n, d, len) = (block.n(), block.d(), block.len());
    let present: Vec<YoungFrame> = present_frames(block);
    if !present.contains(lambda) {
        return Ok(ProjectorBlock::from_real(block, &vec![0.0; len * len]));
    }
    let mut central = vec![0.0; len * len];
    let mut eig: Vec<f64> = vec![0.0; present.len()];
    let mut separated = present.len() < 2;
    for (m, &w) in (2..=n).zip(CLASS_WEIGHTS.iter()) {
        if separated {
            break;
        }
        let mut parts = vec![m];
        parts.extend(std::iter::repeat_n(1, n - m));
        let ct = YoungFrame::new(parts)?;
        let size = class_size(&ct) as f64;
        for (e, mu) in eig.iter_mut().zip(&present) {
            *e += w * size * character(mu, &ct) as f64 / dim_irrep(mu) as f64;
        }
        let cs = cycle_class_sum(block, m)?;
        for (a, b) in central.iter_mut().zip(&cs) {
            *a += w * b;
        }
        let scale = eig.iter().fold(1.0f64, |s, e| s.max(e.abs()));
        separated = eig
            .iter()
            .enumerate()
            .all(|(i, a)| eig[i + 1..].iter().all(|b| (a - b).abs() > 1e-6 * scale));
    }
    if !separated {
        return Err(Error::NoConvergence(format!("cycle class sums do not separate frames at n={n}, d={d}")));
    }
    let target = present.iter().position(|mu| mu == lambda).expect("present");
    let mut proj = vec![0.0; len * len];
    for i in 0..len {
        proj[i * len + i] = 1.0;
    }
    for (k, &omega) in eig.iter().enumerate() {
        if k == target {
            continue;
        }
        let denom = eig[target] - omega;
        let mut factor = central.clone();
        for i in 0..len {
            factor[i * len + i] -= omega;
        }
        for x in factor.iter_mut() {
            *x /= denom;
        }
        proj = real_matmul(&proj, &factor, len);
    }
    Ok(ProjectorBlock::from_real(block, &proj))
}

/// Frames that can occur in the block: at most `d` rows, and dominating the type of a
/// type-class block.
fn present_frames(block: &Block) -> Vec<YoungFrame> {
    let (n, d) = (block.n(), block.d());
    let all = YoungFrame::all(n, d);
    if block.len() == d.pow(n as u32) {
        return all;
    }
    let f = Frequency::of_string(&block.strings()[0], d);
    all.into_iter().filter(|l| kostka(l, &f) > 0).collect()
}

/// Sum of `𝔹(τ)` over all `m`-cycles `τ`, as a dense row-major matrix on the block.
fn cycle_class_sum(block: &Block, m: usize) -> Result<Vec<f64>> {
    let (n, len) = (block.n(), block.len());
    let mut out = vec![0.0; len * len];
    let mut y = vec![0u8; n];
    let mut subset: Vec<usize> = (0..m).collect();
    loop {
        let rest = &subset[1..];
        for order in Permutation::all(m - 1) {
            let mut img: Vec<usize> = (0..n).collect();
            let mut prev = subset[0];
            for &k in order.images() {
                img[prev] = rest[k];
                prev = rest[k];
            }
            img[prev] = subset[0];
            let tau = Permutation::new(img)?;
            for (col, x) in block.strings().iter().enumerate() {
                tau.act_into(x, &mut y);
                let row = block
                    .position(&y)
                    .ok_or_else(|| Error::InvalidParameter("block is not permutation closed".into()))?;
                out[row * len + col] += 1.0;
            }
        }
        // Next m-subset of 0..n in lexicographic order.
        let Some(i) = (0..m).rev().find(|&i| subset[i] < n - m + i) else {
            break;
        };
        subset[i] += 1;
        for j in i + 1..m {
            subset[j] = subset[j - 1] + 1;
        }
    }
    Ok(out)
}

fn real_matmul(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len * len];
    for i in 0..len {
        for k in 0..len {
            let x = a[i * len + k];
            if x == 0.0 {
                continue;
            }
            let brow = &b[k * len..(k + 1) * len];
            let orow = &mut out[i * len..(i + 1) * len];
            for (o, y) in orow.iter_mut().zip(brow) {
                *o += x * y;
            }
        }
    }
    out
}
