use num_complex::Complex;
use num_traits::Zero;

use super::block::{string_index, Block};
use crate::combinat::{cycle_type_of, YoungFrame};
use crate::error::{Error, Result};
use crate::C64;

/// Permutation of `0..n` given by its images, `τ(i) = img[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    img: Vec<usize>,
}

impl Permutation {
    pub fn new(img: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; img.len()];
        for &i in &img {
            if i >= img.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter(format!("{img:?} is not a permutation")));
            }
        }
        Ok(Self { img })
    }

    pub fn identity(n: usize) -> Self {
        Self { img: (0..n).collect() }
    }

    /// Transposition of positions `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut img: Vec<usize> = (0..n).collect();
        img.swap(a, b);
        Self { img }
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.img[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { img: other.img.iter().map(|&i| self.img[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut img = vec![0; self.img.len()];
        for (i, &t) in self.img.iter().enumerate() {
            img[t] = i;
        }
        Self { img }
    }

    pub fn cycle_type(&self) -> YoungFrame {
        cycle_type_of(&self.img)
    }

    pub fn sign(&self) -> i32 {
        let ct = self.cycle_type();
        if (self.n() - ct.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `τ·x = (x_{τ⁻¹(1)}, …, x_{τ⁻¹(n)})`: letter `x_i` moves to position `τ(i)`.
    pub fn act(&self, x: &[u8]) -> Vec<u8> {
        let mut y = vec![0u8; x.len()];
        self.act_into(x, &mut y);
        y
    }

    pub(crate) fn act_into(&self, x: &[u8], y: &mut [u8]) {
        for (i, &c) in x.iter().enumerate() {
            y[self.img[i]] = c;
        }
    }

    /// Every permutation of `0..n` in lexicographic order of image vectors.
    pub fn all(n: usize) -> Vec<Self> {
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        loop {
            out.push(Self { img: cur.clone() });
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Every permutation that fixes all points outside `support` and permutes `support`.
    pub fn all_on(n: usize, support: &[usize]) -> Vec<Self> {
        Self::all(support.len())
            .into_iter()
            .map(|p| {
                let mut img: Vec<usize> = (0..n).collect();
                for (a, &src) in support.iter().enumerate() {
                    img[src] = support[p.img[a]];
                }
                Self { img }
            })
            .collect()
    }
}

/// `𝔹(τ) v` on the full space `(C^d)^{⊗n}`.
pub fn permute_vector(tau: &Permutation, v: &[C64], d: usize) -> Result<Vec<C64>> {
    let n = tau.n();
    let len = d.pow(n as u32);
    if v.len() != len {
        return Err(Error::Dimension(format!("vector of length {} for d^n = {len}", v.len())));
    }
    let mut out = vec![Complex::zero(); len];
    let mut x = vec![0u8; n];
    let mut y = vec![0u8; n];
    for (idx, &amp) in v.iter().enumerate() {
        if amp.is_zero() {
            continue;
        }
        let mut rem = idx;
        for slot in x.iter_mut().rev() {
            *slot = (rem % d) as u8;
            rem /= d;
        }
        tau.act_into(&x, &mut y);
        out[string_index(&y, d)] = amp;
    }
    Ok(out)
}

/// `𝔹(τ) v` for `v` expressed in the basis of a permutation-closed block.
pub fn permute_vector_block(tau: &Permutation, block: &Block, v: &[C64]) -> Result<Vec<C64>> {
    if v.len() != block.len() || tau.n() != block.n() {
        return Err(Error::Dimension("vector or permutation does not match block".into()));
    }
    let mut out = vec![Complex::zero(); v.len()];
    for (x, &amp) in block.strings().iter().zip(v) {
        let y = tau.act(x);
        let pos = block
            .position(&y)
            .ok_or_else(|| Error::InvalidParameter("block is not closed under the permutation".into()))?;
        out[pos] = amp;
    }
    Ok(out)
}
