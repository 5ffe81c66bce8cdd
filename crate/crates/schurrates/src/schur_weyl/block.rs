use std::collections::HashMap;

use crate::combinat::{enumerate_type_class, Frequency};
use crate::error::{Error, Result};

/// Position of a string in the computational basis of `(C^d)^{⊗n}`.
pub fn string_index(x: &[u8], d: usize) -> usize {
    x.iter().fold(0, |acc, &c| acc * d + c as usize)
}

/// Inverse of [`string_index`].
pub fn index_string(mut idx: usize, n: usize, d: usize) -> Vec<u8> {
    let mut x = vec![0u8; n];
    for slot in x.iter_mut().rev() {
        *slot = (idx % d) as u8;
        idx /= d;
    }
    x
}

/// Ordered set of basis strings closed under permutations (a type class or the full basis).
#[derive(Clone, Debug)]
pub struct Block {
    n: usize,
    d: usize,
    strings: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl Block {
    pub fn type_class(f: &Frequency, cap: u128) -> Result<Self> {
        let strings = enumerate_type_class(f, cap)?;
        Ok(Self::from_strings(f.n(), f.d(), strings))
    }

    pub fn full(n: usize, d: usize, cap: u128) -> Result<Self> {
        let size = (d as u128).pow(n as u32);
        if size > cap {
            return Err(Error::CapExceeded { size, cap });
        }
        let strings = (0..size as usize).map(|i| index_string(i, n, d)).collect();
        Ok(Self::from_strings(n, d, strings))
    }

    fn from_strings(n: usize, d: usize, strings: Vec<Vec<u8>>) -> Self {
        let index = strings.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Self { n, d, strings, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn strings(&self) -> &[Vec<u8>] {
        &self.strings
    }

    pub fn position(&self, x: &[u8]) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Full-space index of every block string.
    pub fn global_indices(&self) -> Vec<usize> {
        self.strings.iter().map(|s| string_index(s, self.d)).collect()
    }
}
