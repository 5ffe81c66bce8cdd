use std::collections::HashMap;

use crate::error::{Error, Result};

/// Default bound on the number of strings materialized by [`enumerate_type_class`].
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// Weakly decreasing partition `λ_1 ≥ λ_2 ≥ …`; trailing zero rows are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungFrame {
    rows: Vec<usize>,
}

impl YoungFrame {
    pub fn new(mut rows: Vec<usize>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!("{rows:?} is not weakly decreasing")));
        }
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(Self { rows })
    }

    /// Number of boxes.
    pub fn n(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Row length, zero beyond the last row.
    pub fn row(&self, i: usize) -> usize {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// Rows padded with zeros to length `d` (`None` if the frame has more rows).
    pub fn padded(&self, d: usize) -> Option<Vec<usize>> {
        (self.rows.len() <= d).then(|| (0..d).map(|i| self.row(i)).collect())
    }

    /// `λ / n` padded to `d` entries.
    pub fn normalized(&self, d: usize) -> Vec<f64> {
        let n = self.n().max(1) as f64;
        (0..d).map(|i| self.row(i) as f64 / n).collect()
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.row(0);
        Self { rows: (0..cols).map(|j| self.rows.iter().filter(|&&r| r > j).count()).collect() }
    }

    /// All partitions of `n` with at most `max_rows` rows, in reverse lexicographic order.
    pub fn all(n: usize, max_rows: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: usize, max_part: usize, rows_left: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungFrame>) {
            if rem == 0 {
                out.push(YoungFrame { rows: cur.clone() });
                return;
            }
            if rows_left == 0 {
                return;
            }
            for part in (1..=max_part.min(rem)).rev() {
                cur.push(part);
                rec(rem - part, part, rows_left - 1, cur, out);
                cur.pop();
            }
        }
        rec(n, n, max_rows, &mut cur, &mut out);
        out
    }
}

impl std::fmt::Display for YoungFrame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Type (letter counts) of strings over `[d]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frequency {
    counts: Vec<usize>,
}

impl Frequency {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidShape("frequency over an empty alphabet".into()));
        }
        Ok(Self { counts })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn d(&self) -> usize {
        self.counts.len()
    }

    pub fn n(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn normalized(&self) -> Vec<f64> {
        let n = self.n().max(1) as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }

    /// Counts sorted descending, read as a Young frame.
    pub fn sorted_frame(&self) -> YoungFrame {
        let mut rows = self.counts.clone();
        rows.sort_unstable_by(|a, b| b.cmp(a));
        YoungFrame::new(rows).expect("sorted counts form a frame")
    }

    /// Frequency with the same counts as a frame padded to `d` letters.
    pub fn from_frame(frame: &YoungFrame, d: usize) -> Result<Self> {
        let counts = frame
            .padded(d)
            .ok_or_else(|| Error::InvalidShape(format!("{frame} has more than {d} rows")))?;
        Self::new(counts)
    }

    /// Type of a string.
    pub fn of_string(x: &[u8], d: usize) -> Self {
        let mut counts = vec![0; d];
        for &c in x {
            counts[c as usize] += 1;
        }
        Self { counts }
    }

    /// All types of length-`n` strings over `d` letters.
    pub fn all(n: usize, d: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = vec![0; d];
        fn rec(i: usize, rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Frequency>) {
            if i + 1 == cur.len() {
                cur[i] = rem;
                out.push(Frequency { counts: cur.clone() });
                return;
            }
            for c in (0..=rem).rev() {
                cur[i] = c;
                rec(i + 1, rem - c, cur, out);
            }
        }
        if d > 0 {
            rec(0, n, &mut cur, &mut out);
        }
        out
    }
}

impl std::fmt::Display for Frequency {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// `|T_f| = n! / Π f(i)!`.
pub fn type_class_size(f: &Frequency) -> u128 {
    let mut left = f.n();
    let mut size = 1u128;
    for &c in f.counts() {
        size *= binomial(left, c);
        left -= c;
    }
    size
}

/// All strings of type `f` in lexicographic order (letters are `0..d`).
pub fn enumerate_type_class(f: &Frequency, cap: u128) -> Result<Vec<Vec<u8>>> {
    let size = type_class_size(f);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let mut first: Vec<u8> = Vec::with_capacity(f.n());
    for (i, &c) in f.counts().iter().enumerate() {
        first.extend(std::iter::repeat_n(i as u8, c));
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut cur = first;
    loop {
        out.push(cur.clone());
        if !next_permutation(&mut cur) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(x: &mut [u8]) -> bool {
    if x.len() < 2 {
        return false;
    }
    let mut i = x.len() - 1;
    while i > 0 && x[i - 1] >= x[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = x.len() - 1;
    while x[j] <= x[i - 1] {
        j -= 1;
    }
    x.swap(i - 1, j);
    x[i..].reverse();
    true
}

/// Dimension of the irreducible `S_n` representation `F_λ` by the hook-length formula.
pub fn dim_irrep(lambda: &YoungFrame) -> u128 {
    let conj = lambda.conjugate();
    let mut hooks = 1u128;
    for (i, &r) in lambda.rows().iter().enumerate() {
        for j in 0..r {
            hooks *= (r - j - 1 + conj.row(j) - i - 1 + 1) as u128;
        }
    }
    factorial(lambda.n()) / hooks
}

/// Kostka number: semistandard tableaux of shape `λ` and content `f`, counted by peeling
/// horizontal strips of the largest letter.
pub fn kostka(lambda: &YoungFrame, f: &Frequency) -> u64 {
    if lambda.n() != f.n() {
        return 0;
    }
    let mut memo = HashMap::new();
    kostka_rec(lambda.rows().to_vec(), f.counts(), &mut memo)
}

fn kostka_rec(shape: Vec<usize>, content: &[usize], memo: &mut HashMap<(Vec<usize>, usize), u64>) -> u64 {
    let Some((&last, rest)) = content.split_last() else {
        return u64::from(shape.iter().all(|&r| r == 0));
    };
    if shape.iter().filter(|&&r| r > 0).count() > content.len() {
        return 0;
    }
    let key = (shape.clone(), content.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    // Inner shapes μ with λ_{i+1} ≤ μ_i ≤ λ_i and |λ/μ| = last.
    let mut total = 0u64;
    let mut mu = shape.clone();
    fn strips(
        i: usize,
        rem: usize,
        shape: &[usize],
        mu: &mut Vec<usize>,
        rest: &[usize],
        total: &mut u64,
        memo: &mut HashMap<(Vec<usize>, usize), u64>,
    ) {
        if i == shape.len() {
            if rem == 0 {
                let mut m = mu.clone();
                while m.last() == Some(&0) {
                    m.pop();
                }
                *total += kostka_rec(m, rest, memo);
            }
            return;
        }
        let lower = shape.get(i + 1).copied().unwrap_or(0);
        let max_take = (shape[i] - lower).min(rem);
        for take in 0..=max_take {
            mu[i] = shape[i] - take;
            strips(i + 1, rem - take, shape, mu, rest, total, memo);
        }
        mu[i] = shape[i];
    }
    strips(0, last, &shape, &mut mu, rest, &mut total, memo);
    memo.insert(key, total);
    total
}
