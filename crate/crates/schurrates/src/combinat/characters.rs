use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::shapes::{factorial, YoungFrame};

type Memo = HashMap<(Vec<usize>, Vec<usize>), i64>;

fn memo() -> &'static Mutex<Memo> {
    static MEMO: OnceLock<Mutex<Memo>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Irreducible character `χ_λ` on the class of the given cycle type, by the
/// Murnaghan-Nakayama rule on beta-sets. Returns 0 if the box counts differ.
pub fn character(lambda: &YoungFrame, cycle_type: &YoungFrame) -> i64 {
    if lambda.n() != cycle_type.n() {
        return 0;
    }
    mn(lambda.rows().to_vec(), cycle_type.rows())
}

fn mn(shape: Vec<usize>, parts: &[usize]) -> i64 {
    let Some((&r, rest)) = parts.split_first() else {
        return i64::from(shape.is_empty());
    };
    let key = (shape.clone(), parts.to_vec());
    if let Some(&v) = memo().lock().expect("character memo poisoned").get(&key) {
        return v;
    }
    let len = shape.len();
    let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &l)| l + len - 1 - i).collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[idx] = b - r;
        nb.sort_unstable_by(|x, y| y.cmp(x));
        let mut next: Vec<usize> = nb.iter().enumerate().map(|(i, &c)| c - (len - 1 - i)).collect();
        while next.last() == Some(&0) {
            next.pop();
        }
        total += sign * mn(next, rest);
    }
    memo().lock().expect("character memo poisoned").insert(key, total);
    total
}

/// Number of permutations of the given cycle type, `n! / Π_k k^{m_k} m_k!`.
pub fn class_size(cycle_type: &YoungFrame) -> u128 {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &k in cycle_type.rows() {
        *counts.entry(k).or_default() += 1;
    }
    let denom: u128 = counts.iter().map(|(&k, &m)| (k as u128).pow(m as u32) * factorial(m)).product();
    factorial(cycle_type.n()) / denom
}

/// Cycle type of a permutation given by its image vector.
pub fn cycle_type_of(perm: &[usize]) -> YoungFrame {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    YoungFrame::new(parts).expect("sorted parts")
}
