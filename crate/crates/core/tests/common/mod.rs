//! Independent reference implementations used by the property suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

/// Straightforward greedy tiling: repeatedly take the longest common run of
/// unmarked tokens, earliest in the first then the second sequence, until the
/// longest run is shorter than the minimum.
pub fn naive_covered<T: PartialEq + Ord>(a: &[T], b: &[T], min_len: usize) -> usize {
    let (p, t) = if b < a { (b, a) } else { (a, b) };
    let min_len = min_len.max(1);
    let mut mp = vec![false; p.len()];
    let mut mt = vec![false; t.len()];
    let mut covered = 0;
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..p.len() {
            for j in 0..t.len() {
                let mut len = 0;
                while i + len < p.len() && j + len < t.len() && !mp[i + len] && !mt[j + len] && p[i + len] == t[j + len] {
                    len += 1;
                }
                if len > 0 && best.is_none_or(|(_, _, l)| len > l) {
                    best = Some((i, j, len));
                }
            }
        }
        match best {
            Some((i, j, len)) if len >= min_len => {
                mp[i..i + len].iter_mut().for_each(|m| *m = true);
                mt[j..j + len].iter_mut().for_each(|m| *m = true);
                covered += len;
            }
            _ => return covered,
        }
    }
}

pub fn naive_similarity<T: PartialEq + Ord>(a: &[T], b: &[T], min_len: usize) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => 1.0,
        (true, false) | (false, true) => 0.0,
        _ => (2 * naive_covered(a, b, min_len)) as f64 / (a.len() + b.len()) as f64,
    }
}

/// |X ∩ Y| / min(|X|, |Y|) counted element by element; 0 when either is empty.
pub fn overlap_oracle<T: Ord>(x: &BTreeSet<T>, y: &BTreeSet<T>) -> f64 {
    let common = x.iter().filter(|e| y.contains(e)).count();
    match x.len().min(y.len()) {
        0 => 0.0,
        m => common as f64 / m as f64,
    }
}

/// Elements of `universe` selected by the bits of `mask`.
pub fn subset(mask: u32, universe: u32) -> BTreeSet<u32> {
    (0..universe).filter(|i| mask & (1 << i) != 0).collect()
}

/// Weighted sum accumulated in extended steps: products summed pairwise.
pub fn dot_oracle(f: &[f64], w: &[f64]) -> f64 {
    let products: Vec<f64> = f.iter().zip(w).map(|(a, b)| a * b).collect();
    fn pairwise(xs: &[f64]) -> f64 {
        match xs.len() {
            0 => 0.0,
            1 => xs[0],
            n => pairwise(&xs[..n / 2]) + pairwise(&xs[n / 2..]),
        }
    }
    pairwise(&products)
}

/// Mean of 1/first-relevant-position, 0 for queries without a relevant hit.
pub fn brute_mrr<T: Ord>(queries: &[(Vec<T>, BTreeSet<T>)]) -> f64 {
    let mut total = 0.0;
    for (ranked, rel) in queries {
        if let Some(i) = ranked.iter().position(|x| rel.contains(x)) {
            total += 1.0 / (i as f64 + 1.0);
        }
    }
    total / queries.len() as f64
}
