//! Brute-force permutation and matching statistics.
//!
//! Two statistic pairs on `S_n` generate the partition polynomial:
//! ascents with occurrences of the vincular pattern 13-2, and weak
//! exceedances with crossings. Classical 1-3-2 occurrences give the
//! avoidance counts `psi_k(n)`, and crossings of perfect matchings give the
//! crossing polynomial of matchings.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("{0:?} is not a permutation of 1..n")]
    NotAPermutation(Vec<usize>),
    #[error("pairs do not partition 1..2n: {0:?}")]
    NotAMatching(Vec<(usize, usize)>),
}

/// A permutation in one-line notation `w_1 ... w_n` with values in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    w: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;

    fn try_from(w: Vec<usize>) -> Result<Self, PermError> {
        Permutation::new(w)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.w
    }
}

impl Permutation {
    pub fn new(w: Vec<usize>) -> Result<Self, PermError> {
        let n = w.len();
        let mut seen = vec![false; n + 1];
        for &v in &w {
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotAPermutation(w));
            }
            seen[v] = true;
        }
        Ok(Self { w })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            w: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.w
    }

    /// `#{i : w_i < w_(i+1)}`
    pub fn ascents(&self) -> usize {
        ascents(&self.w)
    }

    /// `#{(i, j) : i+1 < j, w_i < w_j < w_(i+1)}`
    pub fn pattern_13_2(&self) -> usize {
        pattern_13_2(&self.w)
    }

    /// `#{i : w_i >= i}`
    pub fn weak_exceedances(&self) -> usize {
        weak_exceedances(&self.w)
    }

    /// `#{(i, j) : i < j <= w_i < w_j} + #{(i, j) : i > j > w_i > w_j}`
    pub fn crossings(&self) -> usize {
        crossings(&self.w)
    }

    /// `#{i < j < k : w_i < w_k < w_j}`
    pub fn classical_132_count(&self) -> usize {
        classical_132_count(&self.w)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.w.len() > 9 { " " } else { "" };
        let parts: Vec<String> = self.w.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

// The statistics below take one-line notation with values in 1..=n and
// 0-based positions, so position p carries label p + 1.

fn ascents(w: &[usize]) -> usize {
    w.windows(2).filter(|p| p[0] < p[1]).count()
}

fn pattern_13_2(w: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..w.len().saturating_sub(1) {
        let (lo, hi) = (w[i], w[i + 1]);
        if lo < hi {
            count += w[i + 2..].iter().filter(|&&v| lo < v && v < hi).count();
        }
    }
    count
}

fn weak_exceedances(w: &[usize]) -> usize {
    w.iter().enumerate().filter(|&(p, &v)| v > p).count()
}

fn crossings(w: &[usize]) -> usize {
    let n = w.len();
    let mut count = 0;
    for i in 1..=n {
        let wi = w[i - 1];
        for j in 1..=n {
            let wj = w[j - 1];
            if (i < j && j <= wi && wi < wj) || (i > j && j > wi && wi > wj) {
                count += 1;
            }
        }
    }
    count
}

fn classical_132_count(w: &[usize]) -> usize {
    let n = w.len();
    let mut count = 0;
    for j in 0..n {
        for i in 0..j {
            if w[i] >= w[j] {
                continue;
            }
            count += w[j + 1..].iter().filter(|&&v| w[i] < v && v < w[j]).count();
        }
    }
    count
}

/// Advances `w` to the next permutation in lexicographic order; `false` once
/// `w` is the last one.
fn next_permutation(w: &mut [usize]) -> bool {
    let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) else {
        return false;
    };
    let pivot = i - 1;
    let j = (i..w.len()).rev().find(|&j| w[j] > w[pivot]).unwrap();
    w.swap(pivot, j);
    w[i..].reverse();
    true
}

/// Folds `f` over all of `S_n`, split by first entry across threads, and
/// merges the per-thread monomial counts.
fn fold_permutations<F>(n: usize, f: F) -> HashMap<(i64, i64), u64>
where
    F: Fn(&[usize]) -> (i64, i64) + Sync,
{
    if n == 0 {
        return HashMap::from([(f(&[]), 1)]);
    }
    (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut w: Vec<usize> = std::iter::once(first)
                .chain((1..=n).filter(|&v| v != first))
                .collect();
            let mut counts = HashMap::new();
            loop {
                *counts.entry(f(&w)).or_insert(0u64) += 1;
                if !next_permutation(&mut w[1..]) {
                    break;
                }
            }
            counts
        })
        .reduce(HashMap::new, merge_counts)
}

fn merge_counts(
    mut a: HashMap<(i64, i64), u64>,
    b: HashMap<(i64, i64), u64>,
) -> HashMap<(i64, i64), u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Permutation> {
    let mut w: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation { w: w.clone() });
        if !next_permutation(&mut w) {
            return out;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatPair {
    /// `y^(1 + ascents) q^(13-2 occurrences)`
    AscentPattern,
    /// `y^(weak exceedances) q^(crossings)`
    WexCrossing,
}

/// `sum_{w in S_n}` of the monomial selected by `pair`.
pub fn gen_polynomial(n: usize, pair: StatPair) -> LaurentPoly {
    let counts = match pair {
        StatPair::AscentPattern => {
            fold_permutations(n, |w| (pattern_13_2(w) as i64, 1 + ascents(w) as i64))
        }
        StatPair::WexCrossing => {
            fold_permutations(n, |w| (crossings(w) as i64, weak_exceedances(w) as i64))
        }
    };
    LaurentPoly::from_terms(counts)
}

/// Distribution of classical 1-3-2 occurrences over `S_n`, as a polynomial in `q`.
pub fn classical_132_polynomial(n: usize) -> LaurentPoly {
    LaurentPoly::from_terms(fold_permutations(n, |w| (classical_132_count(w) as i64, 0)))
}

/// `psi_k(n)`: permutations of `S_n` with at most `k` classical 1-3-2 occurrences.
pub fn psi(k: usize, n: usize) -> u64 {
    fold_permutations(n, |w| (classical_132_count(w) as i64, 0))
        .into_iter()
        .filter(|&((occ, _), _)| occ <= k as i64)
        .map(|(_, c)| c)
        .sum()
}

/// Permutations of `S_n` with more 13-2 than 1-3-2 occurrences; always empty,
/// since each vincular occurrence is a classical one.
pub fn pattern_bound_violations(n: usize) -> Vec<Permutation> {
    permutations(n)
        .into_iter()
        .filter(|p| p.pattern_13_2() > p.classical_132_count())
        .collect()
}

/// A perfect matching of `1..=2n`, stored as pairs `(a, b)` with `a < b`
/// sorted by `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self, PermError> {
        let size = 2 * pairs.len();
        let mut seen = vec![false; size + 1];
        let mut normalized = Vec::with_capacity(pairs.len());
        for &(a, b) in &pairs {
            let (a, b) = (a.min(b), a.max(b));
            if a == 0 || b > size || a == b || seen[a] || seen[b] {
                return Err(PermError::NotAMatching(pairs));
            }
            seen[a] = true;
            seen[b] = true;
            normalized.push((a, b));
        }
        normalized.sort_unstable();
        Ok(Self { pairs: normalized })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `#{(a,b), (c,d) : a < c < b < d}`
    pub fn crossings(&self) -> usize {
        let mut count = 0;
        for (i, &(_, b)) in self.pairs.iter().enumerate() {
            for &(c, d) in &self.pairs[i + 1..] {
                if c < b && b < d {
                    count += 1;
                }
            }
        }
        count
    }
}

/// All perfect matchings of `1..=2n`.
pub fn matchings(n: usize) -> Vec<Matching> {
    fn extend(open: &mut Vec<usize>, pairs: &mut Vec<(usize, usize)>, out: &mut Vec<Matching>) {
        let Some(&a) = open.first() else {
            out.push(Matching {
                pairs: pairs.clone(),
            });
            return;
        };
        for idx in 1..open.len() {
            let b = open[idx];
            let rest: Vec<usize> = open
                .iter()
                .copied()
                .enumerate()
                .filter(|&(i, _)| i != 0 && i != idx)
                .map(|(_, v)| v)
                .collect();
            let saved = std::mem::replace(open, rest);
            pairs.push((a, b));
            extend(open, pairs, out);
            pairs.pop();
            *open = saved;
        }
    }
    let mut out = Vec::new();
    extend(&mut (1..=2 * n).collect(), &mut Vec::new(), &mut out);
    out
}

/// `sum_M q^cr(M)` over perfect matchings of `1..=2n`.
pub fn matching_crossings(n: usize) -> LaurentPoly {
    LaurentPoly::from_terms(matchings(n).iter().map(|m| ((m.crossings() as i64, 0), 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(w: &[usize]) -> Permutation {
        Permutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn statistics_on_examples() {
        let p = perm(&[1, 3, 2]);
        assert_eq!(
            (p.ascents(), p.pattern_13_2(), p.classical_132_count()),
            (1, 1, 1)
        );
        let p = perm(&[3, 2, 1]);
        assert_eq!((p.ascents(), p.pattern_13_2()), (0, 0));
        let id = Permutation::identity(6);
        assert_eq!((id.ascents(), id.pattern_13_2()), (5, 0));
        assert_eq!((id.weak_exceedances(), id.crossings()), (6, 0));
        assert_eq!(
            (perm(&[2, 1]).weak_exceedances(), perm(&[2, 1]).crossings()),
            (1, 0)
        );
        // 1-3-2 occurrences need not be adjacent: 1,4,2 in 1423 is not vincular
        let p = perm(&[1, 4, 2, 3]);
        assert_eq!((p.pattern_13_2(), p.classical_132_count()), (2, 2));
        let p = perm(&[2, 4, 1, 3]);
        assert_eq!((p.pattern_13_2(), p.classical_132_count()), (1, 1));
        let p = perm(&[1, 3, 4, 2]);
        assert_eq!((p.pattern_13_2(), p.classical_132_count()), (1, 2));
    }

    #[test]
    fn invalid_permutations() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(serde_json::from_str::<Permutation>("[2,3]").is_err());
        let p: Permutation = serde_json::from_str("[2,3,1]").unwrap();
        assert_eq!(p.to_string(), "231");
    }

    #[test]
    fn enumeration_is_complete() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
        let all = permutations(5);
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 120);
    }

    #[test]
    fn small_generating_polynomials() {
        let two = LaurentPoly::from_terms([((0, 1), 1), ((0, 2), 1)]);
        let three = LaurentPoly::from_terms([((0, 3), 1), ((0, 2), 3), ((1, 2), 1), ((0, 1), 1)]);
        for pair in [StatPair::AscentPattern, StatPair::WexCrossing] {
            assert_eq!(gen_polynomial(2, pair), two);
            assert_eq!(gen_polynomial(3, pair), three);
            assert_eq!(gen_polynomial(4, pair).coeff_sum(), 24.into());
        }
    }

    #[test]
    fn avoidance_counts_are_catalan() {
        for (n, c) in [1u64, 2, 5, 14, 42, 132].into_iter().enumerate() {
            assert_eq!(psi(0, n + 1), c);
        }
        assert!(pattern_bound_violations(6).is_empty());
    }

    #[test]
    fn matchings_by_crossings() {
        assert!(matching_crossings(1).is_one());
        assert_eq!(matching_crossings(2), LaurentPoly::from_q_coeffs([2, 1]));
        assert_eq!(matching_crossings(3).coeff_sum(), 15.into());
        assert_eq!(matchings(4).len(), 105);
        assert_eq!(Matching::new(vec![(1, 3), (2, 4)]).unwrap().crossings(), 1);
        assert_eq!(Matching::new(vec![(4, 1), (2, 3)]).unwrap().crossings(), 0);
        assert!(Matching::new(vec![(1, 2), (2, 3)]).is_err());
    }
}
