//! Weighted bicoloured Motzkin paths.
//!
//! Steps are `U` (north-east), `D` (south-east), `F1` and `F2` (the two east
//! colours). In the weighted model a step starting at height `h` has weight
//! `y[h+1]_q` for `U`/`F1` and `[h]_q` for `D`/`F2`. Expanding each
//! `(1 - q^m)` factor splits a step into a plain and a starred label:
//!
//! | step      | plain | starred        |
//! |-----------|-------|----------------|
//! | `U`, `F1` | `y`   | `-y q^(h+1)`   |
//! | `D`, `F2` | `1`   | `-q^h`         |
//!
//! `P(n)` is the set of labelled closed paths of length `n`; `M(k)` the subset
//! whose east steps are all starred and which has no plain `U` immediately
//! followed by a plain `D`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{binomial, one_minus_q_pow, q_int, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("path leaves the half-plane or does not return to height 0")]
    NotInP,
    #[error("lattice paths intersect at step {0}")]
    IntersectingPair(usize),
    #[error("lattice paths have different lengths")]
    LengthMismatch,
    #[error("left factor ends at height {height} but the core has {core} steps")]
    HeightMismatch { height: i64, core: usize },
    #[error("left factor goes below the axis")]
    NegativeLeftFactor,
    #[error("cannot parse path step at {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum StepKind {
    Up,
    Down,
    Flat1,
    Flat2,
}

impl StepKind {
    pub const ALL: [StepKind; 4] = [
        StepKind::Up,
        StepKind::Down,
        StepKind::Flat1,
        StepKind::Flat2,
    ];

    pub fn delta(self) -> i64 {
        match self {
            StepKind::Up => 1,
            StepKind::Down => -1,
            StepKind::Flat1 | StepKind::Flat2 => 0,
        }
    }

    /// `U` and `F1` carry a factor `y`.
    pub fn is_y_step(self) -> bool {
        matches!(self, StepKind::Up | StepKind::Flat1)
    }

    pub fn is_east(self) -> bool {
        matches!(self, StepKind::Flat1 | StepKind::Flat2)
    }

    fn symbol(self) -> &'static str {
        match self {
            StepKind::Up => "U",
            StepKind::Down => "D",
            StepKind::Flat1 => "F1",
            StepKind::Flat2 => "F2",
        }
    }

    /// Weight in the weighted model: `y[h+1]_q` or `[h]_q`.
    pub fn weight_at(self, height: i64) -> LaurentPoly {
        if self.is_y_step() {
            &q_int(height + 1) * &LaurentPoly::y()
        } else {
            q_int(height)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    Plain,
    Starred,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub kind: StepKind,
    pub label: Label,
}

impl Step {
    pub fn plain(kind: StepKind) -> Self {
        Step {
            kind,
            label: Label::Plain,
        }
    }

    pub fn starred(kind: StepKind) -> Self {
        Step {
            kind,
            label: Label::Starred,
        }
    }

    /// `(sign, e_q, e_y)` of the step weight at starting height `h`.
    fn monomial_at(self, h: i64) -> (i64, i64, i64) {
        match (self.label, self.kind.is_y_step()) {
            (Label::Plain, true) => (1, 0, 1),
            (Label::Plain, false) => (1, 0, 0),
            (Label::Starred, true) => (-1, h + 1, 1),
            (Label::Starred, false) => (-1, h, 0),
        }
    }
}

/// A labelled bicoloured Motzkin path starting at height 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LabeledMotzkinPath {
    pub steps: Vec<Step>,
}

impl LabeledMotzkinPath {
    pub fn new(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Starting height of every step, followed by the final height.
    pub fn heights(&self) -> Vec<i64> {
        let mut hs = Vec::with_capacity(self.steps.len() + 1);
        let mut h = 0;
        hs.push(h);
        for s in &self.steps {
            h += s.kind.delta();
            hs.push(h);
        }
        hs
    }

    pub fn in_p(&self) -> bool {
        let hs = self.heights();
        hs.iter().all(|&h| h >= 0) && *hs.last().unwrap() == 0
    }

    pub fn in_m(&self) -> bool {
        self.in_p()
            && self
                .steps
                .iter()
                .all(|s| !s.kind.is_east() || s.label == Label::Starred)
            && !self
                .steps
                .windows(2)
                .any(|w| w[0] == Step::plain(StepKind::Up) && w[1] == Step::plain(StepKind::Down))
    }

    pub fn weight(&self) -> LaurentPoly {
        let (mut sign, mut eq, mut ey) = (1i64, 0i64, 0i64);
        let mut h = 0;
        for s in &self.steps {
            let (sg, a, b) = s.monomial_at(h);
            sign *= sg;
            eq += a;
            ey += b;
            h += s.kind.delta();
        }
        LaurentPoly::monomial(sign, eq, ey)
    }
}

impl fmt::Display for LabeledMotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(s.kind.symbol())?;
            if s.label == Label::Starred {
                f.write_str("*")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LabeledMotzkinPath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut steps = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let (kind, used) = if let Some(r) = rest.strip_prefix("F1") {
                (StepKind::Flat1, rest.len() - r.len())
            } else if let Some(r) = rest.strip_prefix("F2") {
                (StepKind::Flat2, rest.len() - r.len())
            } else if rest.starts_with('U') {
                (StepKind::Up, 1)
            } else if rest.starts_with('D') {
                (StepKind::Down, 1)
            } else {
                return Err(PathError::Parse(rest.to_string()));
            };
            rest = &rest[used..];
            let label = match rest.strip_prefix('*') {
                Some(r) => {
                    rest = r;
                    Label::Starred
                }
                None => Label::Plain,
            };
            steps.push(Step { kind, label });
        }
        Ok(Self { steps })
    }
}

impl Serialize for LabeledMotzkinPath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `y <W|(yD+E)^(n-1)|V>` as the generating polynomial of weighted
/// bicoloured Motzkin paths of length `n`, by transfer over heights.
pub fn motzkin_polynomial(n: usize) -> LaurentPoly {
    assert!(n >= 1, "paths of length 0 are not part of the model");
    let max_h = n / 2;
    let up: Vec<LaurentPoly> = (0..=max_h as i64)
        .map(|h| StepKind::Up.weight_at(h))
        .collect();
    let down: Vec<LaurentPoly> = (0..=max_h as i64)
        .map(|h| StepKind::Down.weight_at(h))
        .collect();
    let flat: Vec<LaurentPoly> = (0..=max_h).map(|h| &up[h] + &down[h]).collect();
    let mut cur = vec![LaurentPoly::zero(); max_h + 1];
    cur[0] = LaurentPoly::one();
    for step in 0..n {
        let remaining = n - step - 1;
        let mut next = vec![LaurentPoly::zero(); max_h + 1];
        for (h, v) in cur.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if h < max_h && h < remaining {
                next[h + 1] += &(v * &up[h]);
            }
            if h <= remaining {
                next[h] += &(v * &flat[h]);
            }
            if h > 0 {
                next[h - 1] += &(v * &down[h]);
            }
        }
        cur = next;
    }
    cur.swap_remove(0)
}

type MonomialCounts = HashMap<(i64, i64), i64>;

fn counts_to_poly(counts: MonomialCounts) -> LaurentPoly {
    LaurentPoly::from_terms(counts.into_iter().map(|(e, c)| (e, BigInt::from(c))))
}

fn merge_counts(mut a: MonomialCounts, b: MonomialCounts) -> MonomialCounts {
    for (e, c) in b {
        *a.entry(e).or_insert(0) += c;
    }
    a
}

#[derive(Clone, Copy)]
struct Walk {
    height: i64,
    sign: i64,
    eq: i64,
    ey: i64,
    prev_plain_up: bool,
}

impl Walk {
    fn start() -> Self {
        Walk {
            height: 0,
            sign: 1,
            eq: 0,
            ey: 0,
            prev_plain_up: false,
        }
    }

    fn push(self, s: Step) -> Walk {
        let (sg, a, b) = s.monomial_at(self.height);
        Walk {
            height: self.height + s.kind.delta(),
            sign: self.sign * sg,
            eq: self.eq + a,
            ey: self.ey + b,
            prev_plain_up: s == Step::plain(StepKind::Up),
        }
    }
}

fn all_steps() -> [Step; 8] {
    let mut out = [Step::plain(StepKind::Up); 8];
    for (i, k) in StepKind::ALL.iter().enumerate() {
        out[2 * i] = Step::plain(*k);
        out[2 * i + 1] = Step::starred(*k);
    }
    out
}

/// Steps allowed next; `restricted` applies the `M(k)` conditions.
fn admissible(w: &Walk, remaining: usize, restricted: bool) -> impl Iterator<Item = Step> + '_ {
    let w = *w;
    all_steps().into_iter().filter(move |s| {
        let h = w.height + s.kind.delta();
        if h < 0 || h as usize > remaining - 1 {
            return false;
        }
        if restricted {
            if s.kind.is_east() && s.label == Label::Plain {
                return false;
            }
            if w.prev_plain_up && *s == Step::plain(StepKind::Down) {
                return false;
            }
        }
        true
    })
}

fn dfs_counts(w: Walk, remaining: usize, restricted: bool, acc: &mut MonomialCounts) {
    if remaining == 0 {
        if w.height == 0 {
            *acc.entry((w.eq, w.ey)).or_insert(0) += w.sign;
        }
        return;
    }
    for s in admissible(&w, remaining, restricted) {
        dfs_counts(w.push(s), remaining - 1, restricted, acc);
    }
}

fn signed_sum(n: usize, restricted: bool) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::one();
    }
    // split on the first two steps so rayon has enough independent work
    let mut prefixes = Vec::new();
    for a in admissible(&Walk::start(), n, restricted) {
        let wa = Walk::start().push(a);
        if n == 1 {
            prefixes.push((wa, 0usize));
            continue;
        }
        for b in admissible(&wa, n - 1, restricted) {
            prefixes.push((wa.push(b), n - 2));
        }
    }
    let counts = prefixes
        .into_par_iter()
        .map(|(w, rem)| {
            let mut acc = MonomialCounts::new();
            dfs_counts(w, rem, restricted, &mut acc);
            acc
        })
        .reduce(MonomialCounts::new, merge_counts);
    counts_to_poly(counts)
}

/// Signed weight sum over `P(n)`, equal to `(1-q)^n` times [`motzkin_polynomial`].
pub fn enumerate_p(n: usize) -> LaurentPoly {
    signed_sum(n, false)
}

/// Signed weight sum over `M(k)`, equal to `(-1)^k` times [`m_k_closed`].
pub fn enumerate_m_signed(k: usize) -> LaurentPoly {
    signed_sum(k, true)
}

fn collect_paths(n: usize, restricted: bool) -> Vec<LabeledMotzkinPath> {
    fn go(
        w: Walk,
        remaining: usize,
        restricted: bool,
        cur: &mut Vec<Step>,
        out: &mut Vec<LabeledMotzkinPath>,
    ) {
        if remaining == 0 {
            if w.height == 0 {
                out.push(LabeledMotzkinPath::new(cur.clone()));
            }
            return;
        }
        for s in admissible(&w, remaining, restricted) {
            cur.push(s);
            go(w.push(s), remaining - 1, restricted, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(Walk::start(), n, restricted, &mut Vec::new(), &mut out);
    out
}

/// Every path of `P(n)`.
pub fn p_paths(n: usize) -> Vec<LabeledMotzkinPath> {
    collect_paths(n, false)
}

/// Every path of `M(k)`.
pub fn m_paths(k: usize) -> Vec<LabeledMotzkinPath> {
    collect_paths(k, true)
}

/// A path of `P(n)` split into an unlabelled left factor and a core in `M(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub left_factor: Vec<StepKind>,
    pub core: LabeledMotzkinPath,
    /// Final height of the left factor, i.e. the core length.
    pub k: usize,
    /// Number of `D` and `F1` steps in the left factor.
    pub j: usize,
}

fn left_factor_marks(lf: &[StepKind]) -> usize {
    lf.iter()
        .filter(|s| matches!(s, StepKind::Down | StepKind::Flat1))
        .count()
}

/// Splits `p` as `m_1 c_1 m_2 ... c_k m_(k+1)` where the `m_i` are maximal
/// plain excursions and the `c_i` single steps, then replaces each `c_i` by `U`.
pub fn decompose(p: &LabeledMotzkinPath) -> Result<Decomposition, PathError> {
    if !p.in_p() {
        return Err(PathError::NotInP);
    }
    let n = p.len();
    let mut is_core = vec![false; n];
    let mut open_ups: Vec<usize> = Vec::new();
    for (i, s) in p.steps.iter().enumerate() {
        if s.label == Label::Starred {
            is_core[i] = true;
            // a starred step closes the current plain run
            for u in open_ups.drain(..) {
                is_core[u] = true;
            }
            continue;
        }
        match s.kind {
            StepKind::Up => open_ups.push(i),
            StepKind::Down => {
                if open_ups.pop().is_none() {
                    is_core[i] = true;
                }
            }
            StepKind::Flat1 | StepKind::Flat2 => {}
        }
    }
    for u in open_ups {
        is_core[u] = true;
    }
    let mut left_factor = Vec::with_capacity(n);
    let mut core = Vec::new();
    for (s, c) in p.steps.iter().zip(&is_core) {
        if *c {
            core.push(*s);
            left_factor.push(StepKind::Up);
        } else {
            left_factor.push(s.kind);
        }
    }
    let j = left_factor_marks(&left_factor);
    Ok(Decomposition {
        k: core.len(),
        j,
        left_factor,
        core: LabeledMotzkinPath::new(core),
    })
}

/// Inverse of [`decompose`]: the last-ascent `U` steps of the left factor are
/// replaced, in order, by the core steps; every other step becomes plain.
pub fn recompose(
    left_factor: &[StepKind],
    core: &LabeledMotzkinPath,
) -> Result<LabeledMotzkinPath, PathError> {
    let mut heights = Vec::with_capacity(left_factor.len() + 1);
    let mut h = 0i64;
    heights.push(h);
    for s in left_factor {
        h += s.delta();
        if h < 0 {
            return Err(PathError::NegativeLeftFactor);
        }
        heights.push(h);
    }
    if h != core.len() as i64 {
        return Err(PathError::HeightMismatch {
            height: h,
            core: core.len(),
        });
    }
    // suffix_min[i] = min height at positions i..=n
    let mut suffix_min = heights.clone();
    for i in (0..heights.len() - 1).rev() {
        suffix_min[i] = suffix_min[i].min(suffix_min[i + 1]);
    }
    let mut core_steps = core.steps.iter();
    let steps = left_factor
        .iter()
        .enumerate()
        .map(|(i, &kind)| {
            let last_ascent = kind == StepKind::Up && suffix_min[i + 1] > heights[i];
            if last_ascent {
                *core_steps.next().expect("one core step per last ascent")
            } else {
                Step::plain(kind)
            }
        })
        .collect();
    Ok(LabeledMotzkinPath::new(steps))
}

/// Unlabelled left factors of bicoloured Motzkin paths of length `n`.
pub fn left_factors(n: usize) -> Vec<Vec<StepKind>> {
    fn go(h: i64, remaining: usize, cur: &mut Vec<StepKind>, out: &mut Vec<Vec<StepKind>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for k in StepKind::ALL {
            if h + k.delta() < 0 {
                continue;
            }
            cur.push(k);
            go(h + k.delta(), remaining - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// Number of left factors of length `n`, final height `k`, with `j` steps
/// among `D` and `F1`, by exhaustive enumeration.
pub fn count_left_factors_enumerated(n: usize, k: usize, j: usize) -> BigInt {
    fn go(h: usize, marks: usize, remaining: usize, k: usize, j: usize) -> u64 {
        if marks > j || h > k + remaining {
            return 0;
        }
        if remaining == 0 {
            return u64::from(h == k && marks == j);
        }
        let mut total = go(h + 1, marks, remaining - 1, k, j)
            + go(h, marks + 1, remaining - 1, k, j)
            + go(h, marks, remaining - 1, k, j);
        if h > 0 {
            total += go(h - 1, marks + 1, remaining - 1, k, j);
        }
        total
    }
    BigInt::from(go(0, 0, n, k, j))
}

/// `C(n,j) C(n,j+k) - C(n,j-1) C(n,j+k+1)`
pub fn count_left_factors_formula(n: usize, k: usize, j: usize) -> BigInt {
    let (n, k, j) = (n as i64, k as i64, j as i64);
    binomial(n, j) * binomial(n, j + k) - binomial(n, j - 1) * binomial(n, j + k + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LatticeStep {
    North,
    East,
}

/// Two north/east lattice paths of equal length, the lower one starting at
/// `(1, 0)` and the upper one at `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LatticePathPair {
    pub lower: Vec<LatticeStep>,
    pub upper: Vec<LatticeStep>,
}

fn walk_points(start: (i64, i64), steps: &[LatticeStep]) -> Vec<(i64, i64)> {
    let mut p = start;
    let mut out = vec![p];
    for s in steps {
        match s {
            LatticeStep::North => p.1 += 1,
            LatticeStep::East => p.0 += 1,
        }
        out.push(p);
    }
    out
}

impl LatticePathPair {
    pub const LOWER_START: (i64, i64) = (1, 0);
    pub const UPPER_START: (i64, i64) = (0, 1);

    pub fn lower_points(&self) -> Vec<(i64, i64)> {
        walk_points(Self::LOWER_START, &self.lower)
    }

    pub fn upper_points(&self) -> Vec<(i64, i64)> {
        walk_points(Self::UPPER_START, &self.upper)
    }

    /// First step index at which the paths share a lattice point. Both paths
    /// stay on the same anti-diagonal at equal step counts, so only
    /// simultaneous positions can coincide.
    pub fn first_intersection(&self) -> Option<usize> {
        self.lower_points()
            .iter()
            .zip(self.upper_points())
            .position(|(a, b)| *a == b)
    }

    /// Endpoints `((n+1-j, j), (n-j-k, j+k+1))` of a pair counted by the
    /// left-factor determinant.
    pub fn endpoints(&self) -> ((i64, i64), (i64, i64)) {
        (
            *self.lower_points().last().unwrap(),
            *self.upper_points().last().unwrap(),
        )
    }
}

/// Translates a non-intersecting pair into a left factor, step by step:
/// (N, N) -> F1, (E, E) -> F2, (E, N) -> U, (N, E) -> D, with (lower, upper).
pub fn lgv_to_left_factor(pair: &LatticePathPair) -> Result<Vec<StepKind>, PathError> {
    if pair.lower.len() != pair.upper.len() {
        return Err(PathError::LengthMismatch);
    }
    if let Some(i) = pair.first_intersection() {
        return Err(PathError::IntersectingPair(i));
    }
    Ok(pair
        .lower
        .iter()
        .zip(&pair.upper)
        .map(|(lo, up)| match (lo, up) {
            (LatticeStep::North, LatticeStep::North) => StepKind::Flat1,
            (LatticeStep::East, LatticeStep::East) => StepKind::Flat2,
            (LatticeStep::East, LatticeStep::North) => StepKind::Up,
            (LatticeStep::North, LatticeStep::East) => StepKind::Down,
        })
        .collect())
}

/// Inverse of [`lgv_to_left_factor`].
pub fn left_factor_to_lgv(left_factor: &[StepKind]) -> LatticePathPair {
    let (lower, upper) = left_factor
        .iter()
        .map(|s| match s {
            StepKind::Flat1 => (LatticeStep::North, LatticeStep::North),
            StepKind::Flat2 => (LatticeStep::East, LatticeStep::East),
            StepKind::Up => (LatticeStep::East, LatticeStep::North),
            StepKind::Down => (LatticeStep::North, LatticeStep::East),
        })
        .unzip();
    LatticePathPair { lower, upper }
}

/// All pairs of lattice paths of length `n` from the two fixed starts.
pub fn lattice_pairs(n: usize) -> impl Iterator<Item = LatticePathPair> {
    let decode = move |mut bits: u64| -> Vec<LatticeStep> {
        (0..n)
            .map(|_| {
                let s = if bits & 1 == 1 {
                    LatticeStep::North
                } else {
                    LatticeStep::East
                };
                bits >>= 1;
                s
            })
            .collect()
    };
    let count = 1u64 << n;
    (0..count).flat_map(move |a| {
        (0..count).map(move |b| LatticePathPair {
            lower: decode(a),
            upper: decode(b),
        })
    })
}

/// `sum_{i=0..k} y^i q^(i(k+1-i))`
pub fn m_k_closed(k: usize) -> LaurentPoly {
    let k = k as i64;
    LaurentPoly::from_terms((0..=k).map(|i| ((i * (k + 1 - i), i), 1)))
}

/// Polynomial in an auxiliary variable `z` with coefficients in `Z[q, y]`,
/// indexed by the power of `z`.
type ZPoly = Vec<LaurentPoly>;

fn zpoly_add(a: &mut ZPoly, b: &ZPoly) {
    if a.len() < b.len() {
        a.resize(b.len(), LaurentPoly::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

fn zpoly_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![LaurentPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

/// `f(z) -> f(qz)`
fn zpoly_dilate(a: &ZPoly) -> ZPoly {
    a.iter()
        .enumerate()
        .map(|(i, c)| c.shift(i as i64, 0))
        .collect()
}

/// `[t^n] M(z)`: paths of `M(n)` with `z` marking starred steps.
fn m_series_coefficient(n: usize) -> ZPoly {
    let mut out = vec![LaurentPoly::zero(); n + 1];
    for p in m_paths(n) {
        let stars = p.steps.iter().filter(|s| s.label == Label::Starred).count();
        out[stars] += &p.weight();
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FunctionalEquationReport {
    /// `(t power, z power, enumerated, right-hand side)` for every mismatch.
    pub mismatches: Vec<(usize, usize, LaurentPoly, LaurentPoly)>,
    /// `k` values where `(-1)^k [t^k] M(1)` differs from [`m_k_closed`].
    pub closed_form_failures: Vec<usize>,
    pub coefficients_checked: usize,
}

impl FunctionalEquationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.closed_form_failures.is_empty()
    }
}

/// Checks `M(z) = 1 - (qyzt + zt + yt^2) M(z) + yt^2 (1-qz)^2 M(z) M(qz)`
/// coefficientwise in `t^n z^a` for `n <= t_order`, `a <= z_order`, with
/// `M(z)` built by enumeration.
pub fn check_functional_equation(t_order: usize, z_order: usize) -> FunctionalEquationReport {
    let series: Vec<ZPoly> = (0..=t_order).map(m_series_coefficient).collect();
    let dilated: Vec<ZPoly> = series.iter().map(zpoly_dilate).collect();
    let y = LaurentPoly::y();
    let q = LaurentPoly::q();
    // qyz + z
    let linear: ZPoly = vec![LaurentPoly::zero(), &(&q * &y) + &LaurentPoly::one()];
    // y (1 - qz)^2
    let quad: ZPoly = vec![
        y.clone(),
        (&q * &y).scale(&BigInt::from(-2)),
        &(&q * &q) * &y,
    ];

    let mut report = FunctionalEquationReport::default();
    for n in 0..=t_order {
        let mut rhs: ZPoly = vec![LaurentPoly::zero()];
        if n == 0 {
            rhs[0] = LaurentPoly::one();
        }
        if n >= 1 {
            let t = zpoly_mul(&linear, &series[n - 1]);
            zpoly_add(&mut rhs, &t.iter().map(|c| -c).collect());
        }
        if n >= 2 {
            let t: ZPoly = series[n - 2].iter().map(|c| -(c * &y)).collect();
            zpoly_add(&mut rhs, &t);
            let mut conv: ZPoly = Vec::new();
            for a in 0..=n - 2 {
                zpoly_add(&mut conv, &zpoly_mul(&series[a], &dilated[n - 2 - a]));
            }
            zpoly_add(&mut rhs, &zpoly_mul(&quad, &conv));
        }
        let lhs = &series[n];
        let width = lhs.len().max(rhs.len()).min(z_order + 1);
        for a in 0..width {
            let l = lhs.get(a).cloned().unwrap_or_default();
            let r = rhs.get(a).cloned().unwrap_or_default();
            report.coefficients_checked += 1;
            if l != r {
                report.mismatches.push((n, a, l, r));
            }
        }
        let at_one: LaurentPoly = lhs.iter().cloned().sum();
        let sign = if n % 2 == 0 { 1 } else { -1 };
        if at_one.scale(&BigInt::from(sign)) != m_k_closed(n) {
            report.closed_form_failures.push(n);
        }
    }
    report
}

/// `(1-q)^n` times the weighted path polynomial, by the route of the
/// decomposition: `sum_{k,j} #left factors(n,k,j) y^j sum_{M(k)} w`.
pub fn decomposition_sum(n: usize) -> LaurentPoly {
    let mut total = LaurentPoly::zero();
    for k in 0..=n {
        let core = enumerate_m_signed(k);
        for j in 0..=n - k {
            let count = count_left_factors_formula(n, k, j);
            total += &core.shift(0, j as i64).scale(&count);
        }
    }
    total
}

/// `y <W|(yD+E)^(n-1)|V>` from the signed set `P(n)`.
pub fn signed_path_polynomial(n: usize) -> LaurentPoly {
    enumerate_p(n)
        .exact_div(&one_minus_q_pow(n as u32))
        .expect("signed path sum is divisible by (1-q)^n")
}
