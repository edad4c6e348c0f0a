//! Sparse Laurent polynomials in `q` and `y` with big-integer coefficients.
//!
//! Every quantity handled by this crate is a Laurent polynomial in these two
//! variables, including the rook weight `p = (1 - q)/q^2 = q^-2 - q^-1`, so a
//! single value type covers all methods. Terms are kept in a `BTreeMap` keyed
//! by `(e_q, e_y)`, which gives the canonical lexicographic order used for
//! equality, display and serialization.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exponent pair `(e_q, e_y)`.
pub type Exponent = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("no exact quotient exists for {dividend} / {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("cannot substitute zero into a negative power of {0}")]
    PoleAtZero(char),
    #[error("malformed polynomial: {0}")]
    Malformed(String),
}

/// Minimum and maximum exponents of a nonzero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentBounds {
    pub min_q: i64,
    pub max_q: i64,
    pub min_y: i64,
    pub max_y: i64,
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `c * q^e_q * y^e_y`
    pub fn monomial(c: impl Into<BigInt>, e_q: i64, e_y: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e_q, e_y), c);
        }
        Self { terms }
    }

    /// `q^e`
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e, 0)
    }

    /// `y^e`
    pub fn y_pow(e: i64) -> Self {
        Self::monomial(1, 0, e)
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Univariate polynomial in `q` from its coefficient list, lowest degree first.
    pub fn from_q_coeffs<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| ((i as i64, 0), c)),
        )
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn sub_term(&mut self, e: Exponent, c: &BigInt) {
        self.add_term(e, -c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn bounds(&self) -> Option<ExponentBounds> {
        let mut it = self.terms.keys();
        let &(q0, y0) = it.next()?;
        let mut b = ExponentBounds {
            min_q: q0,
            max_q: q0,
            min_y: y0,
            max_y: y0,
        };
        for &(eq, ey) in it {
            b.min_q = b.min_q.min(eq);
            b.max_q = b.max_q.max(eq);
            b.min_y = b.min_y.min(ey);
            b.max_y = b.max_y.max(ey);
        }
        Some(b)
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(eq, ey)| eq >= 0 && ey >= 0)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Coefficient of `q^e_q y^e_y`, zero when absent.
    pub fn coeff(&self, e_q: i64, e_y: i64) -> BigInt {
        self.terms.get(&(e_q, e_y)).cloned().unwrap_or_default()
    }

    /// Coefficient of `y^e_y` as a Laurent polynomial in `q`.
    pub fn coeff_y(&self, e_y: i64) -> LaurentPoly {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, ey), _)| *ey == e_y)
                .map(|(&(eq, _), c)| ((eq, 0), c.clone())),
        )
    }

    /// Coefficient of `q^e_q` as a Laurent polynomial in `y`.
    pub fn coeff_q(&self, e_q: i64) -> LaurentPoly {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((eq, _), _)| *eq == e_q)
                .map(|(&(_, ey), c)| ((0, ey), c.clone())),
        )
    }

    /// Sum of all coefficients (the value at `q = y = 1`).
    pub fn coeff_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes `y = 1`, leaving a polynomial in `q`.
    pub fn at_y_one(&self) -> LaurentPoly {
        Self::from_terms(self.terms.iter().map(|(&(eq, _), c)| ((eq, 0), c.clone())))
    }

    /// Substitutes `q = 1`, leaving a polynomial in `y`.
    pub fn at_q_one(&self) -> LaurentPoly {
        Self::from_terms(self.terms.iter().map(|(&(_, ey), c)| ((0, ey), c.clone())))
    }

    /// Substitutes an arbitrary polynomial for `y`. Negative powers of `y` are rejected.
    pub fn substitute_y(&self, value: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        let mut out = LaurentPoly::zero();
        for (&(eq, ey), c) in &self.terms {
            if ey < 0 {
                return Err(PolyError::Malformed(
                    "negative power of y under polynomial substitution".into(),
                ));
            }
            out += &(&value.pow(ey as u32) * &Self::monomial(c.clone(), eq, 0));
        }
        Ok(out)
    }

    /// Multiplies by `q^e_q y^e_y`.
    pub fn shift(&self, e_q: i64, e_y: i64) -> LaurentPoly {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(eq, ey), c)| ((eq + e_q, ey + e_y), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> LaurentPoly {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> LaurentPoly {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor` in the Laurent ring `Z[q, q^-1, y, y^-1]`.
    ///
    /// Long division by the lexicographically leading term. Quotient terms are
    /// confined to the box given by per-variable degree additivity, which
    /// bounds the loop and detects non-divisibility.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        let Some(db) = divisor.bounds() else {
            return Err(PolyError::DivisionByZero);
        };
        let Some(ab) = self.bounds() else {
            return Ok(Self::zero());
        };
        let not_divisible = || PolyError::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let (lo_q, hi_q) = (ab.min_q - db.min_q, ab.max_q - db.max_q);
        let (lo_y, hi_y) = (ab.min_y - db.min_y, ab.max_y - db.max_y);
        if lo_q > hi_q || lo_y > hi_y {
            return Err(not_divisible());
        }
        let (&(lq, ly), lc) = divisor.terms.iter().next_back().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&(rq, ry), rc)) = rem.terms.iter().next_back() {
            let (eq, ey) = (rq - lq, ry - ly);
            if eq < lo_q || eq > hi_q || ey < lo_y || ey > hi_y {
                return Err(not_divisible());
            }
            let (c, r) = rc.div_rem(lc);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            for (&(dq, dy), dc) in &divisor.terms {
                rem.sub_term((dq + eq, dy + ey), &(dc * &c));
            }
            quot.add_term((eq, ey), c);
        }
        Ok(quot)
    }

    /// Substitutes a rational value for `q`.
    pub fn eval_q(&self, value: &BigRational) -> Result<RationalPoly, PolyError> {
        RationalPoly::from(self).eval_q(value)
    }

    /// Substitutes a rational value for `y`.
    pub fn eval_y(&self, value: &BigRational) -> Result<RationalPoly, PolyError> {
        RationalPoly::from(self).eval_y(value)
    }

    /// Groups by descending power of `y`: `y^3 + (3 + q)*y^2 + y`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut by_y: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (&(eq, ey), c) in &self.terms {
            by_y.entry(ey).or_default().add_term((eq, 0), c.clone());
        }
        let mut out = String::new();
        for (i, (ey, qpart)) in by_y.iter().rev().enumerate() {
            let (neg, body) = pretty_group(qpart, *ey);
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

fn var_power(name: char, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

fn pretty_group(qpart: &LaurentPoly, ey: i64) -> (bool, String) {
    let ypow = var_power('y', ey);
    if qpart.num_terms() == 1 {
        let (&(eq, _), c) = qpart.terms.iter().next().unwrap();
        let neg = c.is_negative();
        let mag = c.abs();
        let mut factors = Vec::new();
        if !mag.is_one() || (eq == 0 && ypow.is_none()) {
            factors.push(mag.to_string());
        }
        factors.extend(var_power('q', eq));
        factors.extend(ypow);
        return (neg, factors.join("*"));
    }
    let inner = qpart.to_string();
    match ypow {
        Some(yp) => (false, format!("({inner})*{yp}")),
        None => (false, inner),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(eq, ey), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (eq == 0 && ey == 0) {
                factors.push(mag.to_string());
            }
            factors.extend(var_power('q', eq));
            factors.extend(var_power('y', ey));
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.sub_term(*e, c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(aq, ay), ac) in &self.terms {
            for (&(bq, by), bc) in &rhs.terms {
                out.add_term((aq + bq, ay + by), ac * bc);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    q: i64,
    y: i64,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct WirePoly {
    terms: Vec<WireTerm>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WirePoly {
            terms: self
                .terms
                .iter()
                .map(|(&(q, y), c)| WireTerm {
                    q,
                    y,
                    c: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = WirePoly::deserialize(d)?;
        let mut terms = Vec::with_capacity(wire.terms.len());
        for t in wire.terms {
            let c: BigInt =
                t.c.parse()
                    .map_err(|_| serde::de::Error::custom(format!("bad coefficient {:?}", t.c)))?;
            terms.push(((t.q, t.y), c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

/// Laurent polynomial with rational coefficients, produced by substituting
/// rational values for `q` or `y`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct RationalPoly {
    terms: BTreeMap<Exponent, BigRational>,
}

impl RationalPoly {
    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e_q: i64, e_y: i64) -> BigRational {
        self.terms
            .get(&(e_q, e_y))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval_q(&self, value: &BigRational) -> Result<RationalPoly, PolyError> {
        self.eval_var(value, 'q')
    }

    pub fn eval_y(&self, value: &BigRational) -> Result<RationalPoly, PolyError> {
        self.eval_var(value, 'y')
    }

    fn eval_var(&self, value: &BigRational, var: char) -> Result<RationalPoly, PolyError> {
        let mut out = RationalPoly::default();
        for (&(eq, ey), c) in &self.terms {
            let (e, rest) = if var == 'q' {
                (eq, (0, ey))
            } else {
                (ey, (eq, 0))
            };
            if e < 0 && value.is_zero() {
                return Err(PolyError::PoleAtZero(var));
            }
            let factor = if e == 0 {
                BigRational::one()
            } else {
                num_traits::pow::Pow::pow(value, e as i32)
            };
            out.add_term(rest, c * factor);
        }
        Ok(out)
    }

    /// The polynomial when every coefficient is an integer.
    pub fn to_integer_poly(&self) -> Option<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            out.add_term(*e, c.to_integer());
        }
        Some(out)
    }
}

impl From<&LaurentPoly> for RationalPoly {
    fn from(p: &LaurentPoly) -> Self {
        RationalPoly {
            terms: p
                .terms
                .iter()
                .map(|(e, c)| (*e, BigRational::from_integer(c.clone())))
                .collect(),
        }
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(eq, ey), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (eq == 0 && ey == 0) {
                factors.push(mag.to_string());
            }
            factors.extend(var_power('q', eq));
            factors.extend(var_power('y', ey));
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPoly({self})")
    }
}

impl Serialize for RationalPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WirePoly {
            terms: self
                .terms
                .iter()
                .map(|(&(q, y), c)| WireTerm {
                    q,
                    y,
                    c: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `[n]_q = 1 + q + ... + q^(n-1)`; `[0]_q = 0`.
pub fn q_int(n: i64) -> LaurentPoly {
    assert!(n >= 0, "q_int of a negative integer");
    LaurentPoly::from_q_coeffs(std::iter::repeat_n(1, n as usize))
}

/// Gaussian binomial coefficient, zero outside `0 <= k <= n`.
pub fn q_binomial(n: i64, k: i64) -> LaurentPoly {
    if n < 0 || k < 0 || k > n {
        return LaurentPoly::zero();
    }
    let k = k.min(n - k);
    let one = LaurentPoly::one();
    // after step i the accumulator is [n-k+i choose i]_q
    let mut acc = LaurentPoly::one();
    for i in 1..=k {
        acc = &acc * &(&one - &LaurentPoly::q_pow(n - k + i));
        acc = acc
            .exact_div(&(&one - &LaurentPoly::q_pow(i)))
            .expect("q-binomial partial products are polynomials");
    }
    acc
}

/// `(1 - q)^n`
pub fn one_minus_q_pow(n: u32) -> LaurentPoly {
    (&LaurentPoly::one() - &LaurentPoly::q()).pow(n)
}

/// Parses `a`, `-a` or `a/b` as an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().ok()?;
            let den: BigInt = b.trim().parse().ok()?;
            (!den.is_zero()).then(|| BigRational::new(num, den))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q()
    }
    fn y() -> LaurentPoly {
        LaurentPoly::y()
    }
    fn c(v: i64) -> LaurentPoly {
        LaurentPoly::constant(v)
    }

    #[test]
    fn add_examples() {
        assert_eq!(&(&q() + &y()) + &(-q()), y());
        let p = &(&q() * &y()) + &c(7);
        assert_eq!(&LaurentPoly::zero() + &p, p);
        let one_q = &c(1) + &q();
        assert_eq!(&one_q + &one_q, LaurentPoly::from_q_coeffs([2, 2]));
    }

    #[test]
    fn mul_examples() {
        let a = &c(1) - &q();
        let b = &c(1) + &q();
        assert_eq!(&a * &b, LaurentPoly::from_q_coeffs([1, 0, -1]));
        assert!((&LaurentPoly::q_pow(-2) * &LaurentPoly::q_pow(2)).is_one());
        let s = &c(1) + &y();
        assert_eq!(
            &s * &s,
            LaurentPoly::from_terms([((0, 0), 1), ((0, 1), 2), ((0, 2), 1)])
        );
    }

    #[test]
    fn exact_div_examples() {
        let a = LaurentPoly::from_q_coeffs([1, 0, -1]);
        let b = LaurentPoly::from_q_coeffs([1, 1]);
        assert_eq!(
            a.exact_div(&b).unwrap(),
            LaurentPoly::from_q_coeffs([1, -1])
        );

        let d = &y() * &one_minus_q_pow(2);
        let n = &(&d * &(&c(1) + &y())).clone();
        assert_eq!(n.exact_div(&d).unwrap(), &c(1) + &y());

        let err = LaurentPoly::from_q_coeffs([1, 1])
            .exact_div(&LaurentPoly::from_q_coeffs([1, -1]))
            .unwrap_err();
        assert!(matches!(err, PolyError::NotDivisible { .. }));
        assert_eq!(
            q().exact_div(&LaurentPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn exact_div_rejects_coefficient_remainders() {
        let err = LaurentPoly::from_q_coeffs([3, 3])
            .exact_div(&LaurentPoly::from_q_coeffs([2, 2]))
            .unwrap_err();
        assert!(matches!(err, PolyError::NotDivisible { .. }));
    }

    #[test]
    fn exact_div_by_monomial_is_shift() {
        let p = LaurentPoly::from_terms([((3, 1), 2), ((-1, 4), -5)]);
        assert_eq!(
            p.exact_div(&LaurentPoly::monomial(1, 2, -1)).unwrap(),
            p.shift(-2, 1)
        );
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 4), BigInt::zero());
        let n = 2;
        let k = 0;
        assert_eq!(
            binomial(2 * n, n - k) - binomial(2 * n, n - k - 2),
            BigInt::from(5)
        );
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(2, 1), &c(1) + &q());
        assert_eq!(
            q_binomial(4, 2),
            LaurentPoly::from_q_coeffs([1, 1, 2, 1, 1])
        );
        assert!(q_binomial(5, 6).is_zero());
        assert!(q_binomial(5, -1).is_zero());
        for n in 0..=12 {
            for k in 0..=n {
                assert_eq!(q_binomial(n, k).coeff_sum(), binomial(n, k));
            }
        }
    }

    #[test]
    fn q_int_examples() {
        assert!(q_int(0).is_zero());
        assert!(q_int(1).is_one());
        assert_eq!(q_int(3), LaurentPoly::from_q_coeffs([1, 1, 1]));
    }

    #[test]
    fn coeff_examples() {
        let p = LaurentPoly::from_terms([((0, 3), 1), ((0, 2), 3), ((1, 2), 1), ((0, 1), 1)]);
        assert_eq!(p.coeff_y(2), LaurentPoly::from_q_coeffs([3, 1]));
        assert_eq!(
            LaurentPoly::from_q_coeffs([1, 0, 2]).coeff(2, 0),
            BigInt::from(2)
        );
        assert_eq!(p.coeff(9, 9), BigInt::zero());
    }

    #[test]
    fn eval_q_examples() {
        let zero = BigRational::zero();
        let p = &y() + &(&y() * &q());
        let at0 = p.eval_q(&zero).unwrap();
        assert_eq!(at0.to_integer_poly().unwrap(), y());
        assert_eq!(
            LaurentPoly::q_pow(-1).eval_q(&zero),
            Err(PolyError::PoleAtZero('q'))
        );
        let half = BigRational::new(1.into(), 2.into());
        let v = LaurentPoly::q_pow(-2).eval_q(&half).unwrap();
        assert_eq!(v.coeff(0, 0), BigRational::from_integer(4.into()));
    }

    #[test]
    fn bounds_track_terms() {
        assert_eq!(LaurentPoly::zero().bounds(), None);
        let p = LaurentPoly::from_terms([((-2, 1), 1), ((3, 0), 4), ((0, 5), -1)]);
        assert_eq!(
            p.bounds(),
            Some(ExponentBounds {
                min_q: -2,
                max_q: 3,
                min_y: 0,
                max_y: 5
            })
        );
    }

    #[test]
    fn display_and_pretty() {
        let p = LaurentPoly::from_terms([((0, 3), 1), ((0, 2), 3), ((1, 2), 1), ((0, 1), 1)]);
        assert_eq!(p.pretty(), "y^3 + (3 + q)*y^2 + y");
        assert_eq!(
            LaurentPoly::from_terms([((-2, 1), 1), ((-1, 1), -1)]).to_string(),
            "q^-2*y - q^-1*y"
        );
        assert_eq!(c(-5).pretty(), "-5");
    }

    #[test]
    fn json_wire_format() {
        let p = LaurentPoly::from_terms([((1, 0), -3), ((0, 2), 1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"terms":[{"q":0,"y":2,"c":"1"},{"q":1,"y":0,"c":"-3"}]}"#
        );
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let merged: LaurentPoly =
            serde_json::from_str(r#"{"terms":[{"q":1,"y":0,"c":"2"},{"q":1,"y":0,"c":"-2"}]}"#)
                .unwrap();
        assert!(merged.is_zero());
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(
            parse_rational("3"),
            Some(BigRational::from_integer(3.into()))
        );
        assert_eq!(
            parse_rational("-1/2"),
            Some(BigRational::new((-1).into(), 2.into()))
        );
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
