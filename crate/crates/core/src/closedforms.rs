//! Closed-form and asymptotic formulas for the partition polynomial.
//!
//! Every division here is exact: a formula that does not divide cleanly by
//! its `(1-q)^n` denominator yields [`PolyError::NotDivisible`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{binomial, factorial, one_minus_q_pow, q_int, LaurentPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{formula} is not an integer at {at}: {value}")]
    NonInteger {
        formula: &'static str,
        at: String,
        value: String,
    },
}

/// `y <W|(yD+E)^(n-1)|V>` for a given size `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionPolynomial {
    pub n: usize,
    pub value: LaurentPoly,
}

impl PartitionPolynomial {
    /// Polynomial with nonnegative coefficients summing to `n!`.
    pub fn is_permutation_count(&self) -> bool {
        self.value.is_polynomial()
            && self.value.has_nonnegative_coeffs()
            && self.value.coeff_sum() == factorial(self.n as u64)
    }
}

fn sign(k: i64) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `sum_{i=0..k} y^i q^(i(k+1-i))`
fn p_k(k: i64) -> LaurentPoly {
    LaurentPoly::from_terms((0..=k).map(|i| ((i * (k + 1 - i), i), 1)))
}

/// Numerator of the double-sum formula, before dividing by `(1-q)^n`.
pub fn theorem1_numerator(n: usize) -> LaurentPoly {
    let n = n as i64;
    let mut total = LaurentPoly::zero();
    for k in 0..=n {
        let mut left = LaurentPoly::zero();
        for j in 0..=n - k {
            let c =
                binomial(n, j) * binomial(n, j + k) - binomial(n, j - 1) * binomial(n, j + k + 1);
            left += &LaurentPoly::monomial(c, 0, j);
        }
        total += &(&left * &p_k(k)).scale(&sign(k));
    }
    total
}

/// `y <W|(yD+E)^(n-1)|V>` from the double-sum formula.
pub fn theorem1(n: usize) -> Result<PartitionPolynomial, PolyError> {
    assert!(n >= 1);
    let value = theorem1_numerator(n).exact_div(&one_minus_q_pow(n as u32))?;
    Ok(PartitionPolynomial { n, value })
}

/// `<W|(D+E)^(n-1)|V>` from the single-sum formula at `y = 1`.
pub fn corollary(n: usize) -> Result<LaurentPoly, PolyError> {
    assert!(n >= 1);
    let n = n as i64;
    let mut num = LaurentPoly::zero();
    for k in 0..=n {
        let c = (binomial(2 * n, n - k) - binomial(2 * n, n - k - 2)) * sign(k);
        num += &p_k(k).at_y_one().scale(&c);
    }
    num.exact_div(&one_minus_q_pow(n as u32))
}

/// `E_{m,n}(q) = sum_{i<m} (-1)^i [m-i]_q^n q^(mi-m^2) (C(n,i) q^(m-i) + C(n,i-1))`,
/// the coefficient of `y^m` in `y <W|(yD+E)^(n-1)|V>`.
pub fn williams_e(m: usize, n: usize) -> LaurentPoly {
    let (m, n) = (m as i64, n as i64);
    let mut out = LaurentPoly::zero();
    for i in 0..m {
        let inner = &LaurentPoly::monomial(binomial(n, i), m - i, 0)
            + &LaurentPoly::constant(binomial(n, i - 1));
        let term = &q_int(m - i).pow(n as u32) * &inner;
        out += &term.shift(m * i - m * m, 0).scale(&sign(i));
    }
    out
}

/// `sum_m y^m E_{m,n}(q)`
pub fn williams_polynomial(n: usize) -> LaurentPoly {
    williams_polynomial_shifted(n, 0)
}

/// [`williams_polynomial`] with `E_{m,n}` placed at `y^(m + offset)`. A nonzero
/// offset reproduces an off-by-one in the `y` indexing.
pub fn williams_polynomial_shifted(n: usize, offset: i64) -> LaurentPoly {
    (1..=n)
        .map(|m| williams_e(m, n).shift(0, m as i64 + offset))
        .sum()
}

/// Crossing polynomial of perfect matchings of `2n` points:
/// `(1-q)^-n sum_k (-1)^k (C(2n,n-k) - C(2n,n-k-1)) q^(k(k+1)/2)`.
pub fn touchard_riordan(n: usize) -> Result<LaurentPoly, PolyError> {
    let n = n as i64;
    let mut num = LaurentPoly::zero();
    for k in 0..=n {
        let c = (binomial(2 * n, n - k) - binomial(2 * n, n - k - 1)) * sign(k);
        num += &LaurentPoly::monomial(c, k * (k + 1) / 2, 0);
    }
    num.exact_div(&one_minus_q_pow(n as u32))
}

pub fn catalan(n: usize) -> BigInt {
    binomial(2 * n as i64, n as i64) / (n + 1)
}

/// `C_n`, `C(2n,n-3)`, `(n/2) C(2n,n-4)`, `((n+1)(n+2)/6) C(2n,n-5)`: the
/// coefficients of `q^0..q^3` in `<W|(D+E)^(n-1)|V>`.
pub fn taylor_low_order(n: usize) -> [BigInt; 4] {
    let n = n as i64;
    let b = |k| binomial(2 * n, n - k);
    let exact = |num: BigInt, den: i64| {
        let (quot, rem) = num.div_rem(&BigInt::from(den));
        assert!(rem.is_zero(), "low-order coefficient is integral");
        quot
    };
    [
        catalan(n as usize),
        b(3),
        exact(b(4) * n, 2),
        exact(b(5) * (n + 1) * (n + 2), 6),
    ]
}

const Q10_POLY: [i64; 14] = [
    5748019200,
    14397419520,
    5832578304,
    6310831968,
    2022876520,
    -6828164,
    -104051458,
    -17493961,
    -318990,
    228543,
    32354,
    2093,
    70,
    1,
];

/// `(2n)! / (10! (n+12)! (n-8)!) * (n^13 + 70 n^12 + ... + 5748019200)`,
/// zero for `n < 8`.
pub fn q10_coefficient(n: usize) -> Result<BigInt, ClosedFormError> {
    if n < 8 {
        return Ok(BigInt::zero());
    }
    let nn = BigInt::from(n);
    let poly = Q10_POLY
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, &c| acc * &nn + c);
    let num = factorial(2 * n as u64) * poly;
    let den = factorial(10) * factorial(n as u64 + 12) * factorial(n as u64 - 8);
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(ClosedFormError::NonInteger {
            formula: "q^10 coefficient",
            at: format!("n={n}"),
            value: BigRational::new(num, den).to_string(),
        });
    }
    Ok(quot)
}

/// `N(n, m) = C(n,m) C(n,m-1) / n`
pub fn narayana(n: usize, m: usize) -> BigInt {
    let (n, m) = (n as i64, m as i64);
    binomial(n, m) * binomial(n, m - 1) / n
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NarayanaReport {
    pub n: usize,
    /// `[y^m]` of the partition polynomial at `q = 0`, `m = 0..=n`.
    pub coefficients: Vec<String>,
    pub narayana: Vec<String>,
    pub passed: bool,
}

/// Compares the `q = 0` specialization of the partition polynomial with the
/// Narayana numbers `N(n, m)`.
pub fn narayana_check(n: usize) -> Result<NarayanaReport, PolyError> {
    let at_zero = theorem1(n)?.value.eval_q(&BigRational::zero())?;
    let coefficients: Vec<BigRational> = (0..=n as i64).map(|m| at_zero.coeff(0, m)).collect();
    let expected: Vec<BigInt> = (0..=n).map(|m| narayana(n, m)).collect();
    let passed = coefficients
        .iter()
        .zip(&expected)
        .all(|(c, e)| *c == BigRational::from_integer(e.clone()));
    Ok(NarayanaReport {
        n,
        coefficients: coefficients.iter().map(|c| c.to_string()).collect(),
        narayana: expected.iter().map(|c| c.to_string()).collect(),
        passed,
    })
}

/// Coefficients of `q y^m` and `q^2 y^m`:
/// `C(n,m+1) C(n,m-2)` and `C(n+1,m-2) C(n+1,m+2) (nm+m-m^2-4) / (2(n+1))`.
pub fn low_q_y_coefficients(n: usize, m: usize) -> Result<(BigInt, BigInt), ClosedFormError> {
    let (n, m) = (n as i64, m as i64);
    let first = binomial(n, m + 1) * binomial(n, m - 2);
    let num = binomial(n + 1, m - 2) * binomial(n + 1, m + 2) * (n * m + m - m * m - 4);
    let den = BigInt::from(2 * (n + 1));
    let (second, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(ClosedFormError::NonInteger {
            formula: "q^2 y^m coefficient",
            at: format!("n={n}, m={m}"),
            value: BigRational::new(num, den).to_string(),
        });
    }
    Ok((first, second))
}

/// `sum_{m <= k} [q^m] <W|(D+E)^(n-1)|V>`, the count of permutations with at
/// most `k` occurrences of 13-2, which bounds the classical 1-3-2 count.
pub fn pattern_13_2_cumulative(k: usize, n: usize) -> Result<BigInt, PolyError> {
    let c = corollary(n)?;
    Ok((0..=k as i64).map(|m| c.coeff(m, 0)).sum())
}

/// Fixed-point decimal: `scaled / 10^digits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decimal {
    pub scaled: BigInt,
    pub digits: u32,
}

impl Decimal {
    pub fn to_f64(&self) -> f64 {
        // keep 17 significant digits of the integer part of the scaled value
        let s = self.scaled.to_f64().unwrap_or(f64::NAN);
        s / 10f64.powi(self.digits as i32)
    }
}

impl std::fmt::Display for Decimal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let neg = self.scaled.is_negative();
        let digits = self.scaled.abs().to_string();
        let width = self.digits as usize + 1;
        let padded = format!("{digits:0>width$}");
        let (int, frac) = padded.split_at(padded.len() - self.digits as usize);
        write!(f, "{}{int}.{frac}", if neg { "-" } else { "" })
    }
}

/// Pi to 130 decimal places.
const PI_DIGITS: &str = "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679821480865132823066470938446";

/// Working precision of [`asymptotic_ratio`], in decimal digits.
pub const RATIO_DIGITS: u32 = 60;

/// `floor(pi * 10^(2 * digits))`
fn pi_scaled(digits: u32) -> BigInt {
    let (int, frac) = PI_DIGITS.split_once('.').unwrap();
    let take = 2 * digits as usize;
    assert!(frac.len() >= take, "not enough stored digits of pi");
    format!("{int}{}", &frac[..take]).parse().unwrap()
}

/// `[q^m] <W|(D+E)^(n-1)|V>` divided by `4^n n^(m-3/2) / (sqrt(pi) m!)`.
pub fn asymptotic_ratio(m: usize, n: usize) -> Result<Decimal, PolyError> {
    let coeff = corollary(n)?.coeff(m as i64, 0);
    Ok(ratio_to_asymptote(&coeff, m, n))
}

/// `coeff * m! * sqrt(pi) * n^(3/2) / (4^n n^m)` in fixed point; the square
/// root is taken exactly on the scaled integer `pi * n * 10^(2d)`.
pub fn ratio_to_asymptote(coeff: &BigInt, m: usize, n: usize) -> Decimal {
    let digits = RATIO_DIGITS;
    let sqrt_pi_n = (pi_scaled(digits) * n).sqrt();
    let num = coeff * factorial(m as u64) * n * sqrt_pi_n;
    let den = BigInt::from(4).pow(n as u32) * BigInt::from(n).pow(m as u32);
    Decimal {
        scaled: num / den,
        digits,
    }
}
