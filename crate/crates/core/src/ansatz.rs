//! Finite truncations of the semi-infinite operators `D`, `E` and their hat
//! counterparts `D^ = (q-1)/q D + 1/q`, `E^ = (q-1)/q E + 1/q`.
//!
//! `D` is upper bidiagonal and `E` lower bidiagonal, with `[i+1]_q` on the
//! nonzero entries of row `i`. Products of tridiagonal matrices are exact on
//! entries whose contributing paths stay inside the truncation, so relation
//! checks exclude the last row and column, and scalar products
//! `<W|M^k|V>` need a truncation of at least `k + 2`.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactpoly::{binomial, one_minus_q_pow, q_int, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnsatzError {
    #[error("truncation {dim} is too small for power {power} (need at least {})", power + 2)]
    TruncationTooSmall { power: usize, dim: usize },
}

/// Square matrix of Laurent polynomials, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<LaurentPoly>,
}

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "operator truncation must be at least 1x1");
        Self {
            dim,
            entries: vec![LaurentPoly::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: LaurentPoly) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[LaurentPoly]> {
        self.entries.chunks(self.dim)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Entrywise multiplication by a scalar polynomial.
    pub fn scale(&self, s: &LaurentPoly) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

impl std::fmt::Debug for OperatorMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl Serialize for OperatorMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<&[LaurentPoly]> = self.rows().collect();
        rows.serialize(s)
    }
}

/// Truncation of `D`: `D[i][j] = [i+1]_q` for `j in {i, i+1}`.
pub fn build_d(dim: usize) -> OperatorMatrix {
    let mut m = OperatorMatrix::zeros(dim);
    for i in 0..dim {
        let v = q_int(i as i64 + 1);
        m.set(i, i, v.clone());
        if i + 1 < dim {
            m.set(i, i + 1, v);
        }
    }
    m
}

/// Truncation of `E`: `E[i][j] = [i+1]_q` for `j in {i, i-1}`.
pub fn build_e(dim: usize) -> OperatorMatrix {
    let mut m = OperatorMatrix::zeros(dim);
    for i in 0..dim {
        let v = q_int(i as i64 + 1);
        m.set(i, i, v.clone());
        if i > 0 {
            m.set(i, i - 1, v);
        }
    }
    m
}

/// `(q-1)/q * M + 1/q * I`, entries in Laurent form.
pub fn build_hat(m: &OperatorMatrix) -> OperatorMatrix {
    let factor = LaurentPoly::from_terms([((0, 0), 1), ((-1, 0), -1)]);
    let shift = LaurentPoly::q_pow(-1);
    m.scale(&factor)
        .add(&OperatorMatrix::identity(m.dim()).scale(&shift))
}

/// The boundary vectors `<W| = (1, 0, ...)` and `|V> = (1, 0, ...)^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryVectors {
    pub w: Vec<LaurentPoly>,
    pub v: Vec<LaurentPoly>,
}

impl BoundaryVectors {
    pub fn new(dim: usize) -> Self {
        let mut unit = vec![LaurentPoly::zero(); dim];
        unit[0] = LaurentPoly::one();
        Self {
            w: unit.clone(),
            v: unit,
        }
    }

    pub fn inner(&self) -> LaurentPoly {
        self.w.iter().zip(&self.v).map(|(a, b)| a * b).sum()
    }
}

fn row_times(row: &[LaurentPoly], m: &OperatorMatrix) -> Vec<LaurentPoly> {
    let n = m.dim();
    let mut out = vec![LaurentPoly::zero(); n];
    for (i, a) in row.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, slot) in out.iter_mut().enumerate() {
            let b = m.get(i, j);
            if !b.is_zero() {
                *slot += &(a * b);
            }
        }
    }
    out
}

fn times_column(m: &OperatorMatrix, col: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let n = m.dim();
    (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j) * &col[j]).sum())
        .collect()
}

/// A linear combination `a*X + b*Y` with `(X, Y) = (D, E)` or `(D^, E^)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorExpr {
    pub d_coeff: LaurentPoly,
    pub e_coeff: LaurentPoly,
    pub hat: bool,
}

impl OperatorExpr {
    /// `yD + E`
    pub fn y_d_plus_e() -> Self {
        Self {
            d_coeff: LaurentPoly::y(),
            e_coeff: LaurentPoly::one(),
            hat: false,
        }
    }

    /// `D + E`
    pub fn d_plus_e() -> Self {
        Self {
            d_coeff: LaurentPoly::one(),
            e_coeff: LaurentPoly::one(),
            hat: false,
        }
    }

    /// `yD^ + E^`
    pub fn y_dhat_plus_ehat() -> Self {
        Self {
            d_coeff: LaurentPoly::y(),
            e_coeff: LaurentPoly::one(),
            hat: true,
        }
    }

    pub fn build(&self, dim: usize) -> OperatorMatrix {
        let (d, e) = if self.hat {
            (build_hat(&build_d(dim)), build_hat(&build_e(dim)))
        } else {
            (build_d(dim), build_e(dim))
        };
        d.scale(&self.d_coeff).add(&e.scale(&self.e_coeff))
    }
}

/// `<W|M^k|V>` computed on a `dim x dim` truncation.
pub fn scalar_product(
    expr: &OperatorExpr,
    k: usize,
    dim: usize,
) -> Result<LaurentPoly, AnsatzError> {
    if dim < k + 2 {
        return Err(AnsatzError::TruncationTooSmall { power: k, dim });
    }
    let m = expr.build(dim);
    let bv = BoundaryVectors::new(dim);
    let mut row = bv.w.clone();
    for _ in 0..k {
        row = row_times(&row, &m);
    }
    Ok(row.iter().zip(&bv.v).map(|(a, b)| a * b).sum())
}

/// `y <W|(yD + E)^(n-1)|V>`, the partition polynomial of size `n`.
pub fn partition_polynomial(n: usize) -> LaurentPoly {
    assert!(n >= 1);
    let sp = scalar_product(&OperatorExpr::y_d_plus_e(), n - 1, n + 1).expect("dim = k + 2");
    &sp * &LaurentPoly::y()
}

/// `<W|(yD^ + E^)^k|V>`
pub fn hat_moment(k: usize) -> LaurentPoly {
    scalar_product(&OperatorExpr::y_dhat_plus_ehat(), k, k + 2).expect("dim = k + 2")
}

/// Whether `<W|M^k|V>` is the same for every truncation in `[k+2, k+2+extra]`.
pub fn is_truncation_stable(expr: &OperatorExpr, k: usize, extra: usize) -> bool {
    let base = scalar_product(expr, k, k + 2).expect("dim = k + 2");
    (k + 3..=k + 2 + extra).all(|dim| scalar_product(expr, k, dim).as_ref() == Ok(&base))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub relation: String,
    pub row: usize,
    pub col: usize,
    pub expected: LaurentPoly,
    pub actual: LaurentPoly,
}

/// Outcome of an entrywise relation check. Mismatches on truncation edges are
/// recorded separately and do not fail the check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    pub violations: Vec<Mismatch>,
    pub edge_mismatches: Vec<Mismatch>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn compare_matrices(
        &mut self,
        relation: &str,
        lhs: &OperatorMatrix,
        rhs: &OperatorMatrix,
        exact: impl Fn(usize, usize) -> bool,
    ) {
        let n = lhs.dim();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (lhs.get(i, j), rhs.get(i, j));
                let inside = exact(i, j);
                if inside {
                    self.checked += 1;
                }
                if a != b {
                    let m = Mismatch {
                        relation: relation.to_string(),
                        row: i,
                        col: j,
                        expected: b.clone(),
                        actual: a.clone(),
                    };
                    if inside {
                        self.violations.push(m);
                    } else {
                        self.edge_mismatches.push(m);
                    }
                }
            }
        }
    }

    fn compare_vectors(&mut self, relation: &str, lhs: &[LaurentPoly], rhs: &[LaurentPoly]) {
        let n = lhs.len();
        for (i, (a, b)) in lhs.iter().zip(rhs).enumerate() {
            let inside = i + 1 < n;
            if inside {
                self.checked += 1;
            }
            if a != b {
                let m = Mismatch {
                    relation: relation.to_string(),
                    row: 0,
                    col: i,
                    expected: b.clone(),
                    actual: a.clone(),
                };
                if inside {
                    self.violations.push(m);
                } else {
                    self.edge_mismatches.push(m);
                }
            }
        }
    }

    fn compare_scalar(&mut self, relation: &str, lhs: LaurentPoly, rhs: LaurentPoly) {
        self.checked += 1;
        if lhs != rhs {
            self.violations.push(Mismatch {
                relation: relation.to_string(),
                row: 0,
                col: 0,
                expected: rhs,
                actual: lhs,
            });
        }
    }

    fn merge(&mut self, other: RelationReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.edge_mismatches.extend(other.edge_mismatches);
    }
}

/// Entry `(i, j)` of a product of `power` tridiagonal factors is exact on a
/// `dim` truncation when no contributing path climbs past row `dim - 1`.
fn exact_entry(dim: usize, power: usize) -> impl Fn(usize, usize) -> bool {
    move |i, j| i + 1 < dim && j + 1 < dim && i + j + power < 2 * dim - 1
}

fn check_boundary(report: &mut RelationReport, d: &OperatorMatrix, e: &OperatorMatrix, tag: &str) {
    let dim = d.dim();
    let bv = BoundaryVectors::new(dim);
    report.compare_vectors(&format!("<W|{tag}E = <W|"), &row_times(&bv.w, e), &bv.w);
    report.compare_vectors(&format!("{tag}D|V> = |V>"), &times_column(d, &bv.v), &bv.v);
    report.compare_scalar("<W|V> = 1", bv.inner(), LaurentPoly::one());
}

/// Checks `DE - qED = D + E`, `<W|E = <W|`, `D|V> = |V>` and `<W|V> = 1`.
pub fn verify_ansatz(dim: usize) -> RelationReport {
    assert!(dim >= 2);
    let (d, e) = (build_d(dim), build_e(dim));
    let lhs = d.mul(&e).sub(&e.mul(&d).scale(&LaurentPoly::q()));
    let rhs = d.add(&e);
    let mut report = RelationReport::default();
    report.compare_matrices("DE - qED = D + E", &lhs, &rhs, exact_entry(dim, 2));
    check_boundary(&mut report, &d, &e, "");
    report
}

/// Checks `D^E^ - qE^D^ = (1-q)/q^2`, `<W|E^ = <W|` and `D^|V> = |V>`.
pub fn verify_hat_relations(dim: usize) -> RelationReport {
    assert!(dim >= 2);
    let (d, e) = (build_hat(&build_d(dim)), build_hat(&build_e(dim)));
    let lhs = d.mul(&e).sub(&e.mul(&d).scale(&LaurentPoly::q()));
    let p = LaurentPoly::from_terms([((-2, 0), 1), ((-1, 0), -1)]);
    let rhs = OperatorMatrix::identity(dim).scale(&p);
    let mut report = RelationReport::default();
    report.compare_matrices("D^E^ - qE^D^ = (1-q)/q^2", &lhs, &rhs, exact_entry(dim, 2));
    check_boundary(&mut report, &d, &e, "^");
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InversionReport {
    /// `(1-q)^n (yD+E)^n = sum_k C(n,k) (1+y)^(n-k) (-1)^k q^k (yD^+E^)^k`
    pub forward: RelationReport,
    /// `q^n (yD^+E^)^n = sum_k C(n,k) (1+y)^(n-k) (-1)^k (1-q)^k (yD+E)^k`
    pub backward: RelationReport,
    /// The backward formula with `(D+E)^k` in place of `(yD+E)^k`, at `y = 2`.
    pub backward_without_y: RelationReport,
}

fn inversion_sum(
    n: usize,
    one_plus_y: &LaurentPoly,
    step: &LaurentPoly,
    m: &OperatorMatrix,
) -> OperatorMatrix {
    let dim = m.dim();
    let mut acc = OperatorMatrix::zeros(dim);
    let mut power = OperatorMatrix::identity(dim);
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let coeff = &(&one_plus_y.pow((n - k) as u32) * &step.pow(k as u32))
            .scale(&(binomial(n as i64, k as i64) * sign));
        acc = acc.add(&power.scale(coeff));
        power = power.mul(m);
    }
    acc
}

/// Checks both inversion formulas between `(yD+E)^n` and `(yD^+E^)^n` on the
/// exact entries of a `dim` truncation, plus the variant with `(D+E)^k`.
pub fn verify_inversion(n: usize, dim: usize) -> Result<InversionReport, AnsatzError> {
    if dim < n + 2 {
        return Err(AnsatzError::TruncationTooSmall { power: n, dim });
    }
    let one = LaurentPoly::one();
    let q = LaurentPoly::q();
    let one_minus_q = &one - &q;
    let plain = OperatorExpr::y_d_plus_e().build(dim);
    let hat = OperatorExpr::y_dhat_plus_ehat().build(dim);
    let one_plus_y = &one + &LaurentPoly::y();

    let mut forward = RelationReport::default();
    forward.compare_matrices(
        "(1-q)^n (yD+E)^n",
        &plain.pow(n as u32).scale(&one_minus_q_pow(n as u32)),
        &inversion_sum(n, &one_plus_y, &q, &hat),
        exact_entry(dim, n),
    );

    let mut backward = RelationReport::default();
    backward.compare_matrices(
        "q^n (yD^+E^)^n",
        &hat.pow(n as u32).scale(&q.pow(n as u32)),
        &inversion_sum(n, &one_plus_y, &one_minus_q, &plain),
        exact_entry(dim, n),
    );

    let two = LaurentPoly::constant(2);
    let hat_at_two = OperatorExpr {
        d_coeff: two.clone(),
        e_coeff: one.clone(),
        hat: true,
    }
    .build(dim);
    let mut backward_without_y = RelationReport::default();
    backward_without_y.compare_matrices(
        "q^n (2D^+E^)^n with (D+E)^k",
        &hat_at_two.pow(n as u32).scale(&q.pow(n as u32)),
        &inversion_sum(
            n,
            &(&one + &two),
            &one_minus_q,
            &OperatorExpr::d_plus_e().build(dim),
        ),
        exact_entry(dim, n),
    );

    Ok(InversionReport {
        forward,
        backward,
        backward_without_y,
    })
}

/// Every relation check at once, for the cross-check harness.
pub fn verify_all(dim: usize) -> RelationReport {
    let mut r = verify_ansatz(dim);
    r.merge(verify_hat_relations(dim));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_q_coeffs(coeffs.iter().copied())
    }

    #[test]
    fn d_and_e_truncations() {
        let d = build_d(2);
        assert_eq!(d.get(0, 0), &poly(&[1]));
        assert_eq!(d.get(0, 1), &poly(&[1]));
        assert!(d.get(1, 0).is_zero());
        assert_eq!(d.get(1, 1), &poly(&[1, 1]));

        let e = build_e(2);
        assert_eq!(e.get(0, 0), &poly(&[1]));
        assert!(e.get(0, 1).is_zero());
        assert_eq!(e.get(1, 0), &poly(&[1, 1]));
        assert_eq!(e.get(1, 1), &poly(&[1, 1]));

        assert_eq!(build_d(1), OperatorMatrix::identity(1));
    }

    #[test]
    fn hat_examples() {
        assert_eq!(build_hat(&build_d(1)), OperatorMatrix::identity(1));
        assert_eq!(
            build_hat(&OperatorMatrix::identity(3)),
            OperatorMatrix::identity(3)
        );
        let eh = build_hat(&build_e(2));
        assert_eq!(
            eh.get(1, 0),
            &LaurentPoly::from_terms([((-1, 0), -1), ((1, 0), 1)])
        );
    }

    #[test]
    fn scalar_product_examples() {
        let yde = OperatorExpr::y_d_plus_e();
        assert_eq!(
            scalar_product(&yde, 1, 3).unwrap(),
            &LaurentPoly::one() + &LaurentPoly::y()
        );
        let expected =
            LaurentPoly::from_terms([((0, 2), 1), ((0, 1), 3), ((0, 0), 1), ((1, 1), 1)]);
        assert_eq!(scalar_product(&yde, 2, 4).unwrap(), expected);
        let de = scalar_product(&OperatorExpr::d_plus_e(), 2, 4).unwrap();
        assert_eq!(de.coeff(0, 0), 5.into());
        assert_eq!(
            scalar_product(&yde, 3, 4),
            Err(AnsatzError::TruncationTooSmall { power: 3, dim: 4 })
        );
    }

    #[test]
    fn truncation_stability() {
        for k in 0..=6 {
            assert!(is_truncation_stable(&OperatorExpr::y_d_plus_e(), k, 4));
            assert!(is_truncation_stable(
                &OperatorExpr::y_dhat_plus_ehat(),
                k,
                4
            ));
        }
    }

    #[test]
    fn ansatz_relations_hold_on_interior() {
        let r = verify_ansatz(6);
        assert!(r.passed(), "{:?}", r.violations);
        // truncation breaks the relation in the last row
        assert!(!r.edge_mismatches.is_empty());
        let d = build_d(3);
        let e = build_e(3);
        let lhs = d.mul(&e).sub(&e.mul(&d).scale(&LaurentPoly::q()));
        assert_eq!(lhs.get(0, 0), &LaurentPoly::constant(2));
    }

    #[test]
    fn hat_relations_hold_on_interior() {
        let r = verify_hat_relations(4);
        assert!(r.passed(), "{:?}", r.violations);
        let (d, e) = (build_hat(&build_d(4)), build_hat(&build_e(4)));
        let lhs = d.mul(&e).sub(&e.mul(&d).scale(&LaurentPoly::q()));
        assert_eq!(
            lhs.get(0, 0),
            &LaurentPoly::from_terms([((-2, 0), 1), ((-1, 0), -1)])
        );
        assert!(lhs.get(0, 1).is_zero());
        assert!(lhs.get(1, 0).is_zero());
        assert!(e.get(0, 0).is_one());
    }

    #[test]
    fn inversion_formulas() {
        for n in 1..=3 {
            let r = verify_inversion(n, n + 3).unwrap();
            assert!(r.forward.passed(), "n={n}: {:?}", r.forward.violations);
            assert!(r.backward.passed(), "n={n}: {:?}", r.backward.violations);
            assert!(!r.backward_without_y.passed(), "n={n}");
        }
        assert!(verify_inversion(4, 5).is_err());
    }

    #[test]
    fn serializes_row_major() {
        let s = serde_json::to_string(&build_d(2)).unwrap();
        assert!(s.starts_with("[[{\"terms\""));
    }
}
