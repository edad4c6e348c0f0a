//! Property tests for the exact polynomial layer.

use num_bigint::BigInt;
use pasep::exactpoly::{binomial, q_binomial, q_int, LaurentPoly, PolyError};
use proptest::prelude::*;

fn laurent_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-4i64..=6, -3i64..=5), -20i64..=20), 0..8)
        .prop_map(LaurentPoly::from_terms)
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    laurent_poly().prop_filter("divisor must be nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn addition_is_a_commutative_group(a in laurent_poly(), b in laurent_poly(), c in laurent_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &LaurentPoly::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(-(-a.clone()), a);
    }

    #[test]
    fn multiplication_is_commutative_associative_distributive(
        a in laurent_poly(), b in laurent_poly(), c in laurent_poly()
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert!((&a * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in laurent_poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).exact_div(&b), Ok(a));
    }

    #[test]
    fn non_multiples_are_rejected(a in nonzero_poly()) {
        // either an exact quotient or a clean error, never a wrong quotient
        let divisor = LaurentPoly::from_q_coeffs([3, 2]);
        match a.exact_div(&divisor) {
            Ok(quot) => prop_assert_eq!(&quot * &divisor, a),
            Err(e) => {
                let not_divisible = matches!(e, PolyError::NotDivisible { .. });
                prop_assert!(not_divisible);
            }
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(a in laurent_poly(), b in laurent_poly(), num in -5i64..=5, den in 1i64..=4) {
        use num_rational::BigRational;
        let v = BigRational::new(num.into(), den.into());
        prop_assume!(num != 0);
        let ea = a.eval_q(&v).unwrap();
        let eb = b.eval_q(&v).unwrap();
        let eab = (&a * &b).eval_q(&v).unwrap();
        let eapb = (&a + &b).eval_q(&v).unwrap();
        let y = BigRational::from_integer(3.into());
        let scalar = |p: &pasep::RationalPoly| p.eval_y(&y).unwrap().coeff(0, 0);
        prop_assert_eq!(scalar(&eab), scalar(&ea) * scalar(&eb));
        prop_assert_eq!(scalar(&eapb), scalar(&ea) + scalar(&eb));
    }

    #[test]
    fn json_round_trip(a in laurent_poly()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn q_binomial_symmetry_and_pascal(n in 0i64..=14, k in 0i64..=14) {
        prop_assume!(k <= n);
        let b = q_binomial(n, k);
        prop_assert_eq!(&b, &q_binomial(n, n - k));
        prop_assert_eq!(b.at_q_one(), LaurentPoly::constant(binomial(n, k)));
        if k >= 1 && n >= 1 {
            let pascal = &q_binomial(n - 1, k - 1) + &q_binomial(n - 1, k).shift(k, 0);
            prop_assert_eq!(&b, &pascal);
            let other = &q_binomial(n - 1, k - 1).shift(n - k, 0) + &q_binomial(n - 1, k);
            prop_assert_eq!(b, other);
        }
    }

    #[test]
    fn q_integers_are_additive(a in 0i64..=20, b in 0i64..=20) {
        prop_assert_eq!(q_int(a + b), &q_int(a) + &q_int(b).shift(a, 0));
        prop_assert_eq!(q_int(a).coeff_sum(), BigInt::from(a));
    }
}

#[test]
fn division_by_zero_is_an_error() {
    assert_eq!(
        LaurentPoly::one().exact_div(&LaurentPoly::zero()),
        Err(PolyError::DivisionByZero)
    );
}

#[test]
fn remainder_is_detected() {
    let dividend = &(&LaurentPoly::q() * &LaurentPoly::y()) + &LaurentPoly::one();
    let divisor = &LaurentPoly::one() - &LaurentPoly::q();
    assert!(matches!(
        dividend.exact_div(&divisor),
        Err(PolyError::NotDivisible { .. })
    ));
}

#[test]
fn binomial_outside_range_is_zero() {
    assert_eq!(binomial(5, -1), BigInt::from(0));
    assert_eq!(binomial(5, 6), BigInt::from(0));
    assert_eq!(binomial(40, 20), "137846528820".parse().unwrap());
}
