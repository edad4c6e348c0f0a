//! Cross-module invariants at desk scale.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use pasep::ansatz::{self, OperatorExpr};
use pasep::closedforms;
use pasep::exactpoly::{factorial, LaurentPoly};
use pasep::paths;
use pasep::permstats::{self, StatPair};
use pasep::rooks;

#[test]
fn partition_polynomial_json_is_canonical() {
    let t = closedforms::theorem1(3).unwrap().value;
    let json = serde_json::to_string(&t).unwrap();
    assert_eq!(
        json,
        r#"{"terms":[{"q":0,"y":1,"c":"1"},{"q":0,"y":2,"c":"3"},{"q":0,"y":3,"c":"1"},{"q":1,"y":2,"c":"1"}]}"#
    );
    let back: LaurentPoly = serde_json::from_str(&json).unwrap();
    assert_eq!(back, t);
}

#[test]
fn partition_polynomials_count_permutations() {
    for n in 1..=12 {
        let p = paths::motzkin_polynomial(n);
        assert!(p.is_polynomial() && p.has_nonnegative_coeffs(), "n={n}");
        assert_eq!(p.coeff_sum(), factorial(n as u64), "n={n}");
        let b = p.bounds().unwrap();
        assert_eq!((b.min_y, b.max_y), (1, n as i64), "n={n}");
    }
}

#[test]
fn scalar_product_is_truncation_independent() {
    for k in 0..=6 {
        assert!(ansatz::is_truncation_stable(
            &OperatorExpr::y_d_plus_e(),
            k,
            4
        ));
        assert!(ansatz::is_truncation_stable(
            &OperatorExpr::y_dhat_plus_ehat(),
            k,
            4
        ));
    }
    assert!(ansatz::scalar_product(&OperatorExpr::d_plus_e(), 5, 6).is_err());
}

#[test]
fn decomposition_is_a_bijection_onto_left_factor_core_pairs() {
    for n in 0..=6 {
        let mut seen = BTreeSet::new();
        for p in paths::p_paths(n) {
            let d = paths::decompose(&p).unwrap();
            assert!(d.core.in_m(), "{p}");
            assert_eq!(paths::recompose(&d.left_factor, &d.core).unwrap(), p);
            assert!(seen.insert((d.left_factor.clone(), d.core.to_string())));
        }
        // the image has the size predicted by the left-factor counts
        let predicted: BigInt = (0..=n)
            .flat_map(|k| (0..=n - k).map(move |j| (k, j)))
            .map(|(k, j)| {
                paths::count_left_factors_formula(n, k, j) * BigInt::from(paths::m_paths(k).len())
            })
            .sum();
        assert_eq!(BigInt::from(seen.len()), predicted, "n={n}");
    }
}

#[test]
fn phi_is_a_bijection_and_mu_depends_on_the_involution() {
    for n in 0..=6 {
        let placements = rooks::all_placements(n);
        let mut images = BTreeSet::new();
        let mut mu: BTreeMap<rooks::Involution, i64> = BTreeMap::new();
        for r in &placements {
            let (inv, lambda) = rooks::phi(r);
            assert_eq!(lambda.half_perimeter(), inv.fixed_points().len());
            assert_eq!(&rooks::phi_inverse(&inv, &lambda).unwrap(), r);
            let m = r.crosses() as i64 - lambda.size() as i64;
            assert!(m >= 0);
            assert_eq!(*mu.entry(inv.clone()).or_insert(m), m);
            assert_eq!(inv.mu() as i64, m);
            images.insert((inv, lambda.to_string()));
        }
        assert_eq!(images.len(), placements.len());
        // onto: every involution pairs with every diagram on its fixed points
        let expected: usize = mu
            .keys()
            .map(|inv| 1usize << inv.fixed_points().len())
            .sum();
        assert_eq!(expected, placements.len(), "n={n}");
    }
}

#[test]
fn t_table_vanishes_beyond_half() {
    for n in 0..=7 {
        let table = rooks::t_table(n);
        for k in 0..=n {
            if 2 * k > n {
                assert!(table[&(0, k)].is_zero(), "T(0,{k},{n})");
                assert!(rooks::t0_closed(k, n).is_zero());
            }
            assert!(rooks::check_factorization(0, k, n));
        }
    }
}

#[test]
fn functional_equation_holds_as_series() {
    let r = paths::check_functional_equation(4, 6);
    assert!(r.passed(), "{r:?}");
    assert!(r.coefficients_checked > 0);
}

#[test]
fn statistic_pairs_are_equidistributed() {
    for n in 1..=8 {
        let t = closedforms::theorem1(n).unwrap().value;
        assert_eq!(
            permstats::gen_polynomial(n, StatPair::AscentPattern),
            t,
            "n={n}"
        );
        assert_eq!(
            permstats::gen_polynomial(n, StatPair::WexCrossing),
            t,
            "n={n}"
        );
    }
}

#[test]
fn vincular_occurrences_are_classical() {
    assert!(permstats::pattern_bound_violations(7).is_empty());
    for (n, c) in (1..=8).map(|n| (n, closedforms::catalan(n))) {
        assert_eq!(BigInt::from(permstats::psi(0, n)), c, "n={n}");
    }
}

#[test]
fn classical_avoidance_is_bounded_by_the_13_2_distribution() {
    for n in 1..=9 {
        for k in 0..=3 {
            let psi = BigInt::from(permstats::psi(k, n));
            let bound = closedforms::pattern_13_2_cumulative(k, n).unwrap();
            assert!(psi <= bound, "psi_{k}({n}) = {psi} > {bound}");
        }
    }
}

#[test]
fn g_route_matches_the_closed_form() {
    for n in 1..=10 {
        assert_eq!(
            rooks::partition_via_g(n),
            closedforms::theorem1(n).unwrap().value,
            "n={n}"
        );
    }
}

#[test]
fn matrix_and_closed_form_agree_beyond_brute_force() {
    for n in 10..=14 {
        assert_eq!(
            ansatz::partition_polynomial(n),
            closedforms::theorem1(n).unwrap().value,
            "n={n}"
        );
        assert_eq!(
            closedforms::williams_polynomial(n),
            closedforms::theorem1(n).unwrap().value,
            "n={n}"
        );
    }
}
