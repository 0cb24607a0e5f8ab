mod common;

use proptest::prelude::*;

use common::{qpoly, small_rational};
use cyclosum::catalan::{
    a_power_series, catalan_a, catalan_a_binomial, extract_coefficient_family, geometric_q,
    h_global_series, h_stable, verify_trunk,
};
use cyclosum::exactcore::{Rational, Series, UniPoly};
use cyclosum::oracle::exact_newton_powersums;
use cyclosum::rigidity::{eventual_polynomial, AdmissibleFormula};
use cyclosum::symfunc::h_to_powersum;
use num_bigint::BigInt;

fn pochhammer(a: &Rational, k: u64) -> Rational {
    (0..k).map(|i| a + &Rational::from(i)).product()
}

#[test]
fn functional_equation() {
    for l in 1..=10usize {
        let a = a_power_series(1, 2 * l);
        let t2_over_4 = Series::new(vec![Rational::zero(), Rational::zero(), Rational::new(1, 4)], 2 * l);
        let rhs = Series::one(2 * l).add(&t2_over_4.mul(&a.mul(&a)));
        assert_eq!(a, rhs, "L = {l}");
    }
}

#[test]
fn recurrence() {
    for l in 1..=12u64 {
        for n in -10..=30i64 {
            let rhs = catalan_a(l, n - 1) + Rational::new(1, 4) * catalan_a(l - 1, n + 1);
            assert_eq!(catalan_a(l, n), rhs, "l={l} n={n}");
        }
    }
}

#[test]
fn hypergeometric_form() {
    for l in 0..=8u64 {
        for n in 1..=20i64 {
            let nq = Rational::from(n);
            let half = Rational::new(1, 2);
            let num = pochhammer(&(&nq * &half), l) * pochhammer(&((&nq + &Rational::one()) * half), l);
            let den = pochhammer(&(&nq + &Rational::one()), l) * pochhammer(&Rational::one(), l);
            assert_eq!(catalan_a(l, n), num / den, "l={l} n={n}");
            assert_eq!(Some(catalan_a(l, n)), catalan_a_binomial(l, n));
        }
    }
}

#[test]
fn log_series() {
    for l in 1..=10usize {
        let log = a_power_series(1, 2 * l).log().unwrap().truncate(2 * l);
        let mut expected = vec![Rational::zero(); 2 * l + 1];
        for j in 1..=l {
            let b = Rational::from(num_integer::binomial(BigInt::from(2 * j), BigInt::from(j)));
            expected[2 * j] = b * Rational::new(1, 2 * j as i64) * Rational::pow2(-2 * j as i64);
        }
        assert_eq!(log, Series::new(expected, 2 * l), "L = {l}");
    }
}

#[test]
fn h_consistency_triangle() {
    for r in 2..=8usize {
        let stable = h_stable(r as u64).unwrap();
        let family = extract_coefficient_family(&geometric_q(r), r).unwrap();
        let eventual = eventual_polynomial(&AdmissibleFormula::polynomial(family)).unwrap();
        assert_eq!(eventual, stable, "r = {r}");
        for n in r as u64 + 2..=20 {
            let global = h_global_series(n, r).unwrap().coeff(r);
            assert_eq!(global, stable.eval(&Rational::from(n)), "r = {r}, n = {n}");
        }
    }
}

#[test]
fn trunk_congruence() {
    for r in 1..=8usize {
        for n in r as u64 + 1..=16 {
            assert!(verify_trunk(n, r).unwrap(), "n = {n}, R = {r}");
        }
    }
}

#[test]
fn global_series_all_coefficients() {
    // every r, inside and outside the stable range, against h_r evaluated at
    // the Newton-identity power sums of the points
    for n in 2..=12u64 {
        let h = h_global_series(n, 12).unwrap();
        let p = exact_newton_powersums(n, 12).unwrap();
        for r in 0..=12usize {
            assert_eq!(h.coeff(r), h_to_powersum(r).evaluate(&p, &Rational::zero()), "n = {n}, r = {r}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn extraction_matches_direct_product(
        q in qpoly(false),
        r in 0usize..=4,
        xs in prop::collection::vec(small_rational(), 4),
        z in small_rational(),
    ) {
        let xs = &xs[..r.max(1)];
        let family = extract_coefficient_family(&q.to_series(r), r).unwrap();
        let ps: Vec<Rational> = (1..=r.max(1) as i64).map(|k| xs.iter().map(|x| x.pow(k)).sum()).collect();
        let via_family = family.evaluate(&ps, &z);
        let spec = q.specialize(&z);
        let direct = xs.iter().fold(UniPoly::from_ints(&[1], 's'), |acc, x| {
            let scaled: Vec<Rational> =
                spec.coeffs().iter().enumerate().map(|(k, c)| c * &x.pow(k as i64)).collect();
            &acc * &UniPoly::new(scaled, 's')
        });
        prop_assert_eq!(via_family, direct.coeff(r));
    }

    #[test]
    fn extraction_degree_bound(q in qpoly(false), r in 1usize..=4) {
        prop_assert!(extract_coefficient_family(&q.to_series(r), r).unwrap().weighted_degree() <= r);
    }
}
