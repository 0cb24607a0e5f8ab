mod common;

use proptest::prelude::*;

use common::qpoly;
use cyclosum::exactcore::{Rational, UniPoly};
use cyclosum::invariants::{
    cos_power_sum, multiplicative_invariant, punctured_power_sum, punctured_power_sum_stable,
    sin_power_sum, sin_power_sum_gaussian, QPoly,
};
use cyclosum::oracle::{cosine_points, direct_trig_power_sums, exact_newton_powersums, residual};
use num_bigint::BigInt;

fn binom(n: u64, k: u64) -> Rational {
    Rational::from(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

#[test]
fn sine_accumulator_is_real() {
    for n in 1..=24 {
        for h in 0..=24 {
            assert!(sin_power_sum_gaussian(n, h).unwrap().is_real(), "n={n} h={h}");
        }
    }
}

#[test]
fn trig_sums_match_direct_summation() {
    let tol = cyclosum::oracle::parse_decimal("1e-25", 256).unwrap();
    for n in [1u64, 2, 3, 5, 8, 13] {
        for h in [0u64, 1, 2, 3, 7, 12, 20] {
            let (c, s) = direct_trig_power_sums(n, h, 256).unwrap();
            assert!(residual(&c, &cos_power_sum(n, h).unwrap(), 256).unwrap() < tol, "cos n={n} h={h}");
            assert!(residual(&s, &sin_power_sum(n, h).unwrap(), 256).unwrap() < tol, "sin n={n} h={h}");
        }
    }
}

#[test]
fn stable_power_sums_in_range() {
    for h in 0..=12u64 {
        for n in (h + 1).max(2)..=30 {
            let stable = punctured_power_sum_stable(h).eval(&Rational::from(n));
            assert_eq!(punctured_power_sum(n, h).unwrap(), stable, "n={n} h={h}");
        }
    }
}

#[test]
fn stable_closed_form() {
    for h in 0..=12u64 {
        let expected = if h % 2 == 0 {
            UniPoly::new(vec![-Rational::pow2(h as i64), binom(h, h / 2)], 'n')
        } else {
            UniPoly::new(vec![-Rational::pow2(h as i64)], 'n')
        };
        assert_eq!(punctured_power_sum_stable(h), expected);
    }
}

#[test]
fn power_sums_agree_with_newton_route() {
    for n in 2..=20u64 {
        let newton = exact_newton_powersums(n, 10).unwrap();
        for (j, p) in newton.iter().enumerate() {
            let j = j as u64 + 1;
            assert_eq!(punctured_power_sum(n, j).unwrap(), p * &Rational::pow2(j as i64));
        }
    }
}

#[test]
fn linear_and_quadratic_products() {
    let lin = QPoly::from_t_poly(&UniPoly::from_ints(&[1, -1], 't')).unwrap();
    let quad = QPoly::from_t_poly(&UniPoly::from_ints(&[1, 0, -1], 't')).unwrap();
    for n in 2..=20u64 {
        let n2 = Rational::from(n * n);
        assert_eq!(multiplicative_invariant(&lin, n).unwrap(), &n2 * &Rational::pow2(1 - n as i64));
        let expected = if n % 2 == 1 { &n2 * &Rational::pow2(2 - 2 * n as i64) } else { Rational::zero() };
        assert_eq!(multiplicative_invariant(&quad, n).unwrap(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mq_is_multiplicative(a in qpoly(false), b in qpoly(false), n in 2u64..=12) {
        let z = Rational::from(n - 1);
        let ab = QPoly::from_t_poly(&(&a.specialize(&z) * &b.specialize(&z))).unwrap();
        let lhs = multiplicative_invariant(&ab, n).unwrap();
        let rhs = multiplicative_invariant(&a, n).unwrap() * multiplicative_invariant(&b, n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mq_matches_literal_product(q in qpoly(false), n in 2u64..=14) {
        use astro_float::RoundingMode;
        let p = 256;
        let rm = RoundingMode::ToEven;
        let cfg = cosine_points(n, p).unwrap();
        let spec = q.specialize(&Rational::from(n - 1));
        let coeffs: Vec<_> = spec
            .coeffs()
            .iter()
            .map(|c| cyclosum::oracle::rational_to_float(c, p).unwrap())
            .collect();
        let mut prod = astro_float::BigFloat::from_i64(1, p);
        for x in &cfg.points {
            let v = coeffs
                .iter()
                .rev()
                .fold(astro_float::BigFloat::from_i64(0, p), |acc, c| acc.mul(x, p, rm).add(c, p, rm));
            prod = prod.mul(&v, p, rm);
        }
        let exact = multiplicative_invariant(&q, n).unwrap();
        let tol = cyclosum::oracle::parse_decimal("1e-40", p).unwrap();
        prop_assert!(residual(&prod, &exact, p).unwrap() < tol);
    }
}
