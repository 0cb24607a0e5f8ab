mod common;

use proptest::prelude::*;

use common::{psi, small_rational};
use cyclosum::exactcore::{Rational, Ring, UniPoly};
use cyclosum::symfunc::{
    coeff_const, e_to_powersum, expand, h_to_powersum, reduce_to_powersum, truncation_check,
    PowerSumExpr, SymMonomialPoly,
};

fn power_sums(xs: &[Rational], d: usize) -> Vec<Rational> {
    (1..=d as i64).map(|r| xs.iter().map(|x| x.pow(r)).sum()).collect()
}

/// `∏_j (1 + x_j s)` as a polynomial in `s`.
fn elementary_generating(xs: &[Rational]) -> UniPoly {
    xs.iter().fold(UniPoly::from_ints(&[1], 's'), |acc, x| {
        &acc * &UniPoly::new(vec![Rational::one(), x.clone()], 's')
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduce_inverts_expand(
        (d, p, extra) in (1usize..=6).prop_flat_map(|d| (Just(d), psi(d, false), 0usize..=2)),
    ) {
        let g = expand(&p, d + extra);
        prop_assert_eq!(reduce_to_powersum(&g, d).unwrap(), p);
    }

    #[test]
    fn expand_is_multiplicative(a in psi(3, false), b in psi(3, true), m in 1usize..=4) {
        let lhs = expand(&a.mul_ref(&b), m);
        let rhs = expand(&a, m).mul(&expand(&b, m));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn expand_matches_pointwise_evaluation(
        p in psi(4, false),
        xs in prop::collection::vec(small_rational(), 1..=4),
        z in small_rational(),
    ) {
        let direct = p.evaluate(&power_sums(&xs, 4), &z);
        let via_monomials = expand(&p, xs.len()).eval_at(&xs, &z);
        prop_assert_eq!(direct, via_monomials);
    }

    #[test]
    fn truncation_compatible(p in psi(4, false), m in 0usize..=4) {
        prop_assert!(truncation_check(&p, m));
    }

    #[test]
    fn elementary_matches_generating_function(xs in prop::collection::vec(small_rational(), 1..=5)) {
        let gen = elementary_generating(&xs);
        let ps = power_sums(&xs, 6);
        for r in 0..=6usize {
            let e = e_to_powersum(r).evaluate(&ps, &Rational::zero());
            prop_assert_eq!(e, gen.coeff(r), "r = {}", r);
        }
    }
}

#[test]
fn newton_duality() {
    for r in 1..=8usize {
        let mut acc = PowerSumExpr::zero();
        for i in 0..=r {
            let term = e_to_powersum(i).mul_ref(&h_to_powersum(r - i));
            acc = if i % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
        }
        assert!(acc.is_zero(), "r = {r}: {acc}");
    }
}

#[test]
fn elementary_is_single_orbit() {
    for r in 1..=5usize {
        for m in r..=r + 2 {
            let expected =
                SymMonomialPoly::from_partitions(m, [(vec![1; r], coeff_const(Rational::one()))]).unwrap();
            assert_eq!(expand(&e_to_powersum(r), m), expected, "r = {r}, m = {m}");
        }
    }
}

#[test]
fn elementary_vanishes_past_variable_count() {
    for r in 2..=5usize {
        assert!(expand(&e_to_powersum(r), r - 1).is_zero());
    }
}
