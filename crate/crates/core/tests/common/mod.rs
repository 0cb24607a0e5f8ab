#![allow(dead_code)]

use proptest::prelude::*;

use cyclosum::exactcore::{Rational, UniPoly};
use cyclosum::invariants::QPoly;
use cyclosum::rigidity::{build_admissible, AdmissibleFormula, ProductDatum};
use cyclosum::symfunc::{CoeffPoly, GenMonomial, PowerSumExpr, Z};

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| Rational::new(a, b))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |q| !q.is_zero())
}

/// `a + b·z` with small rational `a, b` (`b = 0` when `z_free`).
pub fn coeff(z_free: bool) -> impl Strategy<Value = CoeffPoly> {
    (small_rational(), small_rational())
        .prop_map(move |(a, b)| UniPoly::new(vec![a, if z_free { Rational::zero() } else { b }], Z))
}

/// A multiset of parts in `1..=d` with total at most `d`.
pub fn partition(d: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=d.max(1) as u32, 0..=d).prop_map(move |parts| {
        let mut kept = Vec::new();
        let mut total = 0u32;
        for p in parts {
            if total + p <= d as u32 {
                total += p;
                kept.push(p);
            }
        }
        kept.sort_unstable_by(|a, b| b.cmp(a));
        kept
    })
}

/// A stable presentation of weighted degree at most `d`.
pub fn psi(d: usize, z_free: bool) -> impl Strategy<Value = PowerSumExpr> {
    prop::collection::vec((partition(d), coeff(z_free)), 1..5).prop_map(|terms| {
        PowerSumExpr::from_terms(
            terms.into_iter().map(|(p, c)| (GenMonomial::from_partition(&p), c)),
        )
    })
}

/// A unit-normalized `Q` of `t`-degree 1 to 3, optionally depending on `z`.
pub fn qpoly(z_free: bool) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(coeff(z_free), 1..=3).prop_map(|rest| {
        let mut coeffs = vec![UniPoly::constant(Rational::one(), Z)];
        coeffs.extend(rest);
        QPoly::new(coeffs).expect("constant term is 1")
    })
}

pub fn polynomial_formula(d: usize) -> impl Strategy<Value = AdmissibleFormula> {
    psi(d, false).prop_map(AdmissibleFormula::polynomial)
}

pub fn product_formula(d: usize) -> impl Strategy<Value = AdmissibleFormula> {
    (psi(d, false), prop::collection::vec((qpoly(false), 1u32..=2), 1..=2))
        .prop_map(|(psi, factors)| build_admissible(psi, ProductDatum { factors }))
}
