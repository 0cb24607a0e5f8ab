//! Catalan coefficients `a_ℓ(n)` of `A(t)^n`, `A(t) = 2/(1 + √(1 − t²))`, the
//! stable complete-homogeneous values at cosine points, the global Chebyshev
//! generating function, and coefficient extraction from unit-normalized
//! products.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactcore::{Rational, Ring, Series, UniPoly};
use crate::invariants::{chebyshev_t, punctured_min_poly};
use crate::symfunc::{coeff_const, CoeffPoly, PowerSumExpr};

fn factorial(k: u64) -> Rational {
    (1..=k).map(Rational::from).product()
}

/// `a_ℓ(n) = n/(4^ℓ ℓ!) · ∏_{j=ℓ+1}^{2ℓ−1} (n + j)` for `ℓ ≥ 1`, and `a_0 = 1`.
pub fn catalan_a(l: u64, n: i64) -> Rational {
    if l == 0 {
        return Rational::one();
    }
    let prod: Rational = (l + 1..2 * l).map(|j| Rational::from(n + j as i64)).product();
    Rational::from(n) * prod / (Rational::pow2(2 * l as i64) * factorial(l))
}

/// Binomial form `4^{−ℓ}·n/(n+2ℓ)·binom(n+2ℓ, ℓ)`, defined when `n + 2ℓ > 0`.
pub fn catalan_a_binomial(l: u64, n: i64) -> Option<Rational> {
    let top = n + 2 * l as i64;
    if top <= 0 {
        return None;
    }
    let binom = num_integer::binomial(num_bigint::BigInt::from(top), num_bigint::BigInt::from(l));
    Some(Rational::new(n, top) * Rational::from(binom) * Rational::pow2(-2 * l as i64))
}

/// `A(t)^n` through `t^order`; odd coefficients vanish.
pub fn a_power_series(n: i64, order: usize) -> Series {
    let coeffs = (0..=order)
        .map(|k| if k % 2 == 0 { catalan_a(k as u64 / 2, n) } else { Rational::zero() })
        .collect();
    Series::new(coeffs, order)
}

/// Stable value of `h_r` at the punctured cosine points as a polynomial in
/// `n`, valid for `n ≥ r + 2`: `±a_m(n)` for `r = 2m` or `r = 2m + 1`.
pub fn h_stable(r: u64) -> Result<UniPoly> {
    if r < 2 {
        return Err(Error::HStableIndex(r));
    }
    let m = r / 2;
    let mut poly = UniPoly::x('n');
    for j in m + 1..2 * m {
        poly = &poly * &UniPoly::from_ints(&[j as i64, 1], 'n');
    }
    let mut c = (Rational::pow2(2 * m as i64) * factorial(m)).recip().expect("nonzero");
    if r % 2 == 1 {
        c = -c;
    }
    Ok(poly.scale(&c).with_var('n'))
}

/// `h_0` and `h_1` at the punctured cosine points, for any level `n ≥ 2`.
pub fn h_low(r: u64) -> Option<Rational> {
    match r {
        0 => Some(Rational::one()),
        1 => Some(Rational::from(-1)),
        _ => None,
    }
}

/// `Σ_r h_r(α_{1,n}, …, α_{n−1,n}) s^r` to a given order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HSeriesGlobal {
    #[serde(serialize_with = "crate::invariants::serialize_display")]
    #[serde(rename = "n")]
    pub level: u64,
    #[serde(serialize_with = "crate::invariants::serialize_display")]
    pub order: usize,
    #[serde(rename = "coefficients", serialize_with = "serialize_rationals")]
    pub coeffs: Vec<Rational>,
}

fn serialize_rationals<S: serde::Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

impl HSeriesGlobal {
    pub fn coeff(&self, r: usize) -> Rational {
        self.coeffs.get(r).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn series(&self) -> Series {
        Series::new(self.coeffs.clone(), self.order)
    }
}

/// `2^{n−1}(1 − s) / (s^n (T_n(1/s) − 1))`, exact for every `r ≤ order`.
///
/// The denominator `D(s)` is the reversed `T_n` minus `s^n`; its constant
/// term is `2^{n−1}`, which is divided out before inversion.
pub fn h_global_series(n: u64, order: usize) -> Result<HSeriesGlobal> {
    if n < 2 {
        return Err(Error::LevelTooSmall { n, min: 2 });
    }
    let t = chebyshev_t(n);
    let mut d: Vec<Rational> = t.reversed(n as usize).coeffs().to_vec();
    d.resize(n as usize + 1, Rational::zero());
    d[n as usize] = &d[n as usize] - &Rational::one();
    let lead = d[0].clone();
    let normalized = Series::new(d, order).scale(&lead.recip().expect("2^{n-1}"));
    let numerator = Series::from_ints(&[1, -1], order);
    let h = numerator.mul(&normalized.inv()?).scale(&(Rational::pow2(n as i64 - 1) / lead));
    if !h.constant_term().is_one() {
        return Err(Error::Internal(format!("h-series at n = {n} has constant term {}", h.constant_term())));
    }
    Ok(HSeriesGlobal { level: n, order, coeffs: h.coeffs().to_vec() })
}

/// `H_n(t) ≡ (1 − t)A(t)^n mod t^{R+1}`, for `n > R`.
pub fn verify_trunk(n: u64, r: usize) -> Result<bool> {
    if n <= r as u64 {
        return Err(Error::TruncationRange { n, r });
    }
    let h = h_global_series(n, r)?.series();
    let trunk = Series::from_ints(&[1, -1], r).mul(&a_power_series(n as i64, r));
    Ok(h == trunk)
}

/// Stable presentation of `b_r = [s^r] ∏_j Q(z, s x_j)`.
///
/// With `log Q = Σ L_ℓ(z) t^ℓ`, `b_r = [s^r] exp(Σ_{ℓ≤r} L_ℓ(z) v_ℓ s^ℓ)`.
/// `q` must carry at least `r` coefficients beyond the constant.
pub fn extract_coefficient_family(q: &Series<CoeffPoly>, r: usize) -> Result<PowerSumExpr> {
    if !q.constant_term().is_one() {
        return Err(Error::NotUnitNormalized { constant: q.constant_term().to_string() });
    }
    if q.order() < r {
        return Err(Error::SeriesOrderTooSmall { have: q.order(), need: r });
    }
    let log = q.truncate(r).log()?;
    let inner: Vec<PowerSumExpr> = (0..=r)
        .map(|l| {
            if l == 0 {
                PowerSumExpr::zero()
            } else {
                PowerSumExpr::generator(l).mul_ref(&PowerSumExpr::constant(log.coeff(l)))
            }
        })
        .collect();
    let e = Series::new(inner, r).exp()?;
    Ok(e.coeff(r))
}

/// `1/(1 − t)` over ℚ[z] through `t^order`.
pub fn geometric_q(order: usize) -> Series<CoeffPoly> {
    Series::new(vec![coeff_const(Rational::one()); order + 1], order)
}

/// Cross-check of `h_global_series` against the punctured minimal polynomial:
/// `H_n(s) · s^{n−1} W_n(1/s) = 1`.
pub fn h_series_times_reversed_w(n: u64, order: usize) -> Result<Series> {
    let w = punctured_min_poly(n)?.poly;
    let rev = Series::from_poly(&w.reversed(n as usize - 1), order);
    Ok(h_global_series(n, order)?.series().mul(&rev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{e_to_powersum, h_to_powersum};

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan_a(0, 17), q(1, 1));
        assert_eq!(catalan_a(0, -3), q(1, 1));
        assert_eq!(catalan_a(1, 7), q(7, 4));
        assert_eq!(catalan_a(2, 9), q(27, 8));
        for l in 0..6 {
            for n in 1..10 {
                assert_eq!(Some(catalan_a(l, n)), catalan_a_binomial(l, n), "l={l} n={n}");
            }
        }
    }

    #[test]
    fn catalan_recurrence() {
        for l in 1..8u64 {
            for n in -6..12i64 {
                let rhs = catalan_a(l, n - 1) + q(1, 4) * catalan_a(l - 1, n + 1);
                assert_eq!(catalan_a(l, n), rhs, "l={l} n={n}");
            }
        }
    }

    #[test]
    fn a_series_examples() {
        let a1 = a_power_series(1, 6);
        let expected = Series::new(
            vec![q(1, 1), q(0, 1), q(1, 4), q(0, 1), q(1, 8), q(0, 1), q(5, 64)],
            6,
        );
        assert_eq!(a1, expected);
        assert_eq!(a_power_series(0, 5), Series::one(5));
        assert_eq!(a_power_series(2, 10), a_power_series(1, 10).mul(&a_power_series(1, 10)));
    }

    #[test]
    fn h_stable_examples() {
        let n = UniPoly::x('n');
        let base = (&(&n * &UniPoly::from_ints(&[4, 1], 'n')) * &UniPoly::from_ints(&[5, 1], 'n'))
            .scale(&q(1, 384));
        assert_eq!(h_stable(6).unwrap(), base);
        assert_eq!(h_stable(7).unwrap(), base.neg_ref());
        assert_eq!(h_stable(7).unwrap().eval(&Rational::from(9)), q(-273, 64));
        assert_eq!(h_stable(2).unwrap(), UniPoly::new(vec![q(0, 1), q(1, 4)], 'n'));
        assert_eq!(h_stable(3).unwrap(), UniPoly::new(vec![q(0, 1), q(-1, 4)], 'n'));
        assert_eq!(h_stable(1), Err(Error::HStableIndex(1)));
    }

    #[test]
    fn h_global_examples() {
        let h = h_global_series(4, 2).unwrap();
        assert_eq!(h.coeffs, vec![q(1, 1), q(-1, 1), q(1, 1)]);
        assert_eq!(h_global_series(9, 7).unwrap().coeff(7), q(-273, 64));
        for n in 2..12 {
            assert_eq!(h_global_series(n, 3).unwrap().coeff(0), q(1, 1));
            assert_eq!(h_global_series(n, 3).unwrap().coeff(1), h_low(1).unwrap());
        }
    }

    #[test]
    fn h_global_inverts_reversed_w() {
        for n in 2..15 {
            assert_eq!(h_series_times_reversed_w(n, 20).unwrap(), Series::one(20), "n={n}");
        }
    }

    #[test]
    fn trunk_examples() {
        assert!(verify_trunk(9, 7).unwrap());
        assert!(verify_trunk(5, 4).unwrap());
        assert!(verify_trunk(3, 2).unwrap());
        assert_eq!(verify_trunk(4, 4), Err(Error::TruncationRange { n: 4, r: 4 }));
    }

    #[test]
    fn extract_examples() {
        assert_eq!(extract_coefficient_family(&geometric_q(2), 2).unwrap(), h_to_powersum(2));
        let one_minus_t = Series::new(vec![coeff_const(q(1, 1)), coeff_const(q(-1, 1))], 2);
        assert_eq!(extract_coefficient_family(&one_minus_t, 2).unwrap(), e_to_powersum(2));
        assert_eq!(extract_coefficient_family(&one_minus_t, 0).unwrap(), PowerSumExpr::one());
        for r in 0..7 {
            assert_eq!(extract_coefficient_family(&geometric_q(r), r).unwrap(), h_to_powersum(r));
        }
    }

    #[test]
    fn extract_rejects_bad_constant() {
        let bad = Series::new(vec![coeff_const(q(2, 1))], 3);
        let err = extract_coefficient_family(&bad, 2).unwrap_err();
        assert!(err.to_string().contains("not unit-normalized"));
    }
}
