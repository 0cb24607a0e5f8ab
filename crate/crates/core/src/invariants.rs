//! Universal invariants of the punctured cosine configuration
//! `α_{k,n} = cos(2πk/n)`, `1 ≤ k ≤ n−1`.
//!
//! Everything here is exact. Full cosine and sine power sums come from the
//! parity-binomial heat-kernel formulas; `M_Q(n)` is a resultant against the
//! monic polynomial `W_n` whose roots are the punctured points.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactcore::{resultant, GaussianRational, Rational, Ring, Series, UniPoly};
use crate::symfunc::{coeff_const, CoeffPoly, Z};

/// `binom(h, u)` when `u` is an integer in `[0, h]`, zero otherwise.
pub fn parity_binom(h: u64, u: &Rational) -> BigInt {
    match u.to_integer() {
        Some(k) if k.sign() != Sign::Minus && k <= BigInt::from(h) => {
            let k: u64 = k.try_into().expect("k ≤ h fits");
            num_integer::binomial(BigInt::from(h), BigInt::from(k))
        }
        _ => BigInt::zero(),
    }
}

/// The window `r ∈ [−⌊h/n⌋, ⌊h/n⌋]` together with `binom_par(h, (rn+h)/2)`.
fn heat_kernel_terms(n: u64, h: u64) -> impl Iterator<Item = (i64, BigInt)> {
    let reach = (h / n) as i64;
    (-reach..=reach).map(move |r| {
        let u = Rational::new(r * n as i64 + h as i64, 2);
        (r, parity_binom(h, &u))
    })
}

/// `C(n, h) = Σ_{k=0}^{n−1} cos^h(2πk/n)`.
pub fn cos_power_sum(n: u64, h: u64) -> Result<Rational> {
    if n < 1 {
        return Err(Error::LevelTooSmall { n, min: 1 });
    }
    let total: BigInt = heat_kernel_terms(n, h).map(|(_, b)| b).sum();
    Ok(Rational::pow2(-(h as i64)) * Rational::from(n) * Rational::from(total))
}

/// `S(n, h)` accumulated as a Gaussian rational, before the reality check.
pub fn sin_power_sum_gaussian(n: u64, h: u64) -> Result<GaussianRational> {
    if n < 1 {
        return Err(Error::LevelTooSmall { n, min: 1 });
    }
    let mut acc = GaussianRational::default();
    for (r, b) in heat_kernel_terms(n, h) {
        if b.is_zero() {
            continue;
        }
        let term = GaussianRational::i_pow(r * n as i64).scale(&Rational::from(b));
        acc = &acc + &term;
    }
    Ok(acc.scale(&(Rational::pow2(-(h as i64)) * Rational::from(n))))
}

/// `S(n, h) = Σ_{k=0}^{n−1} sin^h(2πk/n)`. The imaginary part of the
/// accumulator must cancel exactly.
pub fn sin_power_sum(n: u64, h: u64) -> Result<Rational> {
    let acc = sin_power_sum_gaussian(n, h)?;
    if !acc.is_real() {
        return Err(Error::Internal(format!(
            "S({n}, {h}) has nonzero imaginary part {}",
            acc.im
        )));
    }
    Ok(acc.re)
}

/// `P_h(n) = Σ_{k=1}^{n−1} (2α_{k,n})^h = 2^h (C(n, h) − 1)`, valid for every
/// `n ≥ 2` and `h ≥ 0`.
pub fn punctured_power_sum(n: u64, h: u64) -> Result<Rational> {
    if n < 2 {
        return Err(Error::LevelTooSmall { n, min: 2 });
    }
    Ok(Rational::pow2(h as i64) * (cos_power_sum(n, h)? - Rational::one()))
}

/// Stable form of `P_h` as a polynomial in `n`, valid for integers `n > h`:
/// `n·binom(h, h/2) − 2^h` for even `h`, `−2^h` for odd `h`.
pub fn punctured_power_sum_stable(h: u64) -> UniPoly {
    let constant = -Rational::pow2(h as i64);
    let linear = if h.is_multiple_of(2) {
        Rational::from(num_integer::binomial(BigInt::from(h), BigInt::from(h / 2)))
    } else {
        Rational::zero()
    };
    UniPoly::new(vec![constant, linear], 'n')
}

/// Chebyshev polynomial of the first kind `T_n(t)`.
pub fn chebyshev_t(n: u64) -> UniPoly {
    let mut prev = UniPoly::constant(Rational::one(), 't');
    if n == 0 {
        return prev;
    }
    let two_t = UniPoly::from_ints(&[0, 2], 't');
    let mut cur = UniPoly::x('t');
    for _ in 1..n {
        let next = &(&two_t * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `W_n(t) = ∏_{k=1}^{n−1} (t − α_{k,n})`, monic of degree `n − 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PuncturedMinPoly {
    #[serde(serialize_with = "crate::invariants::serialize_display")]
    pub level: u64,
    #[serde(serialize_with = "serialize_display")]
    pub poly: UniPoly,
}

pub(crate) fn serialize_display<T: fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `W_n = (T_n − 1) / (2^{n−1}(t − 1))`; the division is checked to be exact.
pub fn punctured_min_poly(n: u64) -> Result<PuncturedMinPoly> {
    if n < 2 {
        return Err(Error::LevelTooSmall { n, min: 2 });
    }
    let numerator = &chebyshev_t(n) - &UniPoly::constant(Rational::one(), 't');
    let (q, r) = numerator.divrem(&UniPoly::from_ints(&[-1, 1], 't'))?;
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "T_{n} − 1 is not divisible by t − 1 (remainder {r})"
        )));
    }
    let poly = q.scale(&Rational::pow2(-(n as i64 - 1)));
    if !poly.is_monic() || poly.degree() != Some(n as usize - 1) {
        return Err(Error::Internal(format!("W_{n} = {poly} is not monic of degree {}", n - 1)));
    }
    Ok(PuncturedMinPoly { level: n, poly })
}

/// Polynomial `Q(z, t) = Σ q_k(z) t^k` with `Q(z, 0) = 1`.
#[derive(Clone, PartialEq)]
pub struct QPoly {
    coeffs: Vec<CoeffPoly>,
}

impl QPoly {
    /// Checks the unit normalization `q_0(z) = 1`.
    pub fn new(mut coeffs: Vec<CoeffPoly>) -> Result<Self> {
        while coeffs.last().is_some_and(UniPoly::is_zero) {
            coeffs.pop();
        }
        let c0 = coeffs.first().cloned().unwrap_or_else(|| UniPoly::zero_in(Z));
        if c0 != coeff_const(Rational::one()) {
            return Err(Error::NotUnitNormalized { constant: c0.with_var(Z).to_string() });
        }
        Ok(QPoly { coeffs: coeffs.into_iter().map(|c| c.with_var(Z)).collect() })
    }

    /// A `z`-free `Q` from a polynomial in `t`.
    pub fn from_t_poly(p: &UniPoly) -> Result<Self> {
        QPoly::new(p.coeffs().iter().map(|c| coeff_const(c.clone())).collect())
    }

    pub fn one() -> Self {
        QPoly { coeffs: vec![coeff_const(Rational::one())] }
    }

    pub fn coeffs(&self) -> &[CoeffPoly] {
        &self.coeffs
    }

    pub fn t_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `Q(z_value, t)` as a polynomial in `t`.
    pub fn specialize(&self, z_value: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c.eval(z_value)).collect(), 't')
    }

    /// `Q` as a series in `t` over ℚ[z].
    pub fn to_series(&self, order: usize) -> Series<CoeffPoly> {
        Series::new(self.coeffs.clone(), order)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let nonzero: Vec<_> = c.coeffs().iter().filter(|x| !x.is_zero()).collect();
            let single = c.is_constant() || nonzero.len() == 1;
            let negative = single && c.leading_coeff().is_negative();
            let body_coeff = if negative { c.neg_ref() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let coeff_s = if single {
                body_coeff.to_string()
            } else {
                format!("({body_coeff})")
            };
            match k {
                0 => write!(f, "{coeff_s}")?,
                _ => {
                    let t = if k == 1 { "t".to_string() } else { format!("t^{k}") };
                    if body_coeff.is_one() {
                        write!(f, "{t}")?
                    } else {
                        write!(f, "{coeff_s}*{t}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// `M_Q(n) = ∏_{k=1}^{n−1} Q(n−1, α_{k,n}) = Res(W_n, Q(n−1, ·))`.
pub fn multiplicative_invariant(q: &QPoly, n: u64) -> Result<Rational> {
    let w = punctured_min_poly(n)?;
    let spec = q.specialize(&Rational::from(n - 1));
    resultant(&w.poly, &spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn parity_binom_examples() {
        assert_eq!(parity_binom(4, &r(2)), BigInt::from(6));
        assert_eq!(parity_binom(3, &Rational::new(3, 2)), BigInt::zero());
        assert_eq!(parity_binom(4, &r(5)), BigInt::zero());
        assert_eq!(parity_binom(4, &r(-1)), BigInt::zero());
        assert_eq!(parity_binom(0, &r(0)), BigInt::from(1));
    }

    #[test]
    fn cos_sum_examples() {
        assert_eq!(cos_power_sum(4, 4).unwrap(), r(2));
        assert_eq!(cos_power_sum(7, 0).unwrap(), r(7));
        assert_eq!(cos_power_sum(2, 2).unwrap(), r(2));
        assert_eq!(cos_power_sum(1, 5).unwrap(), r(1));
    }

    #[test]
    fn sin_sum_examples() {
        assert_eq!(sin_power_sum(4, 2).unwrap(), r(2));
        assert_eq!(sin_power_sum(2, 2).unwrap(), r(0));
        assert_eq!(sin_power_sum(9, 0).unwrap(), r(9));
        assert_eq!(sin_power_sum(1, 3).unwrap(), r(0));
    }

    #[test]
    fn punctured_examples() {
        assert_eq!(punctured_power_sum(9, 0).unwrap(), r(8));
        assert_eq!(punctured_power_sum(5, 1).unwrap(), r(-2));
        // n = 3 ≤ h = 4 is outside the stable range; the full formula still holds.
        assert_eq!(punctured_power_sum(3, 4).unwrap(), r(2));
        assert_eq!(punctured_power_sum(10, 4).unwrap(), r(44));
        assert_eq!(punctured_power_sum(1, 4), Err(Error::LevelTooSmall { n: 1, min: 2 }));
    }

    #[test]
    fn unstable_differs_from_stable() {
        // n = 2, h = 2: points {−1}, P_2 = 4; stable form gives 2·2 − 4 = 0.
        assert_eq!(punctured_power_sum(2, 2).unwrap(), r(4));
        assert_eq!(punctured_power_sum_stable(2).eval(&r(2)), r(0));
    }

    #[test]
    fn stable_examples() {
        assert_eq!(punctured_power_sum_stable(2), UniPoly::from_ints(&[-4, 2], 'n'));
        assert_eq!(punctured_power_sum_stable(1), UniPoly::from_ints(&[-2], 'n'));
        assert_eq!(punctured_power_sum_stable(4), UniPoly::from_ints(&[-16, 6], 'n'));
        assert_eq!(punctured_power_sum_stable(0), UniPoly::from_ints(&[-1, 1], 'n'));
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_t(0), UniPoly::from_ints(&[1], 't'));
        assert_eq!(chebyshev_t(1), UniPoly::from_ints(&[0, 1], 't'));
        assert_eq!(chebyshev_t(3), UniPoly::from_ints(&[0, -3, 0, 4], 't'));
        assert_eq!(chebyshev_t(5), UniPoly::from_ints(&[0, 5, 0, -20, 0, 16], 't'));
    }

    #[test]
    fn min_poly_examples() {
        assert_eq!(punctured_min_poly(2).unwrap().poly, UniPoly::from_ints(&[1, 1], 't'));
        let w3 = UniPoly::new(vec![Rational::new(1, 4), r(1), r(1)], 't');
        assert_eq!(punctured_min_poly(3).unwrap().poly, w3);
        assert_eq!(punctured_min_poly(4).unwrap().poly, UniPoly::from_ints(&[0, 0, 1, 1], 't'));
    }

    #[test]
    fn min_poly_identity() {
        for n in 2..=30u64 {
            let w = punctured_min_poly(n).unwrap().poly;
            let lhs = (&UniPoly::from_ints(&[-1, 1], 't') * &w).scale(&Rational::pow2(n as i64 - 1));
            let rhs = &chebyshev_t(n) - &UniPoly::from_ints(&[1], 't');
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn mq_examples() {
        let lin = QPoly::from_t_poly(&UniPoly::from_ints(&[1, -1], 't')).unwrap();
        assert_eq!(multiplicative_invariant(&lin, 5).unwrap(), Rational::new(25, 16));
        let quad = QPoly::from_t_poly(&UniPoly::from_ints(&[1, 0, -1], 't')).unwrap();
        assert_eq!(multiplicative_invariant(&quad, 5).unwrap(), Rational::new(25, 256));
        assert_eq!(multiplicative_invariant(&quad, 6).unwrap(), r(0));
        assert_eq!(multiplicative_invariant(&QPoly::one(), 11).unwrap(), r(1));
    }

    #[test]
    fn mq_specializes_z() {
        // Q = 1 + z t at n = 3: z = 2, roots −1/2 twice → (1 − 1)² = 0
        let q = QPoly::new(vec![coeff_const(r(1)), UniPoly::x(Z)]).unwrap();
        assert_eq!(multiplicative_invariant(&q, 3).unwrap(), r(0));
        // n = 4: z = 3, roots {0, −1, 0} → 1 · (1 − 3) · 1 = −2
        assert_eq!(multiplicative_invariant(&q, 4).unwrap(), r(-2));
    }

    #[test]
    fn qpoly_rejects_bad_constant() {
        let err = QPoly::from_t_poly(&UniPoly::from_ints(&[2, -1], 't')).unwrap_err();
        assert!(matches!(err, Error::NotUnitNormalized { .. }));
        assert!(err.to_string().contains("product factor not unit-normalized"));
    }

    #[test]
    fn qpoly_renders() {
        let q = QPoly::from_t_poly(&UniPoly::from_ints(&[1, 0, -1], 't')).unwrap();
        assert_eq!(q.to_string(), "1 - t^2");
        let q = QPoly::new(vec![coeff_const(r(1)), UniPoly::from_ints(&[1, -2], Z)]).unwrap();
        assert_eq!(q.to_string(), "1 + (-2*z + 1)*t");
    }
}
