//! Resultants via the subresultant polynomial remainder sequence.
//!
//! Rational inputs are split into a rational content and a primitive integer
//! polynomial; the remainder sequence then runs entirely over ℤ with exact
//! divisions, so intermediate coefficients stay bounded by the subresultant
//! determinants instead of blowing up as in naive Euclid over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, UniPoly};
use crate::error::{Error, Result};

/// `Res(a, b)`. For monic `a` with roots `α_1..α_m` this is `∏ b(α_i)`; in
/// general it equals `lc(a)^deg(b) · ∏ b(α_i)`.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Result<Rational> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Err(Error::ZeroResultantInput);
    };
    let (ca, pa) = primitive_part(a);
    let (cb, pb) = primitive_part(b);
    let scale = ca.pow(db as i64) * cb.pow(da as i64);
    Ok(scale * Rational::from_integer(subresultant(pa, pb)))
}

/// Writes `p = content · primitive` with `primitive ∈ ℤ[x]` having coprime
/// coefficients and positive leading coefficient.
fn primitive_part(p: &UniPoly) -> (Rational, Vec<BigInt>) {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c.numer() * &lcm) / c.denom())
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if ints.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    let prim = ints.iter().map(|c| c / &g).collect();
    (Rational::new(g, lcm), prim)
}

fn deg(p: &[BigInt]) -> usize {
    p.len() - 1
}

fn lc(p: &[BigInt]) -> &BigInt {
    p.last().expect("nonzero polynomial")
}

fn pow(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Pseudo-remainder `lc(b)^(deg a − deg b + 1) · a mod b`, exact over ℤ.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = deg(b);
    let lb = lc(b);
    let mut r = a.to_vec();
    let mut k = deg(a) as isize - db as isize;
    let mut steps = 0usize;
    while k >= 0 && r.len() > db {
        let top = r.len() - 1;
        let lr = r[top].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[top - db + j] -= &lr * bj;
        }
        r = trim(r);
        steps += 1;
        k = r.len() as isize - 1 - db as isize;
    }
    // Top up to the full power lc(b)^(δ+1) when leading terms vanished early.
    let total = deg(a) - db + 1;
    if steps < total {
        let f = pow(lb, total - steps);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Collins–Brown subresultant resultant of two nonzero integer polynomials.
fn subresultant(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> BigInt {
    let mut sign = BigInt::one();
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        return sign * pow(&b[0], deg(&a));
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (deg(&a), deg(&b));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        let divisor = &g * pow(&h, delta);
        a = b;
        b = r.into_iter().map(|c| c / &divisor).collect();
        g = lc(&a).clone();
        if delta > 0 {
            h = pow(&g, delta) / pow(&h, delta - 1);
        }
        if deg(&b) == 0 {
            let da = deg(&a);
            let value = pow(&b[0], da) / pow(&h, da - 1);
            return sign * value;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c, 't')
    }

    #[test]
    fn roots_plus_minus_one() {
        // (t² − 1, t − 2) → (1 − 2)(−1 − 2) = 3
        assert_eq!(resultant(&t(&[-1, 0, 1]), &t(&[-2, 1])).unwrap(), Rational::from(3));
    }

    #[test]
    fn single_root_evaluates() {
        let b = t(&[7, -3, 0, 2]);
        let c = Rational::new(5, 3);
        let a = UniPoly::new(vec![-c.clone(), Rational::one()], 't');
        assert_eq!(resultant(&a, &b).unwrap(), b.eval(&c));
    }

    #[test]
    fn double_root_minus_half() {
        let w3 = UniPoly::new(vec![Rational::new(1, 4), Rational::one(), Rational::one()], 't');
        assert_eq!(resultant(&w3, &t(&[1, -1])).unwrap(), Rational::new(9, 4));
    }

    #[test]
    fn constant_arguments() {
        assert_eq!(resultant(&t(&[1, 2, 1]), &t(&[3])).unwrap(), Rational::from(9));
        assert_eq!(resultant(&t(&[3]), &t(&[1, 2, 1])).unwrap(), Rational::from(9));
        assert_eq!(resultant(&t(&[5]), &t(&[7])).unwrap(), Rational::one());
    }

    #[test]
    fn common_root_gives_zero() {
        assert!(resultant(&t(&[-1, 0, 1]), &t(&[1, 1])).unwrap().is_zero());
    }

    #[test]
    fn zero_input_rejected() {
        assert_eq!(
            resultant(&UniPoly::zero_in('t'), &t(&[1])),
            Err(Error::ZeroResultantInput)
        );
    }

    #[test]
    fn swap_sign_rule() {
        // Res(b, a) = (−1)^(deg a · deg b) Res(a, b)
        let a = t(&[1, 2, 0, 1]);
        let b = t(&[-3, 0, 1, 0, 0, 2]);
        let ab = resultant(&a, &b).unwrap();
        let ba = resultant(&b, &a).unwrap();
        assert_eq!(ab, -ba);
    }
}
