use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Rational, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial over ℚ; `coeffs[k]` is the coefficient of `x^k`.
///
/// Trailing zeros are always stripped, so the zero polynomial has no
/// coefficients and `degree()` returns `None`. The variable name is only used
/// for rendering and does not take part in equality.
#[derive(Clone)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
    var: char,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly {}

impl UniPoly {
    pub fn new(coeffs: Vec<Rational>, var: char) -> Self {
        let mut p = UniPoly { coeffs, var };
        p.normalize();
        p
    }

    pub fn from_ints(coeffs: &[i64], var: char) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rational::from(c)).collect(), var)
    }

    pub fn zero_in(var: char) -> Self {
        UniPoly { coeffs: Vec::new(), var }
    }

    pub fn constant(c: Rational, var: char) -> Self {
        UniPoly::new(vec![c], var)
    }

    /// The monomial `x`.
    pub fn x(var: char) -> Self {
        UniPoly::from_ints(&[0, 1], var)
    }

    /// `c·x^k`.
    pub fn monomial(c: Rational, k: usize, var: char) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::new(coeffs, var)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Rational::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Rational::is_one)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at an element of any ring containing ℚ.
    pub fn eval_in<R: Ring>(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul_ref(x).add_ref(&R::from_rational(c)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect(), self.var)
    }

    /// Coefficients reversed with respect to degree `n`: `x^n · p(1/x)`.
    /// Requires `n >= degree`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[n - k] = c.clone();
        }
        UniPoly::new(coeffs, self.var)
    }

    /// Euclidean division: `self = divisor·q + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let db = divisor.degree().ok_or(Error::ZeroDivisor)?;
        let lead_inv = divisor.leading_coeff().recip().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(da) = self.degree().filter(|&da| da >= db) else {
            return Ok((UniPoly::zero_in(self.var), self.clone()));
        };
        let mut quot = vec![Rational::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = &rem[k + db] * &lead_inv;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &(&c * b);
                }
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((UniPoly::new(quot, self.var), UniPoly::new(rem, self.var)))
    }

    pub fn pow(&self, k: u32) -> Self {
        self.pow_u(k)
    }

    fn add_impl(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        UniPoly::new(coeffs, self.var)
    }

    fn sub_impl(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        UniPoly::new(coeffs, self.var)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero_in(self.var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        UniPoly::new(coeffs, self.var)
    }
}

impl Ring for UniPoly {
    fn zero() -> Self {
        UniPoly::zero_in('x')
    }
    fn one() -> Self {
        UniPoly::constant(Rational::one(), 'x')
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add_impl(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub_impl(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul_impl(other)
    }
    fn neg_ref(&self) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
    fn scale(&self, c: &Rational) -> Self {
        UniPoly::scale(self, c)
    }
    fn unit_inverse(&self) -> Option<Self> {
        match self.coeffs.as_slice() {
            [c] => c.recip().map(|inv| UniPoly::constant(inv, self.var)),
            _ => None,
        }
    }
    fn from_rational(c: &Rational) -> Self {
        UniPoly::constant(c.clone(), 'x')
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.add_impl(rhs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self.sub_impl(rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        self.neg_ref()
    }
}

/// Writes `c_k*x^k + ... + c_0`, highest degree first. Unit coefficients are
/// left implicit; the output is accepted back by the formula parser.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{}", self.var)?,
                (1, false) => write!(f, "{mag}*{}", self.var)?,
                (_, true) => write!(f, "{}^{k}", self.var)?,
                (_, false) => write!(f, "{mag}*{}^{k}", self.var)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}
