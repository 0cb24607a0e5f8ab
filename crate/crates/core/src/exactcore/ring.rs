use std::fmt;

use super::Rational;

/// Commutative ring containing ℚ, as needed by the generic series and
/// substitution code.
///
/// Methods take references and return owned values; the `_ref` suffix keeps
/// them from colliding with `std::ops` methods on types that implement both.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplication by a rational scalar.
    fn scale(&self, c: &Rational) -> Self;
    /// Multiplicative inverse when `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;

    fn from_rational(c: &Rational) -> Self {
        Self::one().scale(c)
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow_u(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.recip()
    }
    fn from_rational(c: &Rational) -> Self {
        c.clone()
    }
}
