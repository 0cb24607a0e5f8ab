use std::fmt;

use super::{Rational, Ring, UniPoly};
use crate::error::{Error, Result};

/// Formal power series truncated after `t^order`.
///
/// Coefficients are stored for exponents `0..=order`. Binary operations take
/// the smaller of the two orders.
#[derive(Clone, PartialEq)]
pub struct Series<R: Ring = Rational> {
    coeffs: Vec<R>,
    order: usize,
}

impl<R: Ring> Series<R> {
    /// Builds a series from leading coefficients; missing ones are zero and
    /// extra ones beyond `order` are dropped.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        Series { coeffs, order }
    }

    pub fn zero(order: usize) -> Self {
        Series::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::new(vec![R::one()], order)
    }

    /// The single term `c·t^k`.
    pub fn monomial(c: R, k: usize, order: usize) -> Self {
        let mut coeffs = vec![R::zero(); order + 1];
        if k <= order {
            coeffs[k] = c;
        }
        Series { coeffs, order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn constant_term(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series::new(self.coeffs.clone(), order.min(self.order))
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k].add_ref(&other.coeffs[k]))
            .collect();
        Series { coeffs, order }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k].sub_ref(&other.coeffs[k]))
            .collect();
        Series { coeffs, order }
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(Ring::neg_ref).collect(),
            order: self.order,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
            order: self.order,
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut coeffs = vec![R::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] = coeffs[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Series { coeffs, order }
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .unit_inverse()
            .ok_or_else(|| Error::NonInvertibleSeries {
                constant: self.coeffs[0].to_string(),
            })?;
        let mut out: Vec<R> = Vec::with_capacity(self.order + 1);
        out.push(c0.clone());
        for k in 1..=self.order {
            let mut acc = R::zero();
            for j in 1..=k {
                acc = acc.add_ref(&self.coeffs[j].mul_ref(&out[k - j]));
            }
            out.push(acc.mul_ref(&c0).neg_ref());
        }
        Ok(Series { coeffs: out, order: self.order })
    }

    pub fn derivative(&self) -> Self {
        let coeffs: Vec<R> = (1..=self.order)
            .map(|k| self.coeffs[k].scale(&Rational::from(k)))
            .collect();
        Series::new(coeffs, self.order.saturating_sub(1))
    }

    /// Term-by-term antiderivative with zero constant term; the order grows by one.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![R::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&Rational::new(1, k as i64 + 1))),
        );
        Series { coeffs, order: self.order + 1 }
    }

    /// `log(a)` for constant term 1, as `∫ a'/a`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SeriesDomain {
                op: "log",
                required: "1",
                constant: self.coeffs[0].to_string(),
            });
        }
        if self.order == 0 {
            return Ok(Series::zero(0));
        }
        let quotient = self.derivative().mul(&self.inv()?.truncate(self.order - 1));
        Ok(quotient.integral())
    }

    /// `exp(a)` for constant term 0, via `k·e_k = Σ_{j=1}^{k} j·a_j·e_{k−j}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::SeriesDomain {
                op: "exp",
                required: "0",
                constant: self.coeffs[0].to_string(),
            });
        }
        let mut out: Vec<R> = Vec::with_capacity(self.order + 1);
        out.push(R::one());
        for k in 1..=self.order {
            let mut acc = R::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let term = self.coeffs[j].mul_ref(&out[k - j]).scale(&Rational::from(j));
                acc = acc.add_ref(&term);
            }
            out.push(acc.scale(&Rational::new(1, k as i64)));
        }
        Ok(Series { coeffs: out, order: self.order })
    }

    /// Integer power; negative exponents require constant term 1.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 {
            if !self.coeffs[0].is_one() {
                return Err(Error::SeriesDomain {
                    op: "pow",
                    required: "1",
                    constant: self.coeffs[0].to_string(),
                });
            }
            self.inv()?
        } else {
            self.clone()
        };
        let mut acc = Series::one(self.order);
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }
}

impl Series<Rational> {
    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Series::new(coeffs.iter().map(|&c| Rational::from(c)).collect(), order)
    }

    pub fn from_poly(p: &UniPoly, order: usize) -> Self {
        Series::new(p.coeffs().to_vec(), order)
    }

    /// `1/(1−t) = Σ t^k`.
    pub fn geometric(order: usize) -> Self {
        Series::new(vec![Rational::one(); order + 1], order)
    }
}

impl<R: Ring> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

impl<R: Ring> fmt::Debug for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({self})")
    }
}
