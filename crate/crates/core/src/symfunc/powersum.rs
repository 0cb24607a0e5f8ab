use std::collections::BTreeMap;
use std::fmt;

use crate::exactcore::{Rational, Ring, UniPoly};

/// Coefficient ring ℚ[z]; `z` stands for the level-dependent variable count
/// and is specialized to `n − 1` at evaluation time.
pub type CoeffPoly = UniPoly;

pub const Z: char = 'z';

/// `z` as a coefficient polynomial.
pub fn z_poly() -> CoeffPoly {
    UniPoly::x(Z)
}

pub fn coeff_const(c: Rational) -> CoeffPoly {
    UniPoly::constant(c, Z)
}

/// Exponent vector `(e_1, e_2, …)` of a monomial `v_1^e_1 v_2^e_2 ⋯`, with
/// trailing zeros removed so that equal monomials compare equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct GenMonomial(Vec<u32>);

impl GenMonomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        GenMonomial(exps)
    }

    pub fn one() -> Self {
        GenMonomial(Vec::new())
    }

    /// The single generator `v_r` (`r ≥ 1`).
    pub fn generator(r: usize) -> Self {
        let mut exps = vec![0; r];
        exps[r - 1] = 1;
        GenMonomial(exps)
    }

    /// Monomial `v_{λ_1} v_{λ_2} ⋯` of a partition.
    pub fn from_partition(parts: &[u32]) -> Self {
        let max = parts.iter().copied().max().unwrap_or(0) as usize;
        let mut exps = vec![0; max];
        for &p in parts {
            exps[p as usize - 1] += 1;
        }
        GenMonomial::new(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, r: usize) -> u32 {
        self.0.get(r - 1).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ r·e_r`.
    pub fn weighted_degree(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &e)| (i + 1) * e as usize)
            .sum()
    }

    /// Parts listed in weakly decreasing order.
    pub fn partition(&self) -> Vec<u32> {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i as u32 + 1, e as usize));
        }
        parts
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        GenMonomial::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
                .collect(),
        )
    }

    fn render(&self, prefix: &str) -> String {
        let mut factors = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("{prefix}{}", i + 1)),
                _ => factors.push(format!("{prefix}{}^{e}", i + 1)),
            }
        }
        factors.join("*")
    }
}

/// Polynomial `Ψ ∈ ℚ[z][v_1, v_2, …]` in abstract power-sum generators.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// polynomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PowerSumExpr {
    terms: BTreeMap<GenMonomial, CoeffPoly>,
}

impl PowerSumExpr {
    pub fn zero() -> Self {
        PowerSumExpr::default()
    }

    pub fn constant(c: CoeffPoly) -> Self {
        PowerSumExpr::term(GenMonomial::one(), c)
    }

    pub fn rational(c: Rational) -> Self {
        PowerSumExpr::constant(coeff_const(c))
    }

    /// The coefficient indeterminate `z`.
    pub fn z() -> Self {
        PowerSumExpr::constant(z_poly())
    }

    /// The generator `v_r` (`r ≥ 1`).
    pub fn generator(r: usize) -> Self {
        PowerSumExpr::term(GenMonomial::generator(r), coeff_const(Rational::one()))
    }

    pub fn term(mono: GenMonomial, coeff: CoeffPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff.with_var(Z));
        }
        PowerSumExpr { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (GenMonomial, CoeffPoly)>) -> Self {
        let mut out = PowerSumExpr::zero();
        for (m, c) in iter {
            out.add_term(m, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GenMonomial, &CoeffPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &GenMonomial) -> CoeffPoly {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| UniPoly::zero_in(Z))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mono: GenMonomial, c: &CoeffPoly) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&mono) {
            Some(prev) => prev + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&mono);
        } else {
            self.terms.insert(mono, sum.with_var(Z));
        }
    }

    /// Largest weighted degree `Σ r·e_r` over the monomials; 0 for constants
    /// and for the zero expression.
    pub fn weighted_degree(&self) -> usize {
        self.terms.keys().map(GenMonomial::weighted_degree).max().unwrap_or(0)
    }

    /// Largest power of `z` appearing in a coefficient.
    pub fn z_degree(&self) -> usize {
        self.terms.values().filter_map(UniPoly::degree).max().unwrap_or(0)
    }

    /// Largest generator index `r` with `v_r` present.
    pub fn max_generator(&self) -> usize {
        self.terms.keys().map(|m| m.exponents().len()).max().unwrap_or(0)
    }

    /// Multiplies each monomial's coefficient by `∏_r weight(r)^{e_r}`.
    pub fn reweighted(&self, weight: impl Fn(usize) -> Rational) -> Self {
        PowerSumExpr::from_terms(self.terms.iter().map(|(m, c)| {
            let factor: Rational = m
                .exponents()
                .iter()
                .enumerate()
                .map(|(i, &e)| weight(i + 1).pow(e as i64))
                .product();
            (m.clone(), c.scale(&factor))
        }))
    }

    /// Evaluates in any ring containing ℚ, with `v_r := gens[r−1]` and
    /// `z := z_value`.
    pub fn evaluate<R: Ring>(&self, gens: &[R], z_value: &R) -> R {
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut term = c.eval_in(z_value);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.mul_ref(&gens[i].pow_u(e));
                }
            }
            acc = acc.add_ref(&term);
        }
        acc
    }

    /// Writes the expression with generators `{prefix}1, {prefix}2, …`.
    pub fn render(&self, prefix: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            b.weighted_degree()
                .cmp(&a.weighted_degree())
                .then_with(|| b.0.len().cmp(&a.0.len()))
                .then_with(|| b.0.iter().rev().cmp(a.0.iter().rev()))
        });
        let mut out = String::new();
        for (i, (mono, coeff)) in ordered.into_iter().enumerate() {
            let mono_s = mono.render(prefix);
            let (negative, body) = render_coeff_times(coeff, &mono_s);
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

/// Splits `coeff·mono` into a sign and a body with a nonnegative leading factor.
fn render_coeff_times(coeff: &CoeffPoly, mono: &str) -> (bool, String) {
    let nonzero: Vec<_> = coeff
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    if let [(k, c)] = nonzero.as_slice() {
        let mut factors = Vec::new();
        let mag = c.abs();
        if !mag.is_one() || (*k == 0 && mono.is_empty()) {
            factors.push(mag.to_string());
        }
        match *k {
            0 => {}
            1 => factors.push("z".to_string()),
            k => factors.push(format!("z^{k}")),
        }
        if !mono.is_empty() {
            factors.push(mono.to_string());
        }
        return (c.is_negative(), factors.join("*"));
    }
    let poly = format!("({coeff})");
    if mono.is_empty() {
        (false, poly)
    } else {
        (false, format!("{poly}*{mono}"))
    }
}

impl fmt::Display for PowerSumExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("p"))
    }
}

impl fmt::Debug for PowerSumExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSumExpr({self})")
    }
}

impl Ring for PowerSumExpr {
    fn zero() -> Self {
        PowerSumExpr::zero()
    }

    fn one() -> Self {
        PowerSumExpr::rational(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = PowerSumExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        PowerSumExpr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return PowerSumExpr::zero();
        }
        PowerSumExpr {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.scale(c)))
                .collect(),
        }
    }

    fn unit_inverse(&self) -> Option<Self> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && m.is_one() => c
                .unit_inverse()
                .map(PowerSumExpr::constant),
            _ => None,
        }
    }

    fn from_rational(c: &Rational) -> Self {
        PowerSumExpr::rational(c.clone())
    }
}
