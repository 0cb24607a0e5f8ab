use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::powersum::{CoeffPoly, Z};
use crate::error::{Error, Result};
use crate::exactcore::{Rational, UniPoly};

/// Integer partition, parts weakly decreasing and positive.
pub type Partition = Vec<u32>;

/// Symmetric polynomial in `m` variables over ℚ[z], in the monomial-symmetric
/// basis: the key `λ` stands for the orbit sum `m_λ(x_1..x_m)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SymMonomialPoly {
    nvars: usize,
    terms: BTreeMap<Partition, CoeffPoly>,
}

pub fn is_partition(parts: &[u32]) -> bool {
    parts.iter().all(|&p| p >= 1) && parts.windows(2).all(|w| w[0] >= w[1])
}

fn multiplicity(parts: &[u32], value: u32) -> usize {
    parts.iter().filter(|&&p| p == value).count()
}

fn factorial(k: usize) -> Rational {
    (1..=k).map(Rational::from).product()
}

/// Number of distinct monomials in the orbit of `λ` under `S_m`.
fn orbit_size(parts: &[u32], m: usize) -> Rational {
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for &p in parts {
        *counts.entry(p).or_default() += 1;
    }
    let denom: Rational = counts
        .values()
        .map(|&c| factorial(c))
        .product::<Rational>()
        * factorial(m - parts.len());
    factorial(m) / denom
}

/// Lexicographic next permutation; false once the sequence wraps around.
fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Product of two orbit sums, `m_λ · m_μ = Σ_ν c_ν m_ν` in `m` variables.
///
/// Fixing one representative of `λ` and running over every distinct
/// arrangement of `μ` counts `N_ν` hits per orbit `ν`; by symmetry
/// `c_ν = |O(λ)| · N_ν / |O(ν)|`.
fn orbit_product(lambda: &[u32], mu: &[u32], m: usize) -> BTreeMap<Partition, Rational> {
    let mut base = lambda.to_vec();
    base.resize(m, 0);
    let mut arrangement = mu.to_vec();
    arrangement.resize(m, 0);
    arrangement.sort_unstable();
    let mut hits: BTreeMap<Partition, u64> = BTreeMap::new();
    loop {
        let mut nu: Vec<u32> = base.iter().zip(&arrangement).map(|(a, b)| a + b).collect();
        nu.sort_unstable_by(|a, b| b.cmp(a));
        nu.retain(|&p| p > 0);
        *hits.entry(nu).or_default() += 1;
        if !next_permutation(&mut arrangement) {
            break;
        }
    }
    let lambda_orbit = orbit_size(lambda, m);
    hits.into_iter()
        .map(|(nu, count)| {
            let c = &lambda_orbit * &Rational::from(count) / orbit_size(&nu, m);
            (nu, c)
        })
        .collect()
}

impl SymMonomialPoly {
    pub fn zero(nvars: usize) -> Self {
        SymMonomialPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = SymMonomialPoly::zero(nvars);
        p.add_term(Vec::new(), &UniPoly::constant(Rational::one(), Z));
        p
    }

    /// Builds from partition-indexed coefficients, rejecting keys that are not
    /// partitions with at most `nvars` parts.
    pub fn from_partitions(
        nvars: usize,
        iter: impl IntoIterator<Item = (Partition, CoeffPoly)>,
    ) -> Result<Self> {
        let mut p = SymMonomialPoly::zero(nvars);
        for (lambda, c) in iter {
            if !is_partition(&lambda) {
                return Err(Error::NotSymmetric(format!(
                    "{lambda:?} is not a weakly decreasing partition"
                )));
            }
            if lambda.len() > nvars {
                return Err(Error::NotSymmetric(format!(
                    "{lambda:?} has more than {nvars} parts"
                )));
            }
            p.add_term(lambda, &c);
        }
        Ok(p)
    }

    /// Builds from raw monomials `x^α` (exponent vectors of length `nvars`),
    /// checking that every permutation of each exponent vector carries the
    /// same coefficient.
    pub fn from_monomials(
        nvars: usize,
        iter: impl IntoIterator<Item = (Vec<u32>, CoeffPoly)>,
    ) -> Result<Self> {
        let mut raw: BTreeMap<Vec<u32>, CoeffPoly> = BTreeMap::new();
        for (mut alpha, c) in iter {
            if alpha.len() > nvars && alpha[nvars..].iter().any(|&e| e > 0) {
                return Err(Error::NotSymmetric(format!(
                    "monomial {alpha:?} uses more than {nvars} variables"
                )));
            }
            alpha.resize(nvars, 0);
            let entry = raw.entry(alpha).or_insert_with(|| UniPoly::zero_in(Z));
            *entry = (&*entry + &c).with_var(Z);
        }
        raw.retain(|_, c| !c.is_zero());
        let mut out = SymMonomialPoly::zero(nvars);
        let mut seen: BTreeMap<Partition, CoeffPoly> = BTreeMap::new();
        for (alpha, c) in &raw {
            let mut lambda = alpha.clone();
            lambda.sort_unstable_by(|a, b| b.cmp(a));
            lambda.retain(|&p| p > 0);
            match seen.get(&lambda) {
                Some(prev) if prev != c => {
                    return Err(Error::NotSymmetric(format!(
                        "x^{alpha:?} has coefficient {c}, but its orbit {lambda:?} has {prev}"
                    )));
                }
                Some(_) => {}
                None => {
                    seen.insert(lambda.clone(), c.clone());
                }
            }
        }
        for (lambda, c) in seen {
            let orbit = orbit_size(&lambda, nvars);
            let present = raw
                .keys()
                .filter(|alpha| {
                    let mut s = (*alpha).clone();
                    s.sort_unstable_by(|a, b| b.cmp(a));
                    s.retain(|&p| p > 0);
                    s == lambda
                })
                .count();
            if Rational::from(present) != orbit {
                return Err(Error::NotSymmetric(format!(
                    "orbit {lambda:?} is incomplete: {present} of {orbit} monomials present"
                )));
            }
            out.add_term(lambda, &c);
        }
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &CoeffPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &[u32]) -> CoeffPoly {
        self.terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(|| UniPoly::zero_in(Z))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `|λ|` present; 0 for constants and zero.
    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|l| l.iter().map(|&p| p as usize).sum())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, lambda: Partition, c: &CoeffPoly) {
        if c.is_zero() || lambda.len() > self.nvars {
            return;
        }
        let sum = match self.terms.get(&lambda) {
            Some(prev) => prev + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&lambda);
        } else {
            self.terms.insert(lambda, sum.with_var(Z));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.scale_poly(&UniPoly::constant(c.clone(), Z))
    }

    pub fn scale_poly(&self, c: &CoeffPoly) -> Self {
        let mut out = SymMonomialPoly::zero(self.nvars);
        for (l, a) in &self.terms {
            out.add_term(l.clone(), &(a * c));
        }
        out
    }

    /// Multiplication by the power sum `p_r = m_(r)`.
    ///
    /// Each `μ` arises from `λ` by adding `r` to one part of value `w` (or
    /// appending a new part `r`), and its coefficient is the multiplicity of
    /// the new part value `w + r` in `μ`.
    pub fn mul_power_sum(&self, r: u32) -> Self {
        let mut out = SymMonomialPoly::zero(self.nvars);
        for (lambda, c) in &self.terms {
            let mut values: Vec<u32> = lambda.clone();
            values.dedup();
            for w in values {
                let pos = lambda.iter().position(|&p| p == w).unwrap();
                let mut mu = lambda.clone();
                mu[pos] += r;
                mu.sort_unstable_by(|a, b| b.cmp(a));
                let k = multiplicity(&mu, w + r);
                out.add_term(mu, &c.scale(&Rational::from(k)));
            }
            if lambda.len() < self.nvars {
                let mut mu = lambda.clone();
                mu.push(r);
                mu.sort_unstable_by(|a, b| b.cmp(a));
                let k = multiplicity(&mu, r);
                out.add_term(mu, &c.scale(&Rational::from(k)));
            }
        }
        out
    }

    /// General product; both operands must have the same variable count.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable counts differ");
        let mut out = SymMonomialPoly::zero(self.nvars);
        for (la, ca) in &self.terms {
            for (lb, cb) in &other.terms {
                let cc = ca * cb;
                for (nu, k) in orbit_product(la, lb, self.nvars) {
                    out.add_term(nu, &cc.scale(&k));
                }
            }
        }
        out
    }

    /// Sets the variables beyond the first `m` to zero.
    pub fn restrict(&self, m: usize) -> Self {
        let mut out = SymMonomialPoly::zero(m);
        for (l, c) in &self.terms {
            if l.len() <= m {
                out.add_term(l.clone(), c);
            }
        }
        out
    }

    /// Evaluates at explicit rational points with `z := z_value`.
    pub fn eval_at(&self, xs: &[Rational], z_value: &Rational) -> Rational {
        assert_eq!(xs.len(), self.nvars, "point dimension");
        let mut total = Rational::zero();
        for (lambda, c) in &self.terms {
            let mut alpha = lambda.clone();
            alpha.resize(self.nvars, 0);
            alpha.sort_unstable();
            let mut orbit_sum = Rational::zero();
            loop {
                let term: Rational = xs
                    .iter()
                    .zip(&alpha)
                    .map(|(x, &e)| x.pow(e as i64))
                    .product();
                orbit_sum += &term;
                if !next_permutation(&mut alpha) {
                    break;
                }
            }
            total += &(c.eval(z_value) * orbit_sum);
        }
        total
    }
}

impl fmt::Display for SymMonomialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, c)| {
                let idx: Vec<String> = l.iter().map(u32::to_string).collect();
                format!("({c})*m[{}]", idx.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SymMonomialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymMonomialPoly<{}>({self})", self.nvars)
    }
}
