//! Independent ground truth.
//!
//! Two routes that share no code with the parity-binomial formulas: a
//! high-precision float evaluation at the literal points `cos(2πk/n)`, and
//! exact power sums from the coefficients of `W_n` via Newton's identities.

use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactcore::Rational;
use crate::invariants::{punctured_min_poly, serialize_display};
use crate::rigidity::{general_eval, AdmissibleFormula};

pub const DEFAULT_PRECISION: usize = 256;
pub const DEFAULT_TOLERANCE: &str = "1e-20";
const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_BITS: usize = 64;

fn consts() -> Result<Consts> {
    Consts::new().map_err(|e| Error::Internal(format!("float constants: {e:?}")))
}

fn int(v: i64, p: usize) -> BigFloat {
    BigFloat::from_i64(v, p)
}

/// Rounds an exact rational to `p` bits.
pub fn rational_to_float(q: &Rational, p: usize) -> Result<BigFloat> {
    let mut cc = consts()?;
    let wp = p + GUARD_BITS;
    let num = BigFloat::parse(&q.numer().to_string(), Radix::Dec, wp, RM, &mut cc);
    let den = BigFloat::parse(&q.denom().to_string(), Radix::Dec, wp, RM, &mut cc);
    Ok(num.div(&den, p, RM))
}

/// Parses a decimal such as `1e-20`.
pub fn parse_decimal(s: &str, p: usize) -> Result<BigFloat> {
    let mut cc = consts()?;
    let x = BigFloat::parse(s.trim(), Radix::Dec, p, RM, &mut cc);
    if x.is_nan() {
        return Err(Error::Semantic(format!("not a decimal number: {s:?}")));
    }
    Ok(x)
}

/// Scientific decimal rendering with at most `digits` significant digits
/// (truncated, not rounded).
pub fn to_decimal(x: &BigFloat, digits: usize) -> String {
    let Ok(mut cc) = consts() else {
        return "NaN".to_string();
    };
    let full = match x.format(Radix::Dec, RM, &mut cc) {
        Ok(s) => s,
        Err(_) => return "NaN".to_string(),
    };
    let (mantissa, exponent) = match full.split_once('e') {
        Some((m, e)) => (m, Some(e)),
        None => (full.as_str(), None),
    };
    let (sign, body) = mantissa.strip_prefix('-').map_or(("", mantissa), |b| ("-", b));
    let mut kept = String::new();
    let mut count = 0;
    for ch in body.chars() {
        if ch.is_ascii_digit() {
            if count == digits {
                break;
            }
            count += 1;
        }
        kept.push(ch);
    }
    let kept = if kept.contains('.') {
        kept.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        kept
    };
    match exponent {
        Some(e) if e != "+0" && e != "0" => format!("{sign}{kept}e{e}"),
        _ => format!("{sign}{kept}"),
    }
}

/// The `n − 1` points `cos(2πk/n)` at a working precision in bits.
#[derive(Clone, Debug)]
pub struct CosineConfig {
    pub level: u64,
    pub precision: usize,
    pub points: Vec<BigFloat>,
}

/// Points are `cos` of a high-precision `2πk/n`, computed with guard bits.
pub fn cosine_points(n: u64, precision: usize) -> Result<CosineConfig> {
    if n < 2 {
        return Err(Error::LevelTooSmall { n, min: 2 });
    }
    let mut cc = consts()?;
    let wp = precision + GUARD_BITS;
    let two_pi_over_n = cc.pi(wp, RM).mul(&int(2, wp), wp, RM).div(&int(n as i64, wp), wp, RM);
    let points = (1..n)
        .map(|k| {
            let angle = two_pi_over_n.mul(&int(k as i64, wp), wp, RM);
            let mut c = angle.cos(wp, RM, &mut cc);
            c.set_precision(precision, RM).expect("precision within limits");
            c
        })
        .collect();
    Ok(CosineConfig { level: n, precision, points })
}

fn sum_powers<'a>(xs: impl Iterator<Item = &'a BigFloat>, h: u64, p: usize) -> BigFloat {
    xs.fold(int(0, p), |acc, x| acc.add(&x.powi(h as usize, p, RM), p, RM))
}

/// `p_j = Σ_k α_{k,n}^j` for `j = 1..=d`.
pub fn float_power_sums(cfg: &CosineConfig, d: usize) -> Vec<BigFloat> {
    (1..=d as u64).map(|j| sum_powers(cfg.points.iter(), j, cfg.precision)).collect()
}

/// `Σ_{k=0}^{n−1} cos^h(2πk/n)` and `Σ_{k=0}^{n−1} sin^h(2πk/n)` by direct summation.
pub fn direct_trig_power_sums(n: u64, h: u64, precision: usize) -> Result<(BigFloat, BigFloat)> {
    if n < 1 {
        return Err(Error::LevelTooSmall { n, min: 1 });
    }
    let mut cc = consts()?;
    let wp = precision + GUARD_BITS;
    let step = cc.pi(wp, RM).mul(&int(2, wp), wp, RM).div(&int(n as i64, wp), wp, RM);
    let mut cos_sum = int(0, wp);
    let mut sin_sum = int(0, wp);
    for k in 0..n {
        let angle = step.mul(&int(k as i64, wp), wp, RM);
        let c = angle.cos(wp, RM, &mut cc).powi(h as usize, wp, RM);
        let s = angle.sin(wp, RM, &mut cc).powi(h as usize, wp, RM);
        cos_sum = cos_sum.add(&c, wp, RM);
        sin_sum = sin_sum.add(&s, wp, RM);
    }
    Ok((cos_sum, sin_sum))
}

/// Cosine-point evaluation from the literal points, valid at every `n ≥ 2`.
pub fn float_eval(f: &AdmissibleFormula, n: u64, precision: usize) -> Result<BigFloat> {
    let cfg = cosine_points(n, precision)?;
    let p = precision;
    let gens = float_power_sums(&cfg, f.psi_star.max_generator());
    let z = Rational::from(n - 1);
    let mut value = int(0, p);
    for (mono, coeff) in f.psi_star.terms() {
        let mut term = rational_to_float(&coeff.eval(&z), p)?;
        for (i, &e) in mono.exponents().iter().enumerate() {
            if e > 0 {
                term = term.mul(&gens[i].powi(e as usize, p, RM), p, RM);
            }
        }
        value = value.add(&term, p, RM);
    }
    for (q, m) in &f.products.factors {
        let spec = q.specialize(&z);
        let coeffs = spec
            .coeffs()
            .iter()
            .map(|c| rational_to_float(c, p))
            .collect::<Result<Vec<_>>>()?;
        let mut prod = int(1, p);
        for x in &cfg.points {
            let at_x = coeffs
                .iter()
                .rev()
                .fold(int(0, p), |acc, c| acc.mul(x, p, RM).add(c, p, RM));
            prod = prod.mul(&at_x, p, RM);
        }
        value = value.mul(&prod.powi(*m as usize, p, RM), p, RM);
    }
    Ok(value)
}

/// Power sums of the roots of `W_n` from its coefficients by Newton's
/// identities.
pub fn exact_newton_powersums(n: u64, d: usize) -> Result<Vec<Rational>> {
    let w = punctured_min_poly(n)?.poly;
    let deg = n as usize - 1;
    // W = Σ_k (−1)^k e_k t^{deg−k}
    let e: Vec<Rational> = (0..=deg)
        .map(|k| {
            let c = w.coeff(deg - k);
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    let e_at = |k: usize| e.get(k).cloned().unwrap_or_else(Rational::zero);
    let mut p: Vec<Rational> = Vec::with_capacity(d);
    for j in 1..=d {
        let mut acc = Rational::from(j) * e_at(j);
        if j % 2 == 0 {
            acc = -acc;
        }
        for i in 1..j {
            let term = e_at(i) * &p[j - i - 1];
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        p.push(acc);
    }
    Ok(p)
}

/// `|x − q|` at precision `p`.
pub fn residual(x: &BigFloat, q: &Rational, p: usize) -> Result<BigFloat> {
    Ok(x.sub(&rational_to_float(q, p)?, p, RM).abs())
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub quantity: String,
    #[serde(serialize_with = "crate::invariants::serialize_display")]
    pub level: u64,
    #[serde(serialize_with = "serialize_display")]
    pub exact: Rational,
    pub float_value: String,
    pub residual: String,
    pub tolerance: String,
    #[serde(serialize_with = "crate::invariants::serialize_display")]
    pub precision_bits: usize,
    pub pass: bool,
}

/// Float evaluation against the exact value (stable or general regime).
pub fn cross_check(
    f: &AdmissibleFormula,
    n: u64,
    tolerance: &str,
    precision: usize,
) -> Result<CheckReport> {
    let exact = general_eval(f, n)?.value;
    let x = float_eval(f, n, precision)?;
    let res = residual(&x, &exact, precision)?;
    let tol = parse_decimal(tolerance, precision)?;
    let pass = matches!(res.partial_cmp(&tol), Some(Ordering::Less | Ordering::Equal));
    Ok(CheckReport {
        quantity: f.render(),
        level: n,
        exact,
        float_value: to_decimal(&x, 40),
        residual: to_decimal(&res, 6),
        tolerance: tolerance.to_string(),
        precision_bits: precision,
        pass,
    })
}
