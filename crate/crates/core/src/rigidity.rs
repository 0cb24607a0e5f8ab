//! Admissible formulas and their cosine-point evaluation.
//!
//! A formula is a stable presentation `Ψ*` times optional unit-normalized
//! product factors. In the stable range `n ≥ d + 2` it evaluates through the
//! rescaled `Φ(u) = Ψ*(u_1/2, …, u_d/2^d)` at the punctured power sums; in the
//! polynomial case it collapses to a single polynomial in `n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactcore::{Rational, Ring, UniPoly};
use crate::invariants::{
    multiplicative_invariant, punctured_power_sum, punctured_power_sum_stable, QPoly,
};
use crate::symfunc::PowerSumExpr;

/// Product factors `∏ Q_i^{m_i}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProductDatum {
    pub factors: Vec<(QPoly, u32)>,
}

impl ProductDatum {
    pub fn none() -> Self {
        ProductDatum::default()
    }

    pub fn single(q: QPoly, m: u32) -> Self {
        ProductDatum { factors: vec![(q, m)] }
    }

    pub fn is_empty(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleFormula {
    pub psi_star: PowerSumExpr,
    pub products: ProductDatum,
    pub d: usize,
    pub n_star: u64,
}

impl AdmissibleFormula {
    pub fn polynomial(psi_star: PowerSumExpr) -> Self {
        build_admissible(psi_star, ProductDatum::none())
    }

    pub fn has_products(&self) -> bool {
        !self.products.is_empty()
    }

    /// The formula without its product factors.
    pub fn symmetric_part(&self) -> Self {
        AdmissibleFormula::polynomial(self.psi_star.clone())
    }

    /// Surface syntax accepted by the formula parser.
    pub fn render(&self) -> String {
        let mut out = self.psi_star.to_string();
        if !self.has_products() {
            return out;
        }
        if self.psi_star == PowerSumExpr::one() {
            out.clear();
        } else if out.contains(" + ") || out.contains(" - ") {
            out = format!("({out})");
        }
        for (q, m) in &self.products.factors {
            if *m == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" * ");
            }
            out.push_str(&format!("prod({q})"));
            if *m != 1 {
                out.push_str(&format!("^{m}"));
            }
        }
        out
    }
}

/// Records `d = wdeg Ψ*` and `N* = d + 2`. The factors were already checked
/// for unit normalization when their [`QPoly`]s were built.
pub fn build_admissible(psi_star: PowerSumExpr, products: ProductDatum) -> AdmissibleFormula {
    let d = psi_star.weighted_degree();
    AdmissibleFormula { psi_star, products, d, n_star: d as u64 + 2 }
}

/// `Φ(u) = Ψ*(u_1/2, u_2/4, …)`.
pub fn phi_from_psi(psi_star: &PowerSumExpr) -> PowerSumExpr {
    psi_star.reweighted(|h| Rational::pow2(-(h as i64)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalMode {
    Stable,
    OracleOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    #[serde(serialize_with = "crate::invariants::serialize_display")]
    pub level: u64,
    #[serde(serialize_with = "crate::invariants::serialize_display")]
    pub value: Rational,
    /// `P_1(n), …, P_d(n)`.
    pub power_sums: Vec<Rational>,
    /// `M_{Q_i}(n)` in factor order, with exponents.
    #[serde(serialize_with = "serialize_factors")]
    pub multiplicative: Vec<(Rational, u32)>,
    pub mode: EvalMode,
    pub residual: Option<String>,
}

fn serialize_factors<S: serde::Serializer>(
    v: &[(Rational, u32)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(m, e)| [m.to_string(), e.to_string()]))
}

impl EvalReport {
    /// Recomputes the value from the breakdown.
    pub fn reconstruct(&self, f: &AdmissibleFormula) -> Rational {
        let phi = phi_from_psi(&f.psi_star);
        let z = Rational::from(self.level - 1);
        let base = phi.evaluate(&self.power_sums, &z);
        self.multiplicative
            .iter()
            .fold(base, |acc, (m, e)| acc * m.pow(*e as i64))
    }
}

fn assemble(f: &AdmissibleFormula, n: u64, mode: EvalMode) -> Result<EvalReport> {
    let phi = phi_from_psi(&f.psi_star);
    let gens = phi.max_generator().max(f.d);
    let power_sums = (1..=gens as u64)
        .map(|h| punctured_power_sum(n, h))
        .collect::<Result<Vec<_>>>()?;
    let mut value = phi.evaluate(&power_sums, &Rational::from(n - 1));
    let mut multiplicative = Vec::new();
    for (q, m) in &f.products.factors {
        let mq = multiplicative_invariant(q, n)?;
        value = value * mq.pow(*m as i64);
        multiplicative.push((mq, *m));
    }
    Ok(EvalReport { level: n, value, power_sums, multiplicative, mode, residual: None })
}

/// Exact evaluation in the stable range `n ≥ N*`.
pub fn stable_eval(f: &AdmissibleFormula, n: u64) -> Result<EvalReport> {
    if n < f.n_star {
        return Err(Error::BelowStableThreshold { n, n_star: f.n_star });
    }
    assemble(f, n, EvalMode::Stable)
}

/// Exact evaluation at any level `n ≥ 2`, using the full-range power sums.
///
/// Below `N*` this is still the true cosine-point value: truncation
/// compatibility makes `Ψ*` at the power sums of `n − 1` points equal to the
/// family member in `n − 1` variables, whatever `d` is.
pub fn general_eval(f: &AdmissibleFormula, n: u64) -> Result<EvalReport> {
    if n < 2 {
        return Err(Error::LevelTooSmall { n, min: 2 });
    }
    let mode = if n >= f.n_star { EvalMode::Stable } else { EvalMode::OracleOnly };
    assemble(f, n, mode)
}

/// `R_∞(n)`: `Ψ*` with `v_h := P_h^{stable}(n)/2^h` and `z := n − 1`.
pub fn eventual_polynomial(f: &AdmissibleFormula) -> Result<UniPoly> {
    if f.has_products() {
        return Err(Error::ProductsPresent);
    }
    let gens: Vec<UniPoly> = (1..=f.psi_star.max_generator() as u64)
        .map(|h| punctured_power_sum_stable(h).scale(&Rational::pow2(-(h as i64))))
        .collect();
    let z = UniPoly::from_ints(&[-1, 1], 'n');
    Ok(f.psi_star.evaluate(&gens, &z).with_var('n'))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelCheck {
    #[serde(serialize_with = "crate::invariants::serialize_display")]
    pub n: u64,
    #[serde(serialize_with = "crate::invariants::serialize_display")]
    pub expected: Rational,
    #[serde(serialize_with = "crate::invariants::serialize_display")]
    pub got: Rational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub formula: String,
    #[serde(serialize_with = "crate::invariants::serialize_display")]
    pub d: usize,
    #[serde(serialize_with = "crate::invariants::serialize_display")]
    pub n_star: u64,
    pub eventual_polynomial: Option<String>,
    /// `None` when products are present and no symbolic comparison is made.
    pub symbolic_match: Option<bool>,
    /// `R_∞ − conjecture` on a symbolic mismatch.
    pub difference: Option<String>,
    pub per_level: Vec<LevelCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.symbolic_match != Some(false) && self.per_level.iter().all(|c| c.pass)
    }
}

/// Compares `F` with a conjectured polynomial in `n`.
///
/// In the polynomial case the comparison is an identity in ℚ[n], covering
/// every `n ≥ N*`. `sweep` adds exact per-level checks over an inclusive
/// range, which is the only check made when products are present.
/// `check_below_threshold` adds the levels `2 ≤ n < N*`.
pub fn verify_identity(
    f: &AdmissibleFormula,
    conjecture: &UniPoly,
    check_below_threshold: bool,
    sweep: Option<(u64, u64)>,
) -> Result<VerifyReport> {
    let (eventual, symbolic_match, difference) = if f.has_products() {
        (None, None, None)
    } else {
        let r = eventual_polynomial(f)?;
        let diff = &r - conjecture;
        let ok = diff.is_zero();
        (Some(r.to_string()), Some(ok), (!ok).then(|| diff.with_var('n').to_string()))
    };
    let mut levels: Vec<u64> = Vec::new();
    if check_below_threshold {
        levels.extend(2..f.n_star);
    }
    if let Some((lo, hi)) = sweep {
        levels.extend(lo.max(2)..=hi);
    }
    levels.sort_unstable();
    levels.dedup();
    let per_level = levels
        .into_iter()
        .map(|n| {
            let got = general_eval(f, n)?.value;
            let expected = conjecture.eval(&Rational::from(n));
            let pass = got == expected;
            Ok(LevelCheck { n, expected, got, pass })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        formula: f.render(),
        d: f.d,
        n_star: f.n_star,
        eventual_polynomial: eventual,
        symbolic_match,
        difference,
        per_level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{e_to_powersum, energy_powersum, h_to_powersum, mixed_powersum};

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn p(k: usize) -> PowerSumExpr {
        PowerSumExpr::generator(k)
    }

    fn one_minus_t() -> QPoly {
        QPoly::from_t_poly(&UniPoly::from_ints(&[1, -1], 't')).unwrap()
    }

    #[test]
    fn build_examples() {
        let f = AdmissibleFormula::polynomial(energy_powersum());
        assert_eq!((f.d, f.n_star), (2, 4));
        let f = build_admissible(PowerSumExpr::one(), ProductDatum::single(one_minus_t(), 1));
        assert_eq!((f.d, f.n_star), (0, 2));
        let f = AdmissibleFormula::polynomial(e_to_powersum(5));
        assert_eq!((f.d, f.n_star), (5, 7));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_from_psi(&p(1)), p(1).scale(&Rational::new(1, 2)));
        let expected = PowerSumExpr::z()
            .mul_ref(&p(2))
            .sub_ref(&p(1).pow_u(2))
            .scale(&Rational::new(1, 4));
        assert_eq!(phi_from_psi(&energy_powersum()), expected);
        assert_eq!(phi_from_psi(&p(1).mul_ref(&p(2))), p(1).mul_ref(&p(2)).scale(&Rational::new(1, 8)));
    }

    #[test]
    fn stable_eval_examples() {
        let energy = AdmissibleFormula::polynomial(energy_powersum());
        assert_eq!(stable_eval(&energy, 5).unwrap().value, r(5));
        let e5 = AdmissibleFormula::polynomial(e_to_powersum(5));
        assert_eq!(stable_eval(&e5, 8).unwrap().value, Rational::new(-1, 4));
        let cubic = AdmissibleFormula::polynomial(mixed_powersum(2, 1));
        assert_eq!(stable_eval(&cubic, 6).unwrap().value, r(-1));
    }

    #[test]
    fn stable_eval_refuses_below_threshold() {
        let energy = AdmissibleFormula::polynomial(energy_powersum());
        let err = stable_eval(&energy, 3).unwrap_err();
        assert_eq!(err, Error::BelowStableThreshold { n: 3, n_star: 4 });
        assert!(err.to_string().contains("use oracle_eval"));
        assert_eq!(general_eval(&energy, 3).unwrap().value, r(0));
        assert_eq!(general_eval(&energy, 3).unwrap().mode, EvalMode::OracleOnly);
    }

    #[test]
    fn report_reconstructs() {
        let f = build_admissible(energy_powersum(), ProductDatum::single(one_minus_t(), 2));
        let rep = stable_eval(&f, 7).unwrap();
        assert_eq!(rep.reconstruct(&f), rep.value);
        // 7·4/2 · (49/64)²
        assert_eq!(rep.value, r(14) * Rational::new(49, 64).pow(2));
    }

    #[test]
    fn eventual_examples() {
        let energy = AdmissibleFormula::polynomial(energy_powersum());
        let expected = UniPoly::new(vec![r(0), Rational::new(-3, 2), Rational::new(1, 2)], 'n');
        assert_eq!(eventual_polynomial(&energy).unwrap(), expected);
        let cubic = AdmissibleFormula::polynomial(mixed_powersum(2, 1));
        let expected = UniPoly::new(vec![r(2), Rational::new(-1, 2)], 'n');
        assert_eq!(eventual_polynomial(&cubic).unwrap(), expected);
        let h6 = AdmissibleFormula::polynomial(h_to_powersum(6));
        let n = UniPoly::x('n');
        let expected = (&(&n * &UniPoly::from_ints(&[4, 1], 'n')) * &UniPoly::from_ints(&[5, 1], 'n'))
            .scale(&Rational::new(1, 384));
        assert_eq!(eventual_polynomial(&h6).unwrap(), expected);
    }

    #[test]
    fn eventual_rejects_products() {
        let f = build_admissible(PowerSumExpr::one(), ProductDatum::single(one_minus_t(), 1));
        assert_eq!(eventual_polynomial(&f), Err(Error::ProductsPresent));
    }

    #[test]
    fn verify_energy_below_threshold() {
        let energy = AdmissibleFormula::polynomial(energy_powersum());
        let conj = UniPoly::new(vec![r(0), Rational::new(-3, 2), Rational::new(1, 2)], 'n');
        let rep = verify_identity(&energy, &conj, true, None).unwrap();
        assert_eq!(rep.symbolic_match, Some(true));
        assert_eq!(rep.per_level.len(), 2);
        assert!(!rep.per_level[0].pass);
        assert_eq!((rep.per_level[0].got.clone(), rep.per_level[0].expected.clone()), (r(0), r(-1)));
        assert!(rep.per_level[1].pass);
        assert!(!rep.passed());
    }

    #[test]
    fn verify_h7_and_wrong_conjecture() {
        let h7 = AdmissibleFormula::polynomial(h_to_powersum(7));
        let n = UniPoly::x('n');
        let conj = (&(&n * &UniPoly::from_ints(&[4, 1], 'n')) * &UniPoly::from_ints(&[5, 1], 'n'))
            .scale(&Rational::new(-1, 384));
        let rep = verify_identity(&h7, &conj, false, None).unwrap();
        assert!(rep.passed());
        assert_eq!(stable_eval(&h7, 9).unwrap().value, Rational::new(-273, 64));

        let wrong = &conj + &UniPoly::from_ints(&[1], 'n');
        let rep = verify_identity(&h7, &wrong, false, None).unwrap();
        assert_eq!(rep.symbolic_match, Some(false));
        assert_eq!(rep.difference.as_deref(), Some("-1"));
    }

    #[test]
    fn verify_with_products_sweeps_only() {
        let f = build_admissible(PowerSumExpr::one(), ProductDatum::single(one_minus_t(), 1));
        let rep = verify_identity(&f, &UniPoly::from_ints(&[1], 'n'), false, Some((2, 4))).unwrap();
        assert_eq!(rep.symbolic_match, None);
        assert_eq!(rep.per_level.len(), 3);
        assert!(rep.per_level.iter().all(|c| !c.pass));
    }
}
