//! Symmetric polynomials in the power-sum basis over ℚ[z].
//!
//! A bounded-degree truncation-compatible family is represented by its stable
//! presentation `Ψ ∈ ℚ[z][v_1..v_d]` ([`PowerSumExpr`]); a concrete member in
//! `m` variables is a [`SymMonomialPoly`]. [`expand`] and
//! [`reduce_to_powersum`] move between the two.

mod monomial;
mod powersum;

pub use monomial::{is_partition, Partition, SymMonomialPoly};
pub use powersum::{coeff_const, z_poly, CoeffPoly, GenMonomial, PowerSumExpr, Z};

use crate::error::{Error, Result};
use crate::exactcore::{Rational, Ring};

/// Newton-type recurrence `r·f_r = Σ_{i=1}^{r} sign(i)·f_{r−i}·p_i`.
fn newton_family(r: usize, alternating: bool) -> PowerSumExpr {
    let mut seq = vec![PowerSumExpr::one()];
    for k in 1..=r {
        let mut acc = PowerSumExpr::zero();
        for i in 1..=k {
            let term = seq[k - i].mul_ref(&PowerSumExpr::generator(i));
            acc = if alternating && i % 2 == 0 {
                acc.sub_ref(&term)
            } else {
                acc.add_ref(&term)
            };
        }
        seq.push(acc.scale(&Rational::new(1, k as i64)));
    }
    seq.pop().unwrap()
}

/// Elementary symmetric `e_r` in power sums; `e_0 = 1`.
pub fn e_to_powersum(r: usize) -> PowerSumExpr {
    newton_family(r, true)
}

/// Complete homogeneous `h_r` in power sums; `h_0 = 1`.
pub fn h_to_powersum(r: usize) -> PowerSumExpr {
    newton_family(r, false)
}

/// `Σ_{i≠j} x_i^a x_j^b = p_a·p_b − p_{a+b}`.
pub fn mixed_powersum(a: usize, b: usize) -> PowerSumExpr {
    PowerSumExpr::generator(a)
        .mul_ref(&PowerSumExpr::generator(b))
        .sub_ref(&PowerSumExpr::generator(a + b))
}

/// Quadratic energy `Σ_{i<j}(x_i − x_j)² = z·p_2 − p_1²` with `z` in place of
/// the variable count.
pub fn energy_powersum() -> PowerSumExpr {
    PowerSumExpr::z()
        .mul_ref(&PowerSumExpr::generator(2))
        .sub_ref(&PowerSumExpr::generator(1).pow_u(2))
}

/// Substitutes `v_r := p_r(x_1..x_m)` and expands in the monomial-symmetric basis.
pub fn expand(psi: &PowerSumExpr, m: usize) -> SymMonomialPoly {
    let mut out = SymMonomialPoly::zero(m);
    for (mono, coeff) in psi.terms() {
        let mut prod = SymMonomialPoly::one(m);
        for part in mono.partition() {
            prod = prod.mul_power_sum(part);
        }
        out = out.add(&prod.scale_poly(coeff));
    }
    out
}

/// Recovers the unique `Ψ` of weighted degree `≤ d` with `expand(Ψ, m) = g`.
///
/// Repeatedly takes the remaining partition `λ` that is smallest in
/// (degree, lexicographic) order and cancels it with a multiple of `p_λ`.
/// Expanding `p_λ` only produces `m_λ` and orbits that are coarser than `λ`
/// (hence lexicographically larger), so the smallest remaining key strictly
/// increases and the loop ends after at most one step per partition.
pub fn reduce_to_powersum(g: &SymMonomialPoly, d: usize) -> Result<PowerSumExpr> {
    let m = g.nvars();
    if m < d {
        return Err(Error::BelowStableVariableCount { m, d });
    }
    if let Some((lambda, _)) = g.terms().find(|(l, _)| !is_partition(l)) {
        return Err(Error::NotSymmetric(format!("{lambda:?} is not a partition")));
    }
    let degree = g.total_degree();
    if degree > d {
        return Err(Error::Semantic(format!(
            "total degree {degree} exceeds the declared bound {d}"
        )));
    }
    let mut rest = g.clone();
    let mut psi = PowerSumExpr::zero();
    while let Some((lambda, coeff)) = rest
        .terms()
        .min_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        })
        .map(|(l, c)| (l.clone(), c.clone()))
    {
        let mono = GenMonomial::from_partition(&lambda);
        let p_lambda = expand(&PowerSumExpr::term(mono.clone(), coeff_const(Rational::one())), m);
        let lead = p_lambda.coeff(&lambda).coeffs()[0].clone();
        let c = coeff.scale(&lead.recip().expect("p_λ contains m_λ"));
        rest = rest.sub(&p_lambda.scale_poly(&c));
        psi = psi.add_ref(&PowerSumExpr::term(mono, c));
    }
    Ok(psi)
}

/// Checks `expand(Ψ, m+1)|_{x_{m+1}=0} = expand(Ψ, m)`.
pub fn truncation_check(psi: &PowerSumExpr, m: usize) -> bool {
    expand(psi, m + 1).restrict(m) == expand(psi, m)
}
