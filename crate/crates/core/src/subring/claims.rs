//! Symbolic constraint checks for a factor `A(y) = (s/γ x^{2-e} y + t/γ x^{2-e}) Σ T_i y^i`
//! of `F(y)(s x^2 y + t x^2)` in `R[y]`, `R = Z + Zx + x^2 Q(s,t)[x]`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{membership_subring, SubringPoly, SubringSpec};
use crate::arith::{RatFunc, Rational};
use crate::error::{domain, Result};
use crate::semidomain::{CoeffDomain, PolyExpr};

/// A coefficient of degree 0 or 1 that should be an integer but is not.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientViolation {
    pub degree: usize,
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub coefficient: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PCoefficient {
    pub index: usize,
    /// `p_i = (t/γ) x^{2-e} T_i + (s/γ) x^{2-e} T_{i-1}`
    pub p: SubringPoly,
    pub member: bool,
    pub violations: Vec<CoefficientViolation>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim1Report {
    pub e: u32,
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub gamma: RatFunc,
    /// indices `i` with `T_i != 0` and `ord T_i < e`
    pub low_order: Vec<usize>,
    pub coefficients: Vec<PCoefficient>,
    pub all_members: bool,
}

impl Claim1Report {
    pub fn violation_count(&self) -> usize {
        self.coefficients.iter().map(|c| c.violations.len()).sum()
    }

    /// `(index, degree)` of every flagged coefficient.
    pub fn violation_positions(&self) -> Vec<(usize, usize)> {
        self.coefficients.iter().flat_map(|c| c.violations.iter().map(move |v| (c.index, v.degree))).collect()
    }
}

/// Evaluates every `p_i`, `0 <= i <= d + 1`, and reports the low-degree
/// coefficients that fail to be integers.
pub fn claim1_constraints(ts: &[SubringPoly], e: u32, gamma: &RatFunc) -> Result<Claim1Report> {
    if gamma.is_zero() {
        return domain("gamma must be nonzero");
    }
    if e > 2 {
        return domain(format!("exponent e = {e} outside 0..=2"));
    }
    let shift = (2 - e) as usize;
    let beta = RatFunc::t().div(gamma)?;
    let alpha = RatFunc::s().div(gamma)?;
    let spec = SubringSpec::zst();
    let zero = SubringPoly::zero();
    let mut coefficients = Vec::with_capacity(ts.len() + 1);
    for i in 0..=ts.len() {
        let cur = ts.get(i).unwrap_or(&zero);
        let prev = if i == 0 { &zero } else { &ts[i - 1] };
        let p = cur.scale(&beta).add(&prev.scale(&alpha)).shift(shift);
        let violations = (0..2)
            .filter_map(|k| {
                let c = p.coeff(k);
                (!c.is_integer()).then_some(CoefficientViolation { degree: k, coefficient: c })
            })
            .collect();
        let member = membership_subring(&p, &spec);
        coefficients.push(PCoefficient { index: i, p, member, violations });
    }
    let low_order = ts
        .iter()
        .enumerate()
        .filter(|(_, t)| t.order().is_some_and(|o| o < e as usize))
        .map(|(i, _)| i)
        .collect();
    let all_members = coefficients.iter().all(|c| c.member);
    Ok(Claim1Report { e, gamma: gamma.clone(), low_order, coefficients, all_members })
}

const SHIPPED_CLAIM1: &str = include_str!("../../data/claim1.json");

/// An input of [`claim1_constraints`] with the flagged positions it must produce.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim1Case {
    pub label: String,
    pub ts: Vec<SubringPoly>,
    pub e: u32,
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub gamma: RatFunc,
    pub violations: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawClaim1 {
    label: String,
    #[serde(rename = "T")]
    ts: Vec<String>,
    e: u32,
    gamma: String,
    violations: Vec<(usize, usize)>,
}

/// The bundled symbolic corpus.
pub fn shipped_claim1_corpus() -> Result<Vec<Claim1Case>> {
    let raw: Vec<RawClaim1> = serde_json::from_str(SHIPPED_CLAIM1)
        .map_err(|e| crate::Error::Parse { pos: e.column(), msg: e.to_string() })?;
    raw.into_iter()
        .map(|r| {
            Ok(Claim1Case {
                label: r.label,
                ts: r.ts.iter().map(|t| crate::parse::parse_subring(t)).collect::<Result<_>>()?,
                e: r.e,
                gamma: crate::parse::parse_ratfunc(&r.gamma)?,
                violations: r.violations,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim2Poly {
    pub k: usize,
    pub q: PolyExpr,
    pub degree: usize,
}

/// `Q_{s+1} = -x + z_{s+1}/z_s` and `Q_k = Z_k/z_s - x Q_{k-1}` for
/// `k = s+2..=d`; `zs[j]` supplies the integer for `k = s + 1 + j`.
pub fn claim2_polynomials(z_s: &BigInt, zs: &[BigInt], s_index: usize, d: usize) -> Result<Vec<Claim2Poly>> {
    if z_s.is_zero() {
        return domain("z_s must be nonzero");
    }
    let count = d.saturating_sub(s_index);
    if zs.len() < count {
        return domain(format!("need {count} integers, got {}", zs.len()));
    }
    let x = PolyExpr::x_pow(CoeffDomain::Q, Rational::one())?;
    let mut out: Vec<Claim2Poly> = Vec::with_capacity(count);
    for (j, z) in zs.iter().take(count).enumerate() {
        let c = PolyExpr::constant(CoeffDomain::Q, Rational::new(z.clone(), z_s.clone())?)?;
        let prev = out.last().map(|q| q.q.clone()).unwrap_or_else(|| PolyExpr::one(CoeffDomain::Q));
        let q = c.sub(&x.mul(&prev)?)?;
        let degree = q.degree().and_then(|r| r.to_integer()).and_then(|n| usize::try_from(n).ok()).unwrap_or(0);
        out.push(Claim2Poly { k: s_index + 1 + j, q, degree });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn claim1_examples() {
        let r = claim1_constraints(&[SubringPoly::one()], 2, &RatFunc::t()).unwrap();
        assert_eq!(r.coefficients[0].p, SubringPoly::one());
        assert!(r.coefficients[0].member);
        assert_eq!(r.coefficients[1].violations[0].coefficient, RatFunc::s().div(&RatFunc::t()).unwrap());
        assert_eq!(r.violation_count(), 1);
        assert_eq!(r.low_order, vec![0]);

        let r = claim1_constraints(&[SubringPoly::zero()], 1, &RatFunc::s()).unwrap();
        assert!(r.all_members && r.low_order.is_empty());

        let r = claim1_constraints(&[SubringPoly::one(), SubringPoly::zero()], 2, &RatFunc::t()).unwrap();
        assert!(!r.coefficients[1].member);
        assert!(claim1_constraints(&[SubringPoly::one()], 1, &RatFunc::zero()).is_err());
        assert!(claim1_constraints(&[SubringPoly::one()], 3, &q(1)).is_err());
    }

    #[test]
    fn claim2_examples() {
        let z = |v: &[i64]| v.iter().map(|&n| BigInt::from(n)).collect::<Vec<_>>();
        let qs = claim2_polynomials(&BigInt::from(1), &z(&[0, 0]), 0, 2).unwrap();
        assert_eq!(qs[0].q.to_string(), "-x");
        assert_eq!(qs[1].q.to_string(), "x^2");
        let qs = claim2_polynomials(&BigInt::from(2), &z(&[1]), 3, 4).unwrap();
        assert_eq!(qs[0].k, 4);
        assert_eq!(qs[0].q.to_string(), "-x+1/2");
        assert!(claim2_polynomials(&BigInt::from(0), &z(&[1]), 0, 1).is_err());
        let qs = claim2_polynomials(&BigInt::from(-3), &z(&[4, -1, 7, 2, 0]), 1, 6).unwrap();
        assert!(qs.iter().all(|q| q.degree == q.k - 1));
    }

    #[test]
    fn shipped_corpus_matches() {
        for case in shipped_claim1_corpus().unwrap() {
            let r = claim1_constraints(&case.ts, case.e, &case.gamma).unwrap();
            assert_eq!(r.violation_positions(), case.violations, "{}", case.label);
        }
    }
}
