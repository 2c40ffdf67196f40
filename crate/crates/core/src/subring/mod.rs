//! The rings `Z[x] + F[x]x^2` and `Z[x] + K[x]x^2` inside `K[x]`, with
//! `F = Q` and `K` one of `Q`, `Q(s)`, `Q(s, t)`.
//!
//! Elements of `K` are [`RatFunc`] values; the indeterminates `s`, `t` stand
//! in for algebraically independent transcendentals.

mod claims;
mod poly;
mod refute;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::arith::{is_prime, RatFunc, Rational};
use crate::error::{domain, Result};

pub use claims::{
    claim1_constraints, claim2_polynomials, shipped_claim1_corpus, Claim1Case, Claim1Report, Claim2Poly,
    CoefficientViolation, PCoefficient,
};
pub use poly::{RYPoly, SubringPoly};
pub use refute::{
    ab_target, probe_irreducible, refute_quasi_atomic_candidate, shipped_candidates, AtomReason, Candidate,
    InvalidReason, ProbeBudget, ProbeVerdict, RefuteVerdict, SplitKind,
};

/// The top field `K` of the tower `Z ⊆ Q ⊆ K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TopField {
    Q,
    Qs,
    Qst,
}

impl TopField {
    pub fn contains(&self, c: &RatFunc) -> bool {
        match self {
            TopField::Q => c.is_rational(),
            TopField::Qs => c.free_of_t(),
            TopField::Qst => true,
        }
    }
}

impl fmt::Display for TopField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TopField::Q => "Q",
            TopField::Qs => "Q(s)",
            TopField::Qst => "Q(s,t)",
        })
    }
}

/// Tower `Z ⊆ Q ⊆ K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TowerSpec {
    pub top: TopField,
}

/// Which coefficients the ring allows at degrees `>= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Upper {
    /// `Z[x] + Q[x]x^2`
    Mid,
    /// `Z[x] + K[x]x^2`
    Top,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SubringSpec {
    pub tower: TowerSpec,
    pub upper: Upper,
}

impl SubringSpec {
    /// `Z[x] + Q[x]x^2`.
    pub fn zq() -> Self {
        SubringSpec { tower: TowerSpec { top: TopField::Q }, upper: Upper::Mid }
    }

    /// `Z[x] + K[x]x^2`.
    pub fn zk(top: TopField) -> Self {
        SubringSpec { tower: TowerSpec { top }, upper: Upper::Top }
    }

    /// `Z + Zx + x^2 Q(s,t)[x]`, the base ring of the two-variable checks.
    pub fn zst() -> Self {
        Self::zk(TopField::Qst)
    }

    /// The same tower with upper coefficients in `Q`.
    pub fn mid(&self) -> Self {
        SubringSpec { tower: self.tower, upper: Upper::Mid }
    }

    pub fn upper_contains(&self, c: &RatFunc) -> bool {
        match self.upper {
            Upper::Mid => c.is_rational(),
            Upper::Top => self.tower.top.contains(c),
        }
    }

    /// The one-letter names used on the command line: `ZQ`, `ZQs`, `ZQst`.
    pub fn parse_name(name: &str) -> Result<Self> {
        match name {
            "ZQ" => Ok(Self::zq()),
            "ZQs" => Ok(Self::zk(TopField::Qs)),
            "ZQst" => Ok(Self::zst()),
            _ => domain(format!("unknown ring {name}; expected ZQ, ZQs or ZQst")),
        }
    }
}

impl fmt::Display for SubringSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let upper = match self.upper {
            Upper::Mid => TopField::Q,
            Upper::Top => self.tower.top,
        };
        write!(f, "Z[x]+{upper}[x]x^2")
    }
}

/// `x^0` and `x^1` coefficients in `Z`, the rest in the allowed field.
pub fn membership_subring(f: &SubringPoly, spec: &SubringSpec) -> bool {
    f.coeffs().iter().enumerate().all(|(k, c)| match k {
        0 | 1 => c.is_integer(),
        _ => spec.upper_contains(c),
    })
}

/// Every `y` coefficient a member of the base ring.
pub fn membership_ry(f: &RYPoly, spec: &SubringSpec) -> bool {
    f.ys().iter().all(|p| membership_subring(p, spec))
}

fn require_member(f: &SubringPoly, spec: &SubringSpec) -> Result<()> {
    if f.is_zero() {
        return domain("the zero polynomial");
    }
    if !membership_subring(f, spec) {
        return domain(format!("{f} is not in {spec}"));
    }
    Ok(())
}

/// Atomic iff the order coefficient lies in `Z`.
pub fn is_atomic_element(f: &SubringPoly, spec: &SubringSpec) -> Result<bool> {
    require_member(f, spec)?;
    Ok(f.order_coeff().is_some_and(RatFunc::is_integer))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlmostAtomicWitness {
    /// the multiplier, the denominator of the order coefficient
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub s: BigInt,
    pub product: SubringPoly,
    pub product_atomic: bool,
}

/// A nonzero integer `s` with `s f` atomic.
pub fn almost_atomic_witness(f: &SubringPoly, spec: &SubringSpec) -> Result<AlmostAtomicWitness> {
    let mid = spec.mid();
    require_member(f, &mid)?;
    let k = f.order_coeff().and_then(RatFunc::as_rational).expect("member with rational order coefficient");
    let s = k.denom().clone();
    let product = f.scale(&RatFunc::from(Rational::from_integer(s.clone())));
    let product_atomic = is_atomic_element(&product, &mid)?;
    Ok(AlmostAtomicWitness { s, product, product_atomic })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuasiAtomicWitness {
    /// `k^{-1} x^2` with `k` the order coefficient
    pub multiplier: SubringPoly,
    pub product: SubringPoly,
    pub product_atomic: bool,
}

pub fn quasi_atomic_witness(f: &SubringPoly, spec: &SubringSpec) -> Result<QuasiAtomicWitness> {
    require_member(f, spec)?;
    let k = f.order_coeff().expect("nonzero");
    let multiplier = SubringPoly::monomial(k.inv()?, 2);
    let product = multiplier.mul(f);
    let product_atomic = is_atomic_element(&product, spec)?;
    Ok(QuasiAtomicWitness { multiplier, product, product_atomic })
}

/// `f * (kappa x^2)` has order coefficient `kappa * ord-coeff(f)` outside `Z`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonAtomicRecord {
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub kappa: RatFunc,
    pub f: SubringPoly,
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub f_order_coeff: RatFunc,
    pub product: SubringPoly,
    pub product_order: usize,
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub product_order_coeff: RatFunc,
    pub product_atomic: bool,
}

pub fn not_almost_atomic_witness(spec: &SubringSpec, kappa: &RatFunc, f: &SubringPoly) -> Result<NonAtomicRecord> {
    if kappa.is_rational() {
        return domain(format!("kappa = {kappa} lies in Q"));
    }
    if !spec.upper_contains(kappa) {
        return domain(format!("kappa = {kappa} is not an allowed coefficient of {spec}"));
    }
    if !is_atomic_element(f, spec)? {
        return domain(format!("{f} is not atomic"));
    }
    let product = f.mul(&SubringPoly::monomial(kappa.clone(), 2));
    let product_atomic = is_atomic_element(&product, spec)?;
    Ok(NonAtomicRecord {
        kappa: kappa.clone(),
        f: f.clone(),
        f_order_coeff: f.order_coeff().cloned().expect("nonzero"),
        product_order: product.order().expect("nonzero"),
        product_order_coeff: product.order_coeff().cloned().expect("nonzero"),
        product,
        product_atomic,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DescentStep {
    pub k: usize,
    /// `q x^2 / a^k`
    pub cofactor: SubringPoly,
    pub member: bool,
    pub unit: bool,
    pub atomic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DescentChain {
    pub start: SubringPoly,
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub a: BigInt,
    pub steps: Vec<DescentStep>,
    /// each cofactor is `a` times the next and `a` is not a unit
    pub proper: bool,
}

/// `q x^2 = a^k (q / a^k) x^2` for `k = 1..=depth` in `Z[x] + Q[x]x^2`.
pub fn infinite_descent_demo(q: &Rational, a: &BigInt, depth: usize) -> Result<DescentChain> {
    if q.is_zero() {
        return domain("q must be nonzero");
    }
    if depth == 0 {
        return domain("depth must be at least 1");
    }
    if !a.abs().to_u64().is_some_and(is_prime) {
        return domain(format!("{a} is not an atom of Z"));
    }
    let spec = SubringSpec::zq();
    let start = SubringPoly::monomial(RatFunc::from(q.clone()), 2);
    let ar = RatFunc::from(Rational::from_integer(a.clone()));
    let mut steps = Vec::with_capacity(depth);
    let mut prev = start.clone();
    let mut proper = true;
    for k in 1..=depth {
        let cofactor = prev.scale(&ar.inv()?);
        proper &= cofactor.scale(&ar) == prev;
        let member = membership_subring(&cofactor, &spec);
        let atomic = member && is_atomic_element(&cofactor, &spec)?;
        steps.push(DescentStep { k, unit: false, member, atomic, cofactor: cofactor.clone() });
        prev = cofactor;
    }
    Ok(DescentChain { start, a: a.clone(), steps, proper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn q(n: i64, d: i64) -> RatFunc {
        RatFunc::from(Rational::frac(n, d))
    }

    fn poly(cs: &[RatFunc]) -> SubringPoly {
        SubringPoly::new(cs.to_vec())
    }

    #[test]
    fn membership_examples() {
        let zq = SubringSpec::zq();
        assert!(membership_subring(&poly(&[q(3, 1), q(2, 1), q(1, 2)]), &zq));
        assert!(!membership_subring(&poly(&[q(0, 1), q(1, 2)]), &zq));
        let sx2 = SubringPoly::monomial(RatFunc::s(), 2);
        assert!(membership_subring(&sx2, &SubringSpec::zst()));
        assert!(!membership_subring(&sx2, &zq));
        let tx2 = SubringPoly::monomial(RatFunc::t(), 2);
        assert!(!membership_subring(&tx2, &SubringSpec::zk(TopField::Qs)));
    }

    #[test]
    fn atomic_examples() {
        let zq = SubringSpec::zq();
        assert!(!is_atomic_element(&SubringPoly::monomial(q(1, 2), 2), &zq).unwrap());
        assert!(is_atomic_element(&SubringPoly::x(), &zq).unwrap());
        assert!(is_atomic_element(&poly(&[q(2, 1), q(0, 1), q(0, 1), q(1, 1)]), &zq).unwrap());
        assert!(is_atomic_element(&poly(&[q(0, 1), q(1, 2)]), &zq).is_err());
        assert!(is_atomic_element(&SubringPoly::zero(), &zq).is_err());
    }

    #[test]
    fn witnesses() {
        let zq = SubringSpec::zq();
        let f = poly(&[q(0, 1), q(0, 1), q(1, 2), q(1, 1)]);
        assert_eq!(almost_atomic_witness(&f, &zq).unwrap().s, BigInt::from(2));
        let g = poly(&[q(0, 1), q(0, 1), q(1, 3), q(0, 1), q(1, 1)]);
        assert_eq!(almost_atomic_witness(&g, &zq).unwrap().s, BigInt::from(3));
        assert_eq!(almost_atomic_witness(&poly(&[q(0, 1), q(1, 1), q(1, 3)]), &zq).unwrap().s, BigInt::one());

        let zs = SubringSpec::zk(TopField::Qs);
        let w = quasi_atomic_witness(&SubringPoly::monomial(RatFunc::s(), 2), &zs).unwrap();
        assert_eq!(w.multiplier, SubringPoly::monomial(RatFunc::s().inv().unwrap(), 2));
        assert_eq!(w.product, SubringPoly::monomial(RatFunc::one(), 4));
        assert_eq!(quasi_atomic_witness(&SubringPoly::one(), &zs).unwrap().multiplier, SubringPoly::monomial(q(1, 1), 2));
        let s1 = RatFunc::s().add(&RatFunc::one());
        let w = quasi_atomic_witness(&SubringPoly::monomial(s1.clone(), 3), &zs).unwrap();
        assert_eq!(w.multiplier, SubringPoly::monomial(s1.inv().unwrap(), 2));
        assert!(w.product_atomic);
    }

    #[test]
    fn kappa_records() {
        let zs = SubringSpec::zk(TopField::Qs);
        let r = not_almost_atomic_witness(&zs, &RatFunc::s(), &SubringPoly::x()).unwrap();
        assert_eq!(r.product_order_coeff, RatFunc::s());
        assert!(!r.product_atomic);
        let r = not_almost_atomic_witness(&zs, &RatFunc::s(), &poly(&[q(2, 1), q(1, 1)])).unwrap();
        assert_eq!(r.product_order_coeff, RatFunc::s().scale(&Rational::from(2)));
        assert!(not_almost_atomic_witness(&SubringSpec::zk(TopField::Q), &q(1, 2), &SubringPoly::x()).is_err());
    }

    #[test]
    fn descent() {
        let c = infinite_descent_demo(&Rational::frac(1, 2), &BigInt::from(2), 3).unwrap();
        let got: Vec<_> = c.steps.iter().map(|s| s.cofactor.clone()).collect();
        let want: Vec<_> = [4, 8, 16].iter().map(|&d| SubringPoly::monomial(q(1, d), 2)).collect();
        assert_eq!(got, want);
        assert!(c.proper && c.steps.iter().all(|s| s.member && !s.atomic));
        let c = infinite_descent_demo(&Rational::one(), &BigInt::from(2), 1).unwrap();
        assert_eq!(c.steps[0].cofactor, SubringPoly::monomial(q(1, 2), 2));
        assert!(infinite_descent_demo(&Rational::one(), &BigInt::from(4), 1).is_err());
    }
}
