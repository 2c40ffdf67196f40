//! Candidate factorizations of `F(y) (s x^2 y + t x^2)` into irreducibles of
//! `R[y]`, `R = Z + Zx + x^2 Q(s,t)[x]`, and a bounded irreducibility probe.
//!
//! A member `f` of `R[y]` that is irreducible in `K[x, y]` splits in `R[y]`
//! only as `κ (f / κ)` with `κ` a nonunit integer dividing every coefficient
//! of `x^0` and `x^1`; the probe certifies atoms exactly in that situation and
//! otherwise searches a structured family of divisors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{membership_ry, RYPoly, SubringPoly, SubringSpec};
use crate::arith::{RatFunc, Rational};
use crate::error::{domain, Result};

const SHIPPED: &str = include_str!("../../data/candidates.json");

/// Search limits of [`probe_irreducible`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeBudget {
    /// largest `x`-degree of a trial divisor
    pub max_x_degree: usize,
    /// largest `y`-degree of a trial divisor
    pub max_y_degree: usize,
    /// largest numerator/denominator degree of a trial scalar
    pub max_complexity: u32,
    /// integer multipliers tried when rescaling a divisor: `1..=max_scalar`
    pub max_scalar: i64,
}

impl Default for ProbeBudget {
    fn default() -> Self {
        ProbeBudget { max_x_degree: 4, max_y_degree: 2, max_complexity: 3, max_scalar: 12 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitKind {
    /// a composite integer constant
    IntegerFactor,
    /// a nonunit integer dividing all coefficients of `x^0` and `x^1`
    IntegerContent,
    YPower,
    /// a divisor from the gcd over `K[x]` of the `y` coefficients
    XContent,
    /// a divisor from the gcd over `K[y]` of the `x` coefficients
    YContent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AtomReason {
    PrimeInteger,
    /// total degree one in `x, y`
    Linear,
    /// degree one in `y` with coprime coefficients over `K[x]`
    PrimitiveLinearInY,
    /// degree one in `x` with coprime coefficients over `K[y]`
    PrimitiveLinearInX,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "probe", rename_all = "kebab-case")]
pub enum ProbeVerdict {
    Unit,
    Atom { reason: AtomReason },
    Split { kind: SplitKind, left: RYPoly, right: RYPoly },
    UnknownAtBudget { budget: ProbeBudget },
}

fn low_coeffs(f: &RYPoly) -> Vec<Rational> {
    f.ys()
        .iter()
        .flat_map(|p| p.low_coeffs())
        .filter(|c| !c.is_zero())
        .map(|c| c.as_rational().expect("low coefficients of a member are integers"))
        .collect()
}

fn int(c: &BigInt) -> RatFunc {
    RatFunc::from(Rational::from_integer(c.clone()))
}

/// `f` with the roles of `x` and `y` exchanged.
fn transpose(f: &RYPoly) -> RYPoly {
    let nx = f.x_degree().map_or(0, |d| d + 1);
    RYPoly::new(
        (0..nx)
            .map(|i| SubringPoly::new((0..f.ys().len()).map(|j| f.coeff(i, j)).collect()))
            .collect(),
    )
}

fn content_over(polys: impl Iterator<Item = SubringPoly>) -> SubringPoly {
    polys.fold(SubringPoly::zero(), |g, p| g.gcd(&p))
}

fn is_linear(f: &RYPoly) -> bool {
    f.terms().all(|(i, j, _)| i + j <= 1)
}

/// Irreducibility in `K[x, y]`, certified for the shapes we can decide.
fn irreducible_over_k(f: &RYPoly) -> Option<AtomReason> {
    if is_linear(f) {
        return Some(AtomReason::Linear);
    }
    if f.y_degree() == Some(1) && content_over(f.ys().iter().cloned()).is_constant() {
        return Some(AtomReason::PrimitiveLinearInY);
    }
    let ft = transpose(f);
    if ft.y_degree() == Some(1) && content_over(ft.ys().iter().cloned()).is_constant() {
        return Some(AtomReason::PrimitiveLinearInX);
    }
    None
}

/// A scalar `c` with `c d` and `e / c` both in `R[y]`.
fn rescale(d: &RYPoly, e: &RYPoly, spec: &SubringSpec, budget: &ProbeBudget) -> Option<(RYPoly, RYPoly)> {
    let low = |p: &RYPoly| p.ys().iter().flat_map(|q| q.low_coeffs()).find(|c| !c.is_zero());
    let mut scalars = Vec::new();
    match (low(d), low(e)) {
        (Some(l), _) => {
            let inv = l.inv().ok()?;
            for m in 1..=budget.max_scalar {
                scalars.push(inv.scale(&Rational::from(m)));
                scalars.push(inv.scale(&Rational::from(-m)));
            }
        }
        (None, Some(mu)) => {
            for m in 1..=budget.max_scalar {
                scalars.push(mu.scale(&Rational::frac(1, m)));
                scalars.push(mu.scale(&Rational::frac(-1, m)));
            }
        }
        (None, None) => scalars.push(RatFunc::one()),
    }
    for c in scalars {
        if c.complexity() > budget.max_complexity {
            continue;
        }
        let left = d.scale(&c);
        let right = e.scale(&c.inv().ok()?);
        if membership_ry(&left, spec) && membership_ry(&right, spec) {
            return Some((left, right));
        }
    }
    None
}

fn structured_divisors(f: &RYPoly) -> Vec<(SplitKind, RYPoly)> {
    let mut out = Vec::new();
    if f.y_coeff(0).is_zero() {
        out.push((SplitKind::YPower, RYPoly::y()));
    }
    let gx = content_over(f.ys().iter().cloned());
    if !gx.is_constant() {
        let ord = gx.order().unwrap_or(0);
        for i in 1..=ord.min(2) {
            out.push((SplitKind::XContent, RYPoly::term(RatFunc::one(), i, 0)));
        }
        let rest = SubringPoly::new(gx.coeffs()[ord..].to_vec());
        if !rest.is_constant() {
            out.push((SplitKind::XContent, RYPoly::from_x(rest)));
            if ord > 0 {
                out.push((SplitKind::XContent, RYPoly::from_x(gx)));
            }
        }
    }
    let gy = content_over(transpose(f).ys().iter().cloned());
    if !gy.is_constant() {
        let ord = gy.order().unwrap_or(0);
        let rest = SubringPoly::new(gy.coeffs()[ord..].to_vec());
        if !rest.is_constant() {
            out.push((SplitKind::YContent, transpose(&RYPoly::from_x(rest))));
            if ord > 0 {
                out.push((SplitKind::YContent, transpose(&RYPoly::from_x(gy))));
            }
        }
    }
    out
}

/// Looks for a factorization of `f` into two nonunits of `R[y]`.
///
/// `f` must be a nonzero member. [`ProbeVerdict::Atom`] is a certificate;
/// [`ProbeVerdict::UnknownAtBudget`] means no split was found in the
/// searched family.
pub fn probe_irreducible(f: &RYPoly, spec: &SubringSpec, budget: &ProbeBudget) -> Result<ProbeVerdict> {
    if f.is_zero() || !membership_ry(f, spec) {
        return domain(format!("{f} is not a nonzero member of {spec}[y]"));
    }
    if let Some(c) = f.as_constant() {
        let n = c.as_rational().and_then(|r| r.to_integer()).expect("member constants are integers");
        let a = n.abs();
        if a.is_one() {
            return Ok(ProbeVerdict::Unit);
        }
        let small = smallest_factor(&a);
        if small == a {
            return Ok(ProbeVerdict::Atom { reason: AtomReason::PrimeInteger });
        }
        return Ok(ProbeVerdict::Split {
            kind: SplitKind::IntegerFactor,
            left: RYPoly::constant(int(&small)),
            right: RYPoly::constant(int(&(&n / &small))),
        });
    }
    let g = low_coeffs(f).iter().fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
    if !g.is_one() {
        let k = if g.is_zero() { BigInt::from(2) } else { g };
        return Ok(ProbeVerdict::Split {
            kind: SplitKind::IntegerContent,
            left: RYPoly::constant(int(&k)),
            right: f.scale(&int(&k).inv()?),
        });
    }
    if let Some(reason) = irreducible_over_k(f) {
        return Ok(ProbeVerdict::Atom { reason });
    }
    for (kind, d) in structured_divisors(f) {
        if d.x_degree().unwrap_or(0) > budget.max_x_degree || d.y_degree().unwrap_or(0) > budget.max_y_degree {
            continue;
        }
        let Some(e) = f.exact_div(&d) else { continue };
        if e.as_constant().is_some() {
            continue;
        }
        if let Some((left, right)) = rescale(&d, &e, spec, budget) {
            return Ok(ProbeVerdict::Split { kind, left, right });
        }
    }
    Ok(ProbeVerdict::UnknownAtBudget { budget: *budget })
}

fn smallest_factor(n: &BigInt) -> BigInt {
    let mut d = BigInt::from(2);
    while &(&d * &d) <= n {
        if (n % &d).is_zero() {
            return d;
        }
        d += 1;
    }
    n.clone()
}

/// `F (s x^2 y + t x^2)`.
pub fn ab_target(f: &RYPoly) -> RYPoly {
    let ab = RYPoly::term(RatFunc::s(), 2, 1).add(&RYPoly::term(RatFunc::t(), 2, 0));
    f.mul(&ab)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum InvalidReason {
    Empty,
    ProductMismatch { expected: RYPoly, product: RYPoly },
    NonMember { index: usize, factor: RYPoly },
    UnitFactor { index: usize },
    ReducibleFactor { index: usize, kind: SplitKind, left: RYPoly, right: RYPoly },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum RefuteVerdict {
    /// every factor certified irreducible
    Valid { probes: Vec<ProbeVerdict> },
    Invalid { reason: InvalidReason },
    /// no violation found but some factors were not certified
    UnknownAtBudget { undecided: Vec<usize>, budget: ProbeBudget },
}

impl RefuteVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, RefuteVerdict::Valid { .. })
    }
}

/// Checks, in order: the product equals `F (s x^2 y + t x^2)`, every factor
/// lies in `R[y]`, and no factor splits under the bounded probe.
pub fn refute_quasi_atomic_candidate(f: &RYPoly, factors: &[RYPoly], budget: &ProbeBudget) -> Result<RefuteVerdict> {
    let spec = SubringSpec::zst();
    if f.is_zero() || !membership_ry(f, &spec) {
        return domain(format!("multiplier {f} is not a nonzero member of R[y]"));
    }
    let invalid = |reason| Ok(RefuteVerdict::Invalid { reason });
    if factors.is_empty() {
        return invalid(InvalidReason::Empty);
    }
    let expected = ab_target(f);
    let product = factors.iter().fold(RYPoly::one(), |acc, g| acc.mul(g));
    if product != expected {
        return invalid(InvalidReason::ProductMismatch { expected, product });
    }
    if let Some(index) = factors.iter().position(|g| !membership_ry(g, &spec)) {
        return invalid(InvalidReason::NonMember { index, factor: factors[index].clone() });
    }
    let mut probes = Vec::with_capacity(factors.len());
    for (index, g) in factors.iter().enumerate() {
        let v = probe_irreducible(g, &spec, budget)?;
        match v {
            ProbeVerdict::Unit => return invalid(InvalidReason::UnitFactor { index }),
            ProbeVerdict::Split { kind, left, right } => {
                return invalid(InvalidReason::ReducibleFactor { index, kind, left, right })
            }
            _ => probes.push(v),
        }
    }
    let undecided: Vec<usize> = probes
        .iter()
        .enumerate()
        .filter(|(_, v)| matches!(v, ProbeVerdict::UnknownAtBudget { .. }))
        .map(|(i, _)| i)
        .collect();
    if undecided.is_empty() {
        Ok(RefuteVerdict::Valid { probes })
    } else {
        Ok(RefuteVerdict::UnknownAtBudget { undecided, budget: *budget })
    }
}

/// A multiplier `F` with claimed irreducible factors of `F (s x^2 y + t x^2)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Candidate {
    pub label: String,
    #[serde(rename = "F")]
    pub f: RYPoly,
    pub factors: Vec<RYPoly>,
}

#[derive(Deserialize)]
struct RawCandidate {
    #[serde(default)]
    label: String,
    #[serde(rename = "F")]
    f: String,
    factors: Vec<String>,
}

impl Candidate {
    /// Reads a JSON list of `{"F": ..., "factors": [...]}` records.
    pub fn parse_list(json: &str) -> Result<Vec<Candidate>> {
        let raw: Vec<RawCandidate> =
            serde_json::from_str(json).map_err(|e| crate::Error::Parse { pos: e.column(), msg: e.to_string() })?;
        raw.into_iter()
            .enumerate()
            .map(|(i, r)| {
                Ok(Candidate {
                    label: if r.label.is_empty() { format!("candidate-{i}") } else { r.label },
                    f: crate::parse::parse_ry(&r.f)?,
                    factors: r.factors.iter().map(|s| crate::parse::parse_ry(s)).collect::<Result<_>>()?,
                })
            })
            .collect()
    }
}

/// The bundled corpus of candidate factorizations.
pub fn shipped_candidates() -> Result<Vec<Candidate>> {
    Candidate::parse_list(SHIPPED)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ry;

    fn probe(text: &str) -> ProbeVerdict {
        probe_irreducible(&parse_ry(text).unwrap(), &SubringSpec::zst(), &ProbeBudget::default()).unwrap()
    }

    #[test]
    fn probe_examples() {
        assert_eq!(probe("1"), ProbeVerdict::Unit);
        assert_eq!(probe("-7"), ProbeVerdict::Atom { reason: AtomReason::PrimeInteger });
        assert!(matches!(probe("6"), ProbeVerdict::Split { kind: SplitKind::IntegerFactor, .. }));
        assert_eq!(probe("x"), ProbeVerdict::Atom { reason: AtomReason::Linear });
        assert_eq!(probe("y"), ProbeVerdict::Atom { reason: AtomReason::Linear });
        assert!(matches!(probe("s*x^2*y + t*x^2"), ProbeVerdict::Split { kind: SplitKind::IntegerContent, .. }));
        assert!(matches!(probe("2*x + 4*y"), ProbeVerdict::Split { kind: SplitKind::IntegerContent, .. }));
        assert_eq!(probe("1 + x*y"), ProbeVerdict::Atom { reason: AtomReason::PrimitiveLinearInY });
        assert_eq!(probe("1 + x*y^2"), ProbeVerdict::Atom { reason: AtomReason::PrimitiveLinearInX });
        assert!(matches!(probe("x + x*y"), ProbeVerdict::Split { kind: SplitKind::XContent, .. }));
        assert!(matches!(probe("x + y + x*y + y^2"), ProbeVerdict::Split { kind: SplitKind::YContent, .. }));
        // (1 + x y)(2 + x y) is not reached by the structured divisors
        assert!(matches!(probe("2 + 3*x*y + x^2*y^2"), ProbeVerdict::UnknownAtBudget { .. }));
    }

    #[test]
    fn splits_multiply_back() {
        for text in ["6", "s*x^2*y + t*x^2", "x + x*y", "1 + x + y + x*y", "x + y + x*y + y^2", "y + x*y"] {
            let f = parse_ry(text).unwrap();
            if let ProbeVerdict::Split { left, right, .. } = probe(text) {
                assert_eq!(left.mul(&right), f, "{text}");
                assert!(membership_ry(&left, &SubringSpec::zst()) && membership_ry(&right, &SubringSpec::zst()));
            } else {
                panic!("{text} should split");
            }
        }
    }

    #[test]
    fn shipped_corpus_has_no_valid_candidate() {
        let cands = shipped_candidates().unwrap();
        assert_eq!(cands.len(), 20);
        for c in &cands {
            let v = refute_quasi_atomic_candidate(&c.f, &c.factors, &ProbeBudget::default()).unwrap();
            assert!(matches!(v, RefuteVerdict::Invalid { .. }), "{}: {v:?}", c.label);
        }
    }

    #[test]
    fn refuter_reasons() {
        let b = ProbeBudget::default();
        let one = RYPoly::one();
        let ps = |v: &[&str]| v.iter().map(|t| parse_ry(t).unwrap()).collect::<Vec<_>>();
        let v = refute_quasi_atomic_candidate(&one, &ps(&["x", "x", "s*y + t"]), &b).unwrap();
        assert!(matches!(v, RefuteVerdict::Invalid { reason: InvalidReason::NonMember { index: 2, .. } }));
        let v = refute_quasi_atomic_candidate(&one, &ps(&["s*x^2*y + t*x^2"]), &b).unwrap();
        assert!(matches!(v, RefuteVerdict::Invalid { reason: InvalidReason::ReducibleFactor { index: 0, .. } }));
        let v = refute_quasi_atomic_candidate(&one, &ps(&["x", "y"]), &b).unwrap();
        assert!(matches!(v, RefuteVerdict::Invalid { reason: InvalidReason::ProductMismatch { .. } }));
        let v = refute_quasi_atomic_candidate(&one, &[], &b).unwrap();
        assert!(matches!(v, RefuteVerdict::Invalid { reason: InvalidReason::Empty }));
        assert!(refute_quasi_atomic_candidate(&RYPoly::zero(), &ps(&["x"]), &b).is_err());
    }
}
