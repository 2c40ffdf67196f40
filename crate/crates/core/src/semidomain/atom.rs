//! Bounded reducibility search in `F_p[M]`.
//!
//! A factorization `f = g h` in `F_p[M]` with all exponents in `(1/N) Z`
//! becomes the factorization `f(x^N) = g(x^N) h(x^N)` in `F_p[x]`. The search
//! runs over `N = D (qr)^j` for `j` up to a budget, enumerates every split of
//! the irreducible factors of `f(x^N)` into two blocks, maps each block back
//! and asks whether both supports lie in the monoid.

use num_traits::ToPrimitive;
use serde::Serialize;

use super::{CoeffDomain, PolyExpr};
use crate::arith::{in_localization, Rational};
use crate::error::{domain, Result};
use crate::ff::{factorize, FpPoly};
use crate::monoid::{is_atom_bounded, membership, AtomVerdict, MembershipCertificate, PuiseuxMonoidSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportEntry {
    pub exponent: Rational,
    pub certificate: Option<MembershipCertificate>,
    /// rejected by the denominator test without running the search
    pub outside_localization: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportReport {
    pub depth: usize,
    pub entries: Vec<SupportEntry>,
    pub all_certified: bool,
}

/// Membership certificate for every exponent of `f`.
pub fn support_in_monoid(f: &PolyExpr, spec: &PuiseuxMonoidSpec) -> SupportReport {
    let primes = spec.denominator_primes();
    let entries: Vec<SupportEntry> = f
        .support()
        .into_iter()
        .map(|e| {
            let outside = primes.as_ref().is_some_and(|ps| !in_localization(&e, ps));
            let certificate = if outside { None } else { membership(&e, spec) };
            SupportEntry { exponent: e, certificate, outside_localization: outside }
        })
        .collect();
    let all_certified = entries.iter().all(|e| e.certificate.is_some());
    SupportReport { depth: spec.depth, entries, all_certified }
}

/// `f / g` in `S[Q_{>=0}]` when the division is exact.
pub fn exact_divide(f: &PolyExpr, g: &PolyExpr) -> Result<Option<PolyExpr>> {
    f.div_exact(g)
}

/// Limits of [`atom_test_bounded`], reported with every verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AtomTestBudget {
    /// largest `j` in the denominators `D (qr)^j`
    pub max_power: u32,
    /// largest degree of `f(x^N)` handed to the factorizer
    pub max_degree: usize,
    /// largest number of two-block splits examined per `N`
    pub max_splits: u64,
}

impl Default for AtomTestBudget {
    fn default() -> Self {
        AtomTestBudget { max_power: 2, max_degree: 400, max_splits: 1 << 14 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum AtomTestVerdict {
    /// `f = left * right` with neither factor a unit and both supports certified.
    Reducible {
        left: PolyExpr,
        right: PolyExpr,
        left_support: SupportReport,
        right_support: SupportReport,
        denominator: u64,
        budget: AtomTestBudget,
    },
    /// No factorization within the searched denominators.
    AtomAtDepth { depth: usize, budget: AtomTestBudget, denominators: Vec<u64> },
    Unit,
    /// The search could not be completed; `reason` says why.
    Unknown { reason: String, budget: AtomTestBudget, denominators: Vec<u64> },
}

impl AtomTestVerdict {
    pub fn is_reducible(&self) -> bool {
        matches!(self, AtomTestVerdict::Reducible { .. })
    }
}

/// Bounded atom test for `f` in `F_p[M]`, `M` the truncation `spec`.
pub fn atom_test_bounded(
    f: &PolyExpr,
    spec: &PuiseuxMonoidSpec,
    budget: &AtomTestBudget,
) -> Result<AtomTestVerdict> {
    if !matches!(f.coeff_domain(), CoeffDomain::Fp(_)) {
        return domain("the atom test runs over F_p coefficients");
    }
    if f.is_zero() {
        return domain("atom test of zero");
    }
    if f.is_unit() {
        return Ok(AtomTestVerdict::Unit);
    }
    let support = support_in_monoid(f, spec);
    if !support.all_certified {
        return Ok(AtomTestVerdict::Unknown {
            reason: "support not certified in the monoid".into(),
            budget: *budget,
            denominators: vec![],
        });
    }
    if f.is_monomial() {
        return monomial_verdict(f, spec, budget, &support);
    }
    let base = f.exponent_lcm().to_u64();
    let scale = spec.denominator_primes().map(|ps| ps.iter().product::<u64>()).unwrap_or(1);
    let mut tried = Vec::new();
    let mut n = match base {
        Some(b) => b,
        None => return unknown("exponent denominators too large", budget, tried),
    };
    let deg = f.degree().unwrap().clone();
    for j in 0..=budget.max_power {
        if j > 0 {
            if scale == 1 {
                break;
            }
            n = match n.checked_mul(scale) {
                Some(v) => v,
                None => return unknown("denominator overflow", budget, tried),
            };
        }
        let top = (&deg * Rational::from_integer(n)).to_integer().and_then(|d| d.to_usize());
        if top.is_none_or(|d| d > budget.max_degree) {
            return unknown(&format!("degree cap reached at N = {n}"), budget, tried);
        }
        let fx = f.to_fppoly_scaled(n)?;
        match search_splits(&fx, n, spec, budget)? {
            Split::Found(left, right, ls, rs) => {
                return Ok(AtomTestVerdict::Reducible {
                    left,
                    right,
                    left_support: ls,
                    right_support: rs,
                    denominator: n,
                    budget: *budget,
                });
            }
            Split::TooMany => {
                return unknown(&format!("split cap reached at N = {n}"), budget, tried);
            }
            Split::None => tried.push(n),
        }
    }
    Ok(AtomTestVerdict::AtomAtDepth { depth: spec.depth, budget: *budget, denominators: tried })
}

fn unknown(reason: &str, budget: &AtomTestBudget, tried: Vec<u64>) -> Result<AtomTestVerdict> {
    Ok(AtomTestVerdict::Unknown { reason: reason.into(), budget: *budget, denominators: tried })
}

/// Divisors of `c x^e` are monomials, so `c x^e` is an atom exactly when `e`
/// is an atom of the monoid.
fn monomial_verdict(
    f: &PolyExpr,
    spec: &PuiseuxMonoidSpec,
    budget: &AtomTestBudget,
    support: &SupportReport,
) -> Result<AtomTestVerdict> {
    let dom = f.coeff_domain();
    let (e, c) = f.terms().next().map(|(e, c)| (e.clone(), c.clone())).unwrap();
    let cert = support.entries[0].certificate.clone().expect("certified");
    let values = spec.values();
    let split = if cert.length() >= 2 {
        let (&i, _) = cert.coefficients.iter().next().unwrap();
        Some(values[i].clone())
    } else {
        match is_atom_bounded(&e, spec)? {
            AtomVerdict::AtomAtDepth { .. } => None,
            AtomVerdict::Reducible { certificate } => {
                let (&i, _) = certificate.coefficients.iter().next().unwrap();
                Some(values[i].clone())
            }
        }
    };
    let Some(part) = split else {
        return Ok(AtomTestVerdict::AtomAtDepth { depth: spec.depth, budget: *budget, denominators: vec![] });
    };
    let left = PolyExpr::x_pow(dom, part)?;
    let right = PolyExpr::monomial(dom, c, &e - left.degree().unwrap())?;
    Ok(AtomTestVerdict::Reducible {
        left_support: support_in_monoid(&left, spec),
        right_support: support_in_monoid(&right, spec),
        left,
        right,
        denominator: e.denom().to_u64().unwrap_or(0),
        budget: *budget,
    })
}

enum Split {
    Found(PolyExpr, PolyExpr, SupportReport, SupportReport),
    None,
    TooMany,
}

/// Every split of the irreducible factors of `fx` into two nonempty blocks,
/// in a fixed order.
fn search_splits(fx: &FpPoly, n: u64, spec: &PuiseuxMonoidSpec, budget: &AtomTestBudget) -> Result<Split> {
    let fac = factorize(fx)?;
    let total: u64 = fac
        .factors
        .iter()
        .try_fold(1u64, |acc, (_, m)| acc.checked_mul(*m as u64 + 1))
        .unwrap_or(u64::MAX);
    if total <= 2 {
        return Ok(Split::None);
    }
    if total - 2 > budget.max_splits {
        return Ok(Split::TooMany);
    }
    let p = fx.modulus();
    let mut counts = vec![0usize; fac.factors.len()];
    loop {
        if !advance(&mut counts, &fac.factors) {
            break;
        }
        let full = counts.iter().zip(&fac.factors).all(|(c, (_, m))| c == m);
        if full {
            continue;
        }
        let g = counts
            .iter()
            .zip(&fac.factors)
            .fold(FpPoly::one(p), |acc, (&c, (h, _))| acc.mul(&h.pow(c as u64)));
        let h = fx.exact_div(&g).expect("block divides");
        let left = PolyExpr::from_fppoly_scaled(&g, n);
        let right = PolyExpr::from_fppoly_scaled(&h, n);
        let ls = support_in_monoid(&left, spec);
        if !ls.all_certified {
            continue;
        }
        let rs = support_in_monoid(&right, spec);
        if rs.all_certified {
            return Ok(Split::Found(left, right, ls, rs));
        }
    }
    Ok(Split::None)
}

/// Next multiplicity vector in lexicographic order; `false` after the last.
fn advance(counts: &mut [usize], factors: &[(FpPoly, usize)]) -> bool {
    for (c, (_, m)) in counts.iter_mut().zip(factors) {
        if *c < *m {
            *c += 1;
            return true;
        }
        *c = 0;
    }
    false
}

/// Indecomposability in `F_p[M]`: over a field the non-units are exactly the
/// nonconstant expressions, so this is the bounded atom test on a
/// nonconstant input.
pub fn indecomposable_in_monoid(
    f: &PolyExpr,
    spec: &PuiseuxMonoidSpec,
    budget: &AtomTestBudget,
) -> Result<AtomTestVerdict> {
    if f.is_constant() {
        return domain("indecomposability of a constant");
    }
    atom_test_bounded(f, spec, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn f2(terms: &[Rational]) -> PolyExpr {
        PolyExpr::new(CoeffDomain::Fp(2), terms.iter().map(|e| (e.clone(), Rational::one()))).unwrap()
    }

    #[test]
    fn supports() {
        let m = PuiseuxMonoidSpec::mqr(2, 3, 1).unwrap();
        let rep = support_in_monoid(&f2(&[r(1, 2), r(0, 1)]), &m);
        assert!(rep.all_certified);
        let rep = support_in_monoid(&f2(&[r(1, 5)]), &PuiseuxMonoidSpec::mqr(2, 3, 6).unwrap());
        assert!(!rep.all_certified && rep.entries[0].outside_localization);
        let rep = support_in_monoid(&f2(&[r(17, 72)]), &m);
        assert_eq!(rep.entries[0].certificate.as_ref().unwrap().labeled(&m).get("a1"), Some(&1));
    }

    #[test]
    fn frobenius_witness() {
        let m = PuiseuxMonoidSpec::mqr(2, 3, 6).unwrap();
        let f = f2(&[r(2, 1), r(1, 1), r(0, 1)]);
        let v = atom_test_bounded(&f, &m, &AtomTestBudget::default()).unwrap();
        let AtomTestVerdict::Reducible { left, right, .. } = v else { panic!("{v:?}") };
        let w = f2(&[r(1, 1), r(1, 2), r(0, 1)]);
        assert_eq!((left, right), (w.clone(), w));
    }

    #[test]
    fn monomials_and_units() {
        let m = PuiseuxMonoidSpec::mqr(2, 3, 6).unwrap();
        let b = AtomTestBudget::default();
        let a1 = f2(&[r(17, 72)]);
        assert!(matches!(atom_test_bounded(&a1, &m, &b).unwrap(), AtomTestVerdict::AtomAtDepth { depth: 6, .. }));
        let two = PolyExpr::constant(CoeffDomain::Fp(5), r(2, 1)).unwrap();
        assert_eq!(atom_test_bounded(&two, &m, &b).unwrap(), AtomTestVerdict::Unit);
        let x = f2(&[r(1, 1)]);
        let v = indecomposable_in_monoid(&x, &m, &b).unwrap();
        let AtomTestVerdict::Reducible { left, right, .. } = v else { panic!("{v:?}") };
        assert_eq!(left.mul(&right).unwrap(), x);
    }

    #[test]
    fn division() {
        let g = f2(&[r(1, 1), r(1, 2), r(0, 1)]);
        let f = g.pow(2);
        assert_eq!(exact_divide(&f, &g).unwrap(), Some(g.clone()));
        assert_eq!(exact_divide(&g, &f2(&[r(1, 3), r(0, 1)])).unwrap(), None);
    }
}
