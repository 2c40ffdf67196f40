//! Monoid semidomains `S[M]` for Puiseux monoids `M`: finite sums
//! `c_1 x^(q_1) + ... + c_n x^(q_n)` with nonnegative rational exponents.
//!
//! Coefficients live in `F_p`, `Z` or `Q`. Over `F_p` an expression moves to
//! and from `F_p[x]` by substituting `x -> x^D`, which is how factorizations
//! in `F_p[M]` are searched for.

mod ascent;
mod atom;
mod zpoly;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::Rational;
use crate::error::{domain, Error, Result};
use crate::ff::FpPoly;

pub use ascent::{ascent_factorization, ascent_fp, ascent_z, indecomposable_fp, Ascent, AscentFp, AscentZ};
pub use atom::{
    atom_test_bounded, exact_divide, indecomposable_in_monoid, support_in_monoid, AtomTestBudget,
    AtomTestVerdict, SupportEntry, SupportReport,
};
pub use zpoly::{find_divisor, indecomposable_z, ZPoly, KRONECKER_MAX_DEGREE};

/// Largest degree of a cleared-denominator image built by
/// [`PolyExpr::clear_denominators`].
pub const MAX_CLEARED_DEGREE: u64 = 1 << 20;

/// Coefficient semidomain of an expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffDomain {
    Fp(u64),
    Z,
    Q,
}

impl CoeffDomain {
    pub fn fp(p: u64) -> Result<Self> {
        crate::ff::FpElem::new(0, p)?;
        Ok(CoeffDomain::Fp(p))
    }

    /// Canonical representative of `c`, or an error when `c` is outside the
    /// domain. Residues are taken in `[0, p)`; over `F_p` only integers are
    /// accepted.
    pub fn admit(&self, c: &Rational) -> Result<Rational> {
        match self {
            CoeffDomain::Q => Ok(c.clone()),
            CoeffDomain::Z if c.is_integer() => Ok(c.clone()),
            CoeffDomain::Fp(_) if c.is_integer() => Ok(self.reduce(c)),
            _ => domain(format!("coefficient {c} is not in {self}")),
        }
    }

    fn reduce(&self, c: &Rational) -> Rational {
        match self {
            CoeffDomain::Fp(p) => {
                Rational::from_integer(c.numer().mod_floor(&BigInt::from(*p)))
            }
            _ => c.clone(),
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoeffDomain::Z)
    }

    pub fn is_unit(&self, c: &Rational) -> bool {
        match self {
            CoeffDomain::Z => c.abs().is_one(),
            _ => !c.is_zero(),
        }
    }

    fn inverse(&self, c: &Rational) -> Option<Rational> {
        match self {
            CoeffDomain::Fp(p) => {
                let v = c.numer().to_u64()?;
                (v != 0).then(|| Rational::from_integer(crate::ff::inv_mod(v, *p)))
            }
            CoeffDomain::Q => c.recip().ok(),
            CoeffDomain::Z => c.abs().is_one().then(|| c.clone()),
        }
    }
}

impl fmt::Display for CoeffDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffDomain::Fp(p) => write!(f, "F_{p}"),
            CoeffDomain::Z => f.write_str("Z"),
            CoeffDomain::Q => f.write_str("Q"),
        }
    }
}

/// Element of `S[Q_{>=0}]`: exponent to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyExpr {
    dom: CoeffDomain,
    terms: BTreeMap<Rational, Rational>,
}

/// Support, order, degree and the extreme coefficients of a nonzero expression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Structure {
    pub support: Vec<Rational>,
    pub order: Rational,
    pub degree: Rational,
    pub order_coeff: Rational,
    pub leading_coeff: Rational,
}

/// Binary operations accepted by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
}

pub fn arith(f: &PolyExpr, g: &PolyExpr, op: ArithOp) -> Result<PolyExpr> {
    match op {
        ArithOp::Add => f.add(g),
        ArithOp::Mul => f.mul(g),
    }
}

impl PolyExpr {
    /// Collects `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn new(dom: CoeffDomain, terms: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut out = PolyExpr::zero(dom);
        for (e, c) in terms {
            if e.is_negative() {
                return domain(format!("negative exponent {e}"));
            }
            let c = dom.admit(&c)?;
            out.accumulate(e, &c);
        }
        Ok(out)
    }

    pub fn zero(dom: CoeffDomain) -> Self {
        PolyExpr { dom, terms: BTreeMap::new() }
    }

    pub fn constant(dom: CoeffDomain, c: Rational) -> Result<Self> {
        Self::new(dom, [(Rational::zero(), c)])
    }

    pub fn one(dom: CoeffDomain) -> Self {
        Self::constant(dom, Rational::one()).expect("1 lies in every domain")
    }

    pub fn monomial(dom: CoeffDomain, c: Rational, e: Rational) -> Result<Self> {
        Self::new(dom, [(e, c)])
    }

    /// `x^e` with coefficient 1.
    pub fn x_pow(dom: CoeffDomain, e: Rational) -> Result<Self> {
        Self::monomial(dom, Rational::one(), e)
    }

    pub fn coeff_domain(&self) -> CoeffDomain {
        self.dom
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Rational) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn support(&self) -> Vec<Rational> {
        self.terms.keys().cloned().collect()
    }

    pub fn order(&self) -> Option<&Rational> {
        self.terms.keys().next()
    }

    pub fn degree(&self) -> Option<&Rational> {
        self.terms.keys().next_back()
    }

    pub fn structure(&self) -> Result<Structure> {
        let (Some((o, oc)), Some((d, lc))) = (self.terms.iter().next(), self.terms.iter().next_back()) else {
            return domain("structure of the zero expression");
        };
        Ok(Structure {
            support: self.support(),
            order: o.clone(),
            degree: d.clone(),
            order_coeff: oc.clone(),
            leading_coeff: lc.clone(),
        })
    }

    fn accumulate(&mut self, e: Rational, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *entry = self.dom.reduce(&(&*entry + c));
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn same_domain(&self, o: &PolyExpr) -> Result<()> {
        if self.dom != o.dom {
            return Err(Error::Mismatch(format!("{} vs {}", self.dom, o.dom)));
        }
        Ok(())
    }

    pub fn add(&self, o: &PolyExpr) -> Result<PolyExpr> {
        self.same_domain(o)?;
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.accumulate(e.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> PolyExpr {
        let mut out = PolyExpr::zero(self.dom);
        for (e, c) in &self.terms {
            out.accumulate(e.clone(), &-c);
        }
        out
    }

    pub fn sub(&self, o: &PolyExpr) -> Result<PolyExpr> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &PolyExpr) -> Result<PolyExpr> {
        self.same_domain(o)?;
        let mut out = PolyExpr::zero(self.dom);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.accumulate(e1 + e2, &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> PolyExpr {
        let mut acc = PolyExpr::one(self.dom);
        for _ in 0..n {
            acc = acc.mul(self).expect("same domain");
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Result<PolyExpr> {
        self.mul(&PolyExpr::constant(self.dom, c.clone())?)
    }

    /// `self / g` by sparse long division from the top degree, when the
    /// quotient exists in the same domain.
    pub fn div_exact(&self, g: &PolyExpr) -> Result<Option<PolyExpr>> {
        self.same_domain(g)?;
        let (Some((ge, gc)), Some(go)) = (g.terms.iter().next_back(), g.order()) else {
            return domain("division by zero");
        };
        let Some(fo) = self.order() else {
            return Ok(Some(PolyExpr::zero(self.dom)));
        };
        let floor = fo - go;
        let mut rem = self.clone();
        let mut quo = PolyExpr::zero(self.dom);
        while let Some((re, rc)) = rem.terms.iter().next_back() {
            let e = re - ge;
            if e < floor {
                return Ok(None);
            }
            let c = match self.dom {
                CoeffDomain::Z => {
                    let (q, r) = rc.numer().div_rem(gc.numer());
                    if !r.is_zero() {
                        return Ok(None);
                    }
                    Rational::from_integer(q)
                }
                _ => self.dom.reduce(&(rc * self.dom.inverse(gc).expect("nonzero in a field"))),
            };
            let t = PolyExpr { dom: self.dom, terms: BTreeMap::from([(e, c)]) };
            rem = rem.sub(&t.mul(g)?)?;
            quo = quo.add(&t)?;
        }
        Ok(Some(quo))
    }

    /// Units of `S[M]` for reduced `M` are the unit constants of `S`.
    pub fn is_unit(&self) -> bool {
        self.is_monomial() && self.is_constant() && self.dom.is_unit(&self.coeff(&Rational::zero()))
    }

    /// `f(x^c)`: every exponent multiplied by `c > 0`.
    pub fn substitute_power(&self, c: &Rational) -> Result<PolyExpr> {
        if !c.is_positive() {
            return domain(format!("substitution exponent {c} is not positive"));
        }
        Ok(PolyExpr { dom: self.dom, terms: self.terms.iter().map(|(e, v)| (e * c, v.clone())).collect() })
    }

    /// Lcm of the exponent denominators (1 for the zero expression).
    pub fn exponent_lcm(&self) -> BigInt {
        self.terms.keys().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    /// `(f(x^D), D)` with `D` the exponent lcm, as a polynomial of `F_p[x]`.
    pub fn clear_denominators(&self) -> Result<(FpPoly, u64)> {
        let d = self.exponent_lcm().to_u64().filter(|&d| d <= MAX_CLEARED_DEGREE);
        let Some(d) = d else {
            return domain("exponent denominators too large to clear");
        };
        Ok((self.to_fppoly_scaled(d)?, d))
    }

    /// `f(x^n)` as a polynomial of `F_p[x]`; every scaled exponent must be an
    /// integer.
    pub fn to_fppoly_scaled(&self, n: u64) -> Result<FpPoly> {
        let CoeffDomain::Fp(p) = self.dom else {
            return domain(format!("expected F_p coefficients, found {}", self.dom));
        };
        let n = Rational::from_integer(n);
        let mut coeffs: Vec<u64> = Vec::new();
        for (e, c) in &self.terms {
            let k = (e * &n)
                .to_integer()
                .and_then(|k| k.to_u64())
                .filter(|&k| k <= MAX_CLEARED_DEGREE);
            let Some(k) = k else {
                return domain(format!("exponent {e} does not clear to a small integer"));
            };
            let k = k as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] = c.numer().to_u64().expect("residue");
        }
        let coeffs: Vec<i64> = coeffs.into_iter().map(|c| c as i64).collect();
        FpPoly::new(p, &coeffs)
    }

    pub fn from_fppoly(f: &FpPoly) -> PolyExpr {
        let dom = CoeffDomain::Fp(f.modulus());
        let mut out = PolyExpr::zero(dom);
        for (k, &c) in f.coeffs().iter().enumerate() {
            out.accumulate(Rational::from_integer(k as u64), &Rational::from_integer(c));
        }
        out
    }

    /// `g(x^(1/n))` for a standard polynomial `g`.
    pub fn from_fppoly_scaled(f: &FpPoly, n: u64) -> PolyExpr {
        Self::from_fppoly(f)
            .substitute_power(&Rational::frac(1, n as i64))
            .expect("positive exponent")
    }

    pub fn to_zpoly(&self) -> Result<ZPoly> {
        if self.dom != CoeffDomain::Z {
            return domain(format!("expected Z coefficients, found {}", self.dom));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (e, c) in &self.terms {
            let Some(k) = e.to_integer().and_then(|k| k.to_usize()) else {
                return domain(format!("exponent {e} is not a small integer"));
            };
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] = c.numer().clone();
        }
        Ok(ZPoly::from_coeffs(coeffs))
    }

    pub fn from_zpoly(f: &ZPoly) -> PolyExpr {
        let mut out = PolyExpr::zero(CoeffDomain::Z);
        for (k, c) in f.coeffs().iter().enumerate() {
            out.accumulate(Rational::from_integer(k as u64), &Rational::from_integer(c.clone()));
        }
        out
    }

    /// Leading coefficient made 1 when it is a unit of the domain.
    pub fn monic(&self) -> Option<PolyExpr> {
        let lc = self.terms.values().next_back()?;
        let inv = self.dom.inverse(lc)?;
        self.scale(&inv).ok()
    }
}

impl fmt::Display for PolyExpr {
    /// Highest exponent first, e.g. `x^2+x^(1/2)+3`, `2*x^(17/72)` or `-x+1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let c = if c.is_negative() {
                f.write_str("-")?;
                c.abs()
            } else {
                if i > 0 {
                    f.write_str("+")?;
                }
                c.clone()
            };
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            if e.is_one() {
                f.write_str("x")?;
            } else if e.is_integer() {
                write!(f, "x^{e}")?;
            } else {
                write!(f, "x^({e})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.dom)
    }
}

impl Serialize for PolyExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn fp(p: u64, terms: &[(Rational, i64)]) -> PolyExpr {
        PolyExpr::new(CoeffDomain::Fp(p), terms.iter().map(|(e, c)| (e.clone(), Rational::from(*c)))).unwrap()
    }

    #[test]
    fn structure_read_off() {
        let f = PolyExpr::new(CoeffDomain::Q, [(r(1, 2), r(1, 1)), (r(2, 1), r(1, 1))]).unwrap();
        let s = f.structure().unwrap();
        assert_eq!(s.support, vec![r(1, 2), r(2, 1)]);
        assert_eq!((s.order, s.degree), (r(1, 2), r(2, 1)));
        let one = PolyExpr::one(CoeffDomain::Q).structure().unwrap();
        assert_eq!((one.order, one.degree), (r(0, 1), r(0, 1)));
        assert!(PolyExpr::zero(CoeffDomain::Q).structure().is_err());
        let g = fp(2, &[(r(1, 1), 1), (r(1, 2), 1), (r(0, 1), 1)]);
        let s = g.structure().unwrap();
        assert_eq!((s.order, s.degree, s.order_coeff), (r(0, 1), r(1, 1), r(1, 1)));
    }

    #[test]
    fn frobenius_squares() {
        let h = fp(2, &[(r(1, 2), 1), (r(0, 1), 1)]);
        assert_eq!(h.pow(2), fp(2, &[(r(1, 1), 1), (r(0, 1), 1)]));
        let g = fp(2, &[(r(1, 1), 1), (r(1, 2), 1), (r(0, 1), 1)]);
        assert_eq!(g.pow(2), fp(2, &[(r(2, 1), 1), (r(1, 1), 1), (r(0, 1), 1)]));
        assert_eq!(g.mul(&PolyExpr::one(g.coeff_domain())).unwrap(), g);
        let q = PolyExpr::one(CoeffDomain::Q);
        assert!(matches!(g.add(&q), Err(Error::Mismatch(_))));
        assert!(matches!(g.mul(&fp(3, &[(r(0, 1), 1)])), Err(Error::Mismatch(_))));
    }

    #[test]
    fn units() {
        assert!(fp(5, &[(r(0, 1), 2)]).is_unit());
        assert!(!fp(5, &[(r(1, 2), 1)]).is_unit());
        assert!(!PolyExpr::zero(CoeffDomain::Fp(5)).is_unit());
        let two = PolyExpr::constant(CoeffDomain::Z, r(2, 1)).unwrap();
        assert!(!two.is_unit());
    }

    #[test]
    fn substitution_and_clearing() {
        let f = fp(2, &[(r(2, 1), 1), (r(1, 1), 1), (r(0, 1), 1)]);
        let f3 = f.substitute_power(&r(3, 1)).unwrap();
        assert_eq!(f3.to_string(), "x^6+x^3+1");
        let half = f.substitute_power(&r(1, 2)).unwrap();
        assert_eq!(half.to_string(), "x+x^(1/2)+1");
        assert_eq!(f.substitute_power(&r(1, 1)).unwrap(), f);
        let (g, d) = half.clear_denominators().unwrap();
        assert_eq!((g, d), (FpPoly::new(2, &[1, 1, 1]).unwrap(), 2));
        assert_eq!(f.clear_denominators().unwrap().1, 1);
        let m = fp(2, &[(r(17, 72), 1)]);
        let (g, d) = m.clear_denominators().unwrap();
        assert_eq!((g, d), (FpPoly::monomial(2, 1, 17), 72));
        assert_eq!(PolyExpr::from_fppoly_scaled(&FpPoly::monomial(2, 1, 17), 72), m);
        assert!(f.substitute_power(&r(0, 1)).is_err());
    }

    #[test]
    fn domain_admission() {
        assert!(PolyExpr::constant(CoeffDomain::Fp(5), r(1, 2)).is_err());
        assert!(PolyExpr::constant(CoeffDomain::Z, r(1, 2)).is_err());
        assert_eq!(PolyExpr::constant(CoeffDomain::Fp(5), r(-1, 1)).unwrap().to_string(), "4");
        assert!(PolyExpr::new(CoeffDomain::Q, [(r(-1, 2), r(1, 1))]).is_err());
        assert!(PolyExpr::constant(CoeffDomain::Fp(5), r(5, 1)).unwrap().is_zero());
    }
}
