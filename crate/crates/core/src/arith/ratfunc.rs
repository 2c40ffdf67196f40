use std::fmt;

use num_traits::Zero;

use super::{MPoly, Rational};
use crate::error::{domain, Result};

/// Element of `Q(s, t)` stored as `numerator / denominator`.
///
/// Kept in lowest terms with a primitive denominator of positive leading
/// coefficient.
#[derive(Clone)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

/// Binary field operations on [`RatFunc`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Eq,
}

/// Result of [`ratfunc_arith`].
#[derive(Clone, Debug, PartialEq)]
pub enum FieldValue {
    Value(RatFunc),
    Bool(bool),
}

/// Dispatch entry point over the field operations; `inv` ignores `b`.
pub fn ratfunc_arith(a: &RatFunc, b: &RatFunc, op: FieldOp) -> Result<FieldValue> {
    Ok(match op {
        FieldOp::Add => FieldValue::Value(a.add(b)),
        FieldOp::Mul => FieldValue::Value(a.mul(b)),
        FieldOp::Inv => FieldValue::Value(a.inv()?),
        FieldOp::Eq => FieldValue::Bool(a == b),
    })
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return domain("zero denominator in rational function");
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: MPoly) -> Self {
        Self::normalized(p, MPoly::one())
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }

    pub fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn s() -> Self {
        Self::from_poly(MPoly::s())
    }

    pub fn t() -> Self {
        Self::from_poly(MPoly::t())
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: MPoly::one() };
        }
        let (mut num, mut den) = (num, den);
        let common = {
            let a = num.monomial_content();
            let b = den.monomial_content();
            super::mpoly::Monomial::new(a.s.min(b.s), a.t.min(b.t))
        };
        if common != super::mpoly::Monomial::ONE {
            num = num.div_monomial(common);
            den = den.div_monomial(common);
        }
        if den.as_constant().is_none() {
            let g = num.gcd(&den);
            if g.as_constant().is_none() {
                num = num.exact_div(&g).expect("gcd divides");
                den = den.exact_div(&g).expect("gcd divides");
            }
        }
        let (cn, pn) = num.primitive_part();
        let (cd, pd) = den.primitive_part();
        let c = &cn / &cd;
        RatFunc { num: pn.scale(&c), den: pd }
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return Self::normalized(self.num.add(&o.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return domain("inverse of zero");
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// The rational value when this element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if let (Some(n), Some(d)) = (self.num.as_constant(), self.den.as_constant()) {
            return Some(n / d);
        }
        let (_, ln) = self.num.leading()?;
        let (_, ld) = self.den.leading()?;
        let c = ln / ld;
        (self.den.scale(&c) == self.num).then_some(c)
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn is_integer(&self) -> bool {
        self.as_rational().is_some_and(|c| c.is_integer())
    }

    /// Whether the element lies in `Q(s)`: its `t`-derivative vanishes.
    pub fn free_of_t(&self) -> bool {
        self.num.partial_t().mul(&self.den) == self.num.mul(&self.den.partial_t())
    }

    /// Total degree of numerator plus denominator; a size measure for search budgets.
    pub fn complexity(&self) -> u32 {
        self.num.total_degree().unwrap_or(0).max(self.den.total_degree().unwrap_or(0))
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &RatFunc) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::from_rational(c)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

fn needs_parens(p: &MPoly) -> bool {
    p.num_terms() > 1
}

impl fmt::Display for RatFunc {
    /// `num` when the denominator is one, otherwise `(num)/(den)` with
    /// parentheses dropped around single terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.den.as_constant() {
            if c.is_one() {
                return write!(f, "{}", self.num);
            }
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if needs_parens(&self.den) || self.den.to_string().contains('*') {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl std::ops::Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        RatFunc::add(&self, &o)
    }
}
