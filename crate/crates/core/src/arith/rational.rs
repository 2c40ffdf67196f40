use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// Reduced fraction of arbitrary-precision integers with positive denominator.
///
/// Zero is stored as `0/1`. Ordering is the usual order on `Q`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return domain("zero denominator");
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// `n/d` for machine integers; panics on `d == 0`. Intended for literals.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::new(n, d).expect("nonzero denominator")
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return domain("inverse of zero");
        }
        Ok(Rational(self.0.recip()))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 && self.is_zero() {
            return domain("negative power of zero");
        }
        Ok(Rational(num_traits::Pow::pow(&self.0, e)))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

/// `v_p(q) = v_p(num) - v_p(den)` for nonzero `q` and prime `p`.
pub fn padic_valuation(q: &Rational, p: u64) -> Result<i64> {
    if q.is_zero() {
        return domain("valuation of zero");
    }
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let p = BigInt::from(p);
    Ok(int_valuation(q.numer(), &p) as i64 - int_valuation(q.denom(), &p) as i64)
}

fn int_valuation(n: &BigInt, p: &BigInt) -> u64 {
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() {
        let (quo, rem) = n.div_rem(p);
        if !rem.is_zero() {
            break;
        }
        n = quo;
        v += 1;
    }
    v
}

/// Membership of `q` in `Z[1/p : p in primes]`: every prime factor of the
/// reduced denominator must belong to `primes`.
pub fn in_localization(q: &Rational, primes: &[u64]) -> bool {
    let mut den = q.denom().clone();
    for &p in primes {
        if p < 2 {
            continue;
        }
        let p = BigInt::from(p);
        loop {
            let (quo, rem) = den.div_rem(&p);
            if !rem.is_zero() {
                break;
            }
            den = quo;
        }
    }
    den.is_one()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `int` or `num/den`, each with an optional leading sign.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad(0, "invalid integer"))?;
        match den {
            None => Ok(Rational::from_integer(num)),
            Some(d) => {
                let den: BigInt = d.parse().map_err(|_| bad(s.find('/').unwrap_or(0) + 1, "invalid denominator"))?;
                if den.is_zero() {
                    return Err(Error::Domain("zero denominator".into()));
                }
                Rational::new(num, den)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);
// Division panics on a zero divisor, like integer division; use `recip` for a checked path.
forward_binop!(Div, div, /);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_rational_reduces() {
        assert_eq!(Rational::new(2, 4).unwrap().to_string(), "1/2");
        let z = Rational::new(0, 5).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(Rational::new(34, 144).unwrap().to_string(), "17/72");
        assert_eq!(Rational::new(3, -6).unwrap().to_string(), "-1/2");
        assert!(matches!(Rational::new(1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&Rational::frac(1, 2), 2).unwrap(), -1);
        assert_eq!(padic_valuation(&Rational::from(18), 3).unwrap(), 2);
        assert_eq!(padic_valuation(&Rational::frac(17, 72), 5).unwrap(), 0);
        assert!(padic_valuation(&Rational::zero(), 2).is_err());
        assert!(padic_valuation(&Rational::one(), 4).is_err());
    }

    #[test]
    fn localization() {
        assert!(in_localization(&Rational::frac(17, 72), &[2, 3]));
        assert!(!in_localization(&Rational::frac(1, 5), &[2, 3]));
        assert!(in_localization(&Rational::from(7), &[]));
    }

    #[test]
    fn parse_forms() {
        assert_eq!("17/72".parse::<Rational>().unwrap(), Rational::frac(17, 72));
        assert_eq!("-4".parse::<Rational>().unwrap(), Rational::from(-4));
        assert_eq!("6/4".parse::<Rational>().unwrap(), Rational::frac(3, 2));
        assert!(matches!("1/0".parse::<Rational>(), Err(Error::Domain(_))));
        assert!(matches!("a/2".parse::<Rational>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn primes() {
        assert_eq!(prime_factors(72), vec![2, 3]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert!(is_prime(31) && !is_prime(1) && !is_prime(91));
    }
}
