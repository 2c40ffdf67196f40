//! Prime fields `F_p`, dense polynomials over them, the binomial and
//! trinomial irreducibility criteria, and an independent irreducibility
//! oracle and factorizer used to validate the criteria.

mod criteria;
mod factor;
mod oracle;
mod poly;

use std::fmt;

use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{domain, Result};

pub use criteria::{
    binomial_irreducible, multiplicative_order, primitive_roots, trinomial, trinomial_parameter,
};
pub use factor::{factorize, Factorization};
pub use oracle::{
    is_irreducible_oracle, is_irreducible_with, irreducible_by_frobenius, irreducible_by_trial_division,
    OracleConfig,
};
pub use poly::{frobenius_power_check, FpPoly};

/// Largest admissible modulus; keeps products of residues within `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

pub(crate) fn check_modulus(p: u64) -> Result<()> {
    if !is_prime(p) {
        return domain(format!("modulus {p} is not prime"));
    }
    if p >= MAX_MODULUS {
        return domain(format!("modulus {p} exceeds 2^32"));
    }
    Ok(())
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue via Fermat.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Element of the prime field `F_p`, value kept in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FpElem {
    value: u64,
    p: u64,
}

impl FpElem {
    pub fn new(value: i64, p: u64) -> Result<Self> {
        check_modulus(p)?;
        Ok(Self::reduce(value, p))
    }

    /// Unchecked constructor for a modulus already known to be prime.
    pub(crate) fn reduce(value: i64, p: u64) -> Self {
        let v = value.rem_euclid(p as i64) as u64;
        FpElem { value: v, p }
    }

    pub(crate) fn raw(value: u64, p: u64) -> Self {
        FpElem { value: value % p, p }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(self, o: FpElem) -> FpElem {
        debug_assert_eq!(self.p, o.p);
        FpElem { value: (self.value + o.value) % self.p, p: self.p }
    }

    pub fn sub(self, o: FpElem) -> FpElem {
        debug_assert_eq!(self.p, o.p);
        FpElem { value: (self.value + self.p - o.value) % self.p, p: self.p }
    }

    pub fn mul(self, o: FpElem) -> FpElem {
        debug_assert_eq!(self.p, o.p);
        FpElem { value: mul_mod(self.value, o.value, self.p), p: self.p }
    }

    pub fn neg(self) -> FpElem {
        FpElem { value: (self.p - self.value) % self.p, p: self.p }
    }

    pub fn pow(self, e: u64) -> FpElem {
        FpElem { value: pow_mod(self.value, e, self.p), p: self.p }
    }

    pub fn inv(self) -> Result<FpElem> {
        if self.is_zero() {
            return domain("inverse of zero in F_p");
        }
        Ok(FpElem { value: inv_mod(self.value, self.p), p: self.p })
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elem_arith() {
        let a = FpElem::new(-1, 7).unwrap();
        assert_eq!(a.value(), 6);
        assert_eq!(a.mul(a).value(), 1);
        assert_eq!(FpElem::new(3, 7).unwrap().inv().unwrap().value(), 5);
        assert!(FpElem::new(0, 7).unwrap().inv().is_err());
        assert!(FpElem::new(1, 8).is_err());
    }
}
