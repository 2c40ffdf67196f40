use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{check_modulus, inv_mod, mul_mod, FpElem};
use crate::error::{domain, Result};

/// Dense polynomial over `F_p`, coefficients in ascending degree order.
///
/// The zero polynomial has no coefficients; otherwise the last coefficient
/// is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// Builds from signed coefficients (ascending), reducing each mod `p`.
    pub fn new(p: u64, coeffs: &[i64]) -> Result<Self> {
        check_modulus(p)?;
        Ok(Self::from_raw(p, coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect()))
    }

    /// Builds from residues already in `[0, p)`; `p` must be prime.
    pub(crate) fn from_raw(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn from_elems(p: u64, coeffs: &[FpElem]) -> Result<Self> {
        check_modulus(p)?;
        if let Some(c) = coeffs.iter().find(|c| c.modulus() != p) {
            return domain(format!("coefficient over F_{} in a polynomial over F_{p}", c.modulus()));
        }
        Ok(Self::from_raw(p, coeffs.iter().map(|c| c.value()).collect()))
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::from_raw(p, vec![1 % p])
    }

    pub fn x(p: u64) -> Self {
        Self::monomial(p, 1, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::from_raw(p, vec![c % p])
    }

    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c % p;
        Self::from_raw(p, coeffs)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let c = c % self.p;
        Self::from_raw(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, o.p);
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % self.p).collect();
        Self::from_raw(self.p, v)
    }

    pub fn neg(&self) -> FpPoly {
        Self::from_raw(self.p, self.coeffs.iter().map(|&a| (self.p - a) % self.p).collect())
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, o.p);
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut v = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::from_raw(p, v)
    }

    pub fn pow(&self, mut e: u64) -> FpPoly {
        let mut base = self.clone();
        let mut acc = FpPoly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division; panics when `d` is zero.
    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let dn = d.coeffs.len() - 1;
        if self.coeffs.len() <= dn {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = inv_mod(d.leading(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dn];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dn], inv, p);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mul_mod(c, b, p)) % p;
            }
        }
        r.truncate(dn);
        (Self::from_raw(p, q), Self::from_raw(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &FpPoly) -> Option<FpPoly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect();
        Self::from_raw(p, v)
    }

    /// `self(x^m)`.
    pub fn compose_power(&self, m: usize) -> FpPoly {
        assert!(m >= 1);
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0u64; (self.coeffs.len() - 1) * m + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * m] = c;
        }
        Self::from_raw(self.p, v)
    }

    /// `self^e mod m` by square-and-multiply, exponent as little-endian bits source.
    pub fn pow_mod(&self, e: u128, m: &FpPoly) -> FpPoly {
        let mut base = self.rem(m);
        let mut acc = FpPoly::one(self.p).rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x % p, p) + c) % p)
    }

    /// Total order used to canonicalize factor lists: degree, then coefficients
    /// from the top.
    pub fn canonical_cmp(&self, o: &FpPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&o.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(o.coeffs.iter().rev()))
    }
}

/// Checks `g(x)^(p^n) == g(x^(p^n))` over `F_p`, the identity behind
/// raising cleared-denominator images to `p`-power exponents.
///
/// Returns `false` only if the arithmetic is broken.
pub fn frobenius_power_check(g: &FpPoly, n: u32) -> bool {
    let p = g.modulus();
    let q = (p as usize).pow(n);
    let mut lhs = g.clone();
    for _ in 0..n {
        lhs = lhs.pow(p);
    }
    lhs == g.compose_power(q)
}

impl fmt::Display for FpPoly {
    /// `c_k*x^k + ... + c_0`, descending, zero terms omitted, unit coefficients
    /// dropped on non-constant terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over F_{}", self, self.p)
    }
}

impl Serialize for FpPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
