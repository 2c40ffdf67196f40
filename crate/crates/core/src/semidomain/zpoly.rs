//! Dense integer polynomials and Kronecker's divisor search.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::Rational;
use crate::error::{domain, Result};

/// Largest degree handled by [`find_divisor`].
pub const KRONECKER_MAX_DEGREE: usize = 4;

/// Polynomial in `Z[x]`, coefficients ascending, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / (sign(lc) * content)`: primitive with positive leading coefficient.
    pub fn primitive(&self) -> (BigInt, ZPoly) {
        if self.is_zero() {
            return (BigInt::zero(), ZPoly::default());
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        let p = ZPoly { coeffs: self.coeffs.iter().map(|a| a / &c).collect() };
        (c, p)
    }

    pub fn scale(&self, c: &BigInt) -> ZPoly {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// Quotient in `Z[x]` when `d` divides `self` there.
    pub fn exact_div(&self, d: &ZPoly) -> Option<ZPoly> {
        let dn = d.degree()?;
        if self.is_zero() {
            return Some(ZPoly::default());
        }
        let n = self.degree()?;
        if n < dn {
            return None;
        }
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); n - dn + 1];
        for k in (0..=n - dn).rev() {
            let top = &rem[k + dn];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &q * b;
            }
            quo[k] = q;
        }
        rem.iter().all(|c| c.is_zero()).then(|| Self::from_coeffs(quo))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs().to_u64().expect("evaluation fits in 64 bits");
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Lagrange interpolation through `(xs[i], ys[i])`; `None` unless the
/// interpolant has integer coefficients.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Option<ZPoly> {
    let k = xs.len();
    let mut acc = vec![Rational::zero(); k];
    for i in 0..k {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for j in (0..k).filter(|&j| j != i) {
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (e, c) in basis.iter().enumerate() {
                next[e + 1] += c;
                next[e] -= &(c * Rational::from(xs[j].clone()));
            }
            basis = next;
            denom *= &Rational::from(&xs[i] - &xs[j]);
        }
        let w = Rational::from(ys[i].clone()) / denom;
        for (e, c) in basis.iter().enumerate() {
            acc[e] += &(c * &w);
        }
    }
    let mut coeffs = Vec::with_capacity(k);
    for c in acc {
        coeffs.push(c.to_integer()?);
    }
    Some(ZPoly::from_coeffs(coeffs))
}

/// A divisor of `f` of degree between 1 and `deg f / 2`, found by Kronecker's
/// method: a divisor `g` of degree `k` is determined by its values at `k + 1`
/// integer points, each of which divides the value of `f` there.
pub fn find_divisor(f: &ZPoly) -> Result<Option<ZPoly>> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return domain("divisor search needs a nonconstant polynomial"),
    };
    if n > KRONECKER_MAX_DEGREE {
        return domain(format!("degree {n} exceeds the Kronecker bound {KRONECKER_MAX_DEGREE}"));
    }
    if n == 1 {
        return Ok(None);
    }
    let mut points = Vec::new();
    let mut values = Vec::new();
    let mut x = 0i64;
    while points.len() < n / 2 + 1 {
        let bx = BigInt::from(x);
        let v = f.eval(&bx);
        if v.is_zero() {
            return Ok(Some(ZPoly::from_coeffs(vec![-bx, BigInt::one()])));
        }
        points.push(bx);
        values.push(v);
        x = if x > 0 { -x } else { 1 - x };
    }
    for k in 1..=n / 2 {
        let xs = &points[..=k];
        let choices: Vec<Vec<BigInt>> = values[..=k]
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let ds = divisors(v);
                if i == 0 {
                    ds
                } else {
                    ds.iter().flat_map(|d| [d.clone(), -d]).collect()
                }
            })
            .collect();
        let mut idx = vec![0usize; k + 1];
        loop {
            let ys: Vec<BigInt> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
            if let Some(g) = interpolate(xs, &ys) {
                if g.degree() == Some(k) && f.exact_div(&g).is_some() {
                    return Ok(Some(g.primitive().1));
                }
            }
            let mut pos = 0;
            loop {
                if pos > k {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos > k {
                break;
            }
        }
    }
    Ok(None)
}

/// Whether `f` is not a product of two nonconstant polynomials of `Z[x]`.
pub fn indecomposable_z(f: &ZPoly) -> Result<bool> {
    if f.is_constant() {
        return domain("indecomposability of a constant");
    }
    Ok(find_divisor(&f.primitive().1)?.is_none())
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ZPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
