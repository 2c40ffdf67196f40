use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

/// Exponent vector `s^i t^j`, ordered graded-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    pub s: u32,
    pub t: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { s: 0, t: 0 };

    pub fn new(s: u32, t: u32) -> Self {
        Monomial { s, t }
    }

    pub fn degree(&self) -> u32 {
        self.s + self.t
    }

    pub fn mul(self, o: Monomial) -> Monomial {
        Monomial { s: self.s + o.s, t: self.t + o.t }
    }

    pub fn divides(self, o: Monomial) -> bool {
        self.s <= o.s && self.t <= o.t
    }

    fn div(self, o: Monomial) -> Monomial {
        Monomial { s: self.s - o.s, t: self.t - o.t }
    }

    fn gcd(self, o: Monomial) -> Monomial {
        Monomial { s: self.s.min(o.s), t: self.t.min(o.t) }
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then(self.s.cmp(&o.s))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Polynomial in the indeterminates `s`, `t` with rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn s() -> Self {
        Self::term(Monomial::new(1, 0), Rational::one())
    }

    pub fn t() -> Self {
        Self::term(Monomial::new(0, 1), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The value when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            accumulate(&mut terms, *m, c);
        }
        MPoly { terms }
    }

    pub fn neg(&self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                accumulate(&mut terms, m1.mul(*m2), &(c1 * c2));
            }
        }
        MPoly { terms }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division; `None` when `d` does not divide `self` (or `d = 0`).
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (*dm, dc.clone());
        let mut rem = self.clone();
        let mut quo = MPoly::zero();
        while let Some((m, c)) = rem.leading() {
            if !dm.divides(*m) {
                return None;
            }
            let t = MPoly::term(m.div(dm), c / &dc);
            rem = rem.sub(&t.mul(d));
            quo = quo.add(&t);
        }
        Some(quo)
    }

    /// Positive-content normalization: returns `(c, p)` with `self = c * p`,
    /// `p` having coprime integer coefficients and positive leading coefficient.
    /// The zero polynomial yields `(0, 0)`.
    pub fn primitive_part(&self) -> (Rational, MPoly) {
        let Some((_, lc)) = self.leading() else {
            return (Rational::zero(), MPoly::zero());
        };
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut content = Rational::new(num, den).expect("nonzero lcm");
        if lc.is_negative() {
            content = -content;
        }
        let inv = content.recip().expect("nonzero content");
        (content, self.scale(&inv))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::ONE;
        };
        it.fold(*first, |acc, m| acc.gcd(*m))
    }

    pub fn div_monomial(&self, m: Monomial) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(k, c)| (k.div(m), c.clone())).collect() }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Greatest common divisor, normalized by [`MPoly::primitive_part`];
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &MPoly) -> MPoly {
        if self.is_zero() {
            return o.primitive_part().1;
        }
        if o.is_zero() {
            return self.primitive_part().1;
        }
        if let (Some(a), Some(b)) = (self.as_constant(), o.as_constant()) {
            debug_assert!(!a.is_zero() && !b.is_zero());
            return MPoly::one();
        }
        let (a, b) = (self.t_coeffs(), o.t_coeffs());
        let (ca, cb) = (s_content(&a), s_content(&b));
        let content = s_gcd(&ca, &cb);
        if a.len() == 1 || b.len() == 1 || coprime_at_some_point(&a, &b, |p, v| p.eval(v, &Rational::zero())) {
            return content;
        }
        let g = subresultant_gcd(divide_all(&a, &ca), divide_all(&b, &cb));
        let g = divide_all(&g, &s_content(&g));
        MPoly::from_t_coeffs(&g).mul(&content).primitive_part().1
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += &(c * &s.pow(m.s as i32).expect("nonnegative power") * &t.pow(m.t as i32).expect("nonnegative power"));
        }
        acc
    }

    /// Coefficients of the powers of `t`, each a polynomial in `s`.
    fn t_coeffs(&self) -> Vec<MPoly> {
        let n = self.terms.keys().map(|m| m.t as usize + 1).max().unwrap_or(0);
        let mut out = vec![MPoly::zero(); n];
        for (m, c) in &self.terms {
            out[m.t as usize].terms.insert(Monomial::new(m.s, 0), c.clone());
        }
        out
    }

    fn from_t_coeffs(cs: &[MPoly]) -> MPoly {
        let mut terms = BTreeMap::new();
        for (j, c) in cs.iter().enumerate() {
            for (m, v) in &c.terms {
                terms.insert(Monomial::new(m.s, j as u32), v.clone());
            }
        }
        MPoly { terms }
    }

    pub fn partial_t(&self) -> MPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.t > 0 {
                accumulate(&mut terms, Monomial::new(m.s, m.t - 1), &(c * Rational::from(m.t as i64)));
            }
        }
        MPoly { terms }
    }
}

/// Remainder of `a` by `b`, both polynomials in `s` alone.
fn s_rem(a: &MPoly, b: &MPoly) -> MPoly {
    let (bm, bc) = b.leading().expect("nonzero divisor");
    let (bs, bc) = (bm.s, bc.clone());
    let mut r = a.clone();
    while let Some((m, c)) = r.leading() {
        if m.s < bs {
            break;
        }
        let q = MPoly::term(Monomial::new(m.s - bs, 0), c / &bc);
        r = r.sub(&q.mul(b));
    }
    r
}

fn s_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = s_rem(&a, &b).primitive_part().1;
        a = std::mem::replace(&mut b, r);
    }
    a.primitive_part().1
}

fn s_content(cs: &[MPoly]) -> MPoly {
    cs.iter().fold(MPoly::zero(), |g, c| if c.is_zero() { g } else { s_gcd(&g, c) })
}

fn divide_all(cs: &[MPoly], d: &MPoly) -> Vec<MPoly> {
    cs.iter().map(|c| c.exact_div(d).expect("content divides")).collect()
}

const SAMPLE_POINTS: [i64; 4] = [2, -3, 5, 11];

/// True when, after substituting one of a few sample values, the leading
/// coefficients survive and the images are coprime over `Q`; this forces
/// the originals to be coprime over the fraction field.
pub(crate) fn coprime_at_some_point(a: &[MPoly], b: &[MPoly], eval: impl Fn(&MPoly, &Rational) -> Rational) -> bool {
    SAMPLE_POINTS.iter().any(|&v| {
        let v = Rational::from(v);
        let ea: Vec<Rational> = a.iter().map(|c| eval(c, &v)).collect();
        let eb: Vec<Rational> = b.iter().map(|c| eval(c, &v)).collect();
        let lead = |e: &[Rational]| e.last().is_some_and(|c| !c.is_zero());
        lead(&ea) && lead(&eb) && rational_gcd_degree(ea, eb) == 0
    })
}

/// Degree of the gcd of two nonzero dense polynomials over `Q`.
fn rational_gcd_degree(mut a: Vec<Rational>, mut b: Vec<Rational>) -> usize {
    let trim = |v: &mut Vec<Rational>| {
        while v.last().is_some_and(Rational::is_zero) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        while a.len() >= b.len() {
            let k = a.len() - b.len();
            let q = a.last().expect("nonempty") / b.last().expect("nonempty");
            for (i, c) in b.iter().enumerate() {
                a[i + k] -= &(&q * c);
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b` of coefficient
/// vectors (lowest degree first); trailing zeros trimmed.
fn prem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let n = b.len() - 1;
    let lb = &b[n];
    let mut r = a.to_vec();
    for k in (0..=a.len() - 1 - n).rev() {
        let lr = r[n + k].clone();
        for c in r.iter_mut().take(n + k + 1) {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + k] = r[i + k].sub(&bc.mul(&lr));
        }
    }
    while r.last().is_some_and(MPoly::is_zero) {
        r.pop();
    }
    r
}

/// A gcd over the fraction field of the coefficient ring, up to a
/// coefficient factor, by the subresultant remainder sequence. Both inputs
/// must be nonzero.
pub(crate) fn subresultant_gcd(a: Vec<MPoly>, b: Vec<MPoly>) -> Vec<MPoly> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let (mut g, mut h) = (MPoly::one(), MPoly::one());
    loop {
        if b.len() <= 1 {
            return vec![MPoly::one()];
        }
        let delta = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        let d = g.mul(&h.pow(delta));
        a = std::mem::replace(&mut b, r.iter().map(|c| c.exact_div(&d).expect("subresultant division")).collect());
        g = a.last().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).exact_div(&h.pow(delta - 1)).expect("subresultant division")
        };
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: &Rational) {
    let entry = terms.entry(m).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        terms.remove(&m);
    }
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (name, e) in [("s", m.s), ("t", m.t)] {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MPoly {
    /// Highest monomial first, e.g. `s^2 - 1/2*t + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bivariate_gcd() {
        let (s, t) = (MPoly::s(), MPoly::t());
        let one = MPoly::one();
        let a = s.add(&t).mul(&s.sub(&one));
        let b = s.add(&t).mul(&t.add(&one)).scale(&Rational::frac(-3, 2));
        assert_eq!(a.gcd(&b), s.add(&t));
        assert_eq!(s.gcd(&t), one);
        let c = s.mul(&t).add(&one).pow(2);
        assert_eq!(c.gcd(&c.mul(&s)), c);
        assert_eq!(MPoly::zero().gcd(&s.scale(&Rational::from(4))), s);
    }

    #[test]
    fn graded_lex_order() {
        assert!(Monomial::new(0, 2) > Monomial::new(1, 0));
        assert!(Monomial::new(2, 0) > Monomial::new(1, 1));
        assert!(Monomial::new(1, 1) > Monomial::new(0, 2));
    }

    #[test]
    fn exact_division() {
        let s = MPoly::s();
        let t = MPoly::t();
        let a = s.add(&t);
        let b = s.sub(&t);
        let p = a.mul(&b);
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(p.exact_div(&s), None);
        assert_eq!(p.to_string(), "s^2 - t^2");
    }

    #[test]
    fn primitive() {
        let p = MPoly::s().scale(&Rational::frac(-2, 3)).add(&MPoly::constant(Rational::frac(4, 9)));
        let (c, q) = p.primitive_part();
        assert_eq!(c, Rational::frac(-2, 9));
        assert_eq!(q.to_string(), "3*s - 2");
    }
}
