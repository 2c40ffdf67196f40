//! Polynomials in `x` over `K = Q(s, t)` and polynomials in `y` over those.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::mpoly::{coprime_at_some_point, subresultant_gcd};
use crate::arith::{MPoly, RatFunc, Rational};

/// Polynomial in `x` with coefficients in `K`, indexed by degree.
#[derive(Clone, Default, PartialEq)]
pub struct SubringPoly {
    coeffs: Vec<RatFunc>,
}

impl SubringPoly {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SubringPoly { coeffs }
    }

    pub fn from_rationals(cs: &[Rational]) -> Self {
        Self::new(cs.iter().cloned().map(RatFunc::from).collect())
    }

    pub fn zero() -> Self {
        SubringPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(RatFunc::one())
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::new(vec![c])
    }

    /// `c x^k`.
    pub fn monomial(c: RatFunc, k: usize) -> Self {
        let mut v = vec![RatFunc::zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(RatFunc::one(), 1)
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RatFunc {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn order_coeff(&self) -> Option<&RatFunc> {
        self.order().map(|k| &self.coeffs[k])
    }

    pub fn leading(&self) -> Option<&RatFunc> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &SubringPoly) -> SubringPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }

    pub fn neg(&self) -> SubringPoly {
        SubringPoly { coeffs: self.coeffs.iter().map(RatFunc::neg).collect() }
    }

    pub fn sub(&self, o: &SubringPoly) -> SubringPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &SubringPoly) -> SubringPoly {
        if self.is_zero() || o.is_zero() {
            return SubringPoly::zero();
        }
        let mut out = vec![RatFunc::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &RatFunc) -> SubringPoly {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn shift(&self, k: usize) -> SubringPoly {
        if self.is_zero() {
            return SubringPoly::zero();
        }
        let mut v = vec![RatFunc::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        SubringPoly { coeffs: v }
    }

    /// Coefficients of `x^0` and `x^1`.
    pub fn low_coeffs(&self) -> [RatFunc; 2] {
        [self.coeff(0), self.coeff(1)]
    }

    /// Quotient and remainder in `K[x]`.
    pub fn div_rem(&self, d: &SubringPoly) -> Option<(SubringPoly, SubringPoly)> {
        let dn = d.degree()?;
        let lc_inv = d.leading()?.inv().ok()?;
        let mut rem = self.clone();
        let mut quo = vec![RatFunc::zero(); self.coeffs.len().saturating_sub(dn)];
        while let Some(n) = rem.degree() {
            if n < dn {
                break;
            }
            let c = rem.coeffs[n].mul(&lc_inv);
            rem = rem.sub(&d.scale(&c).shift(n - dn));
            quo[n - dn] = c;
        }
        Some((Self::new(quo), rem))
    }

    /// Monic gcd in `K[x]`, computed by subresultant remainder sequences over
    /// `Q[s, t][x]`.
    pub fn gcd(&self, o: &SubringPoly) -> SubringPoly {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        let (a, b) = (self.cleared(), o.cleared());
        if a.len() == 1 || b.len() == 1 {
            return SubringPoly::one();
        }
        let at_point = |p: &MPoly, v: &Rational| p.eval(v, &(v + Rational::from(7)));
        if coprime_at_some_point(&a, &b, at_point) {
            return SubringPoly::one();
        }
        let g = subresultant_gcd(a, b);
        SubringPoly::new(g.into_iter().map(RatFunc::from_poly).collect()).monic()
    }

    pub fn monic(&self) -> SubringPoly {
        match self.leading() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// A polynomial multiple over `Q[s, t]` with denominators cleared.
    fn cleared(&self) -> Vec<MPoly> {
        let lcm = self.coeffs.iter().fold(MPoly::one(), |l, c| {
            let d = c.denominator();
            l.mul(&d.exact_div(&l.gcd(d)).expect("gcd divides"))
        });
        self.coeffs
            .iter()
            .map(|c| c.numerator().mul(&lcm.exact_div(c.denominator()).expect("lcm is a multiple")))
            .collect()
    }
}

/// Sign and magnitude so that terms can be joined with ` + ` / ` - `.
fn split_sign(c: &RatFunc) -> (bool, RatFunc) {
    let neg = c.numerator().leading().is_some_and(|(_, l)| l.is_negative());
    if neg {
        (true, c.neg())
    } else {
        (false, c.clone())
    }
}

/// A positive coefficient as a factor in a product: parenthesized when its
/// printed form is a sum.
fn factor_text(c: &RatFunc) -> String {
    let text = c.to_string();
    let is_sum = c.denominator().as_constant().is_some_and(|d| d.is_one()) && c.numerator().num_terms() > 1;
    if is_sum {
        format!("({text})")
    } else {
        text
    }
}

fn power_text(var: &str, k: usize) -> String {
    match k {
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

/// Writes `sum c_k var^k`, highest power first, with coefficients in `K`.
fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    var: &str,
    terms: impl Iterator<Item = (usize, &'a RatFunc)>,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let (neg, a) = split_sign(c);
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        if k == 0 {
            write!(f, "{}", factor_text(&a))?;
        } else if a == RatFunc::one() {
            f.write_str(&power_text(var, k))?;
        } else {
            write!(f, "{}*{}", factor_text(&a), power_text(var, k))?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for SubringPoly {
    /// Highest degree first, e.g. `s*x^2 + 2*x - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, "x", self.coeffs.iter().enumerate().rev())
    }
}

impl fmt::Debug for SubringPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SubringPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Polynomial in `y` whose coefficients are [`SubringPoly`] values.
#[derive(Clone, Default, PartialEq)]
pub struct RYPoly {
    ys: Vec<SubringPoly>,
}

impl RYPoly {
    pub fn new(mut ys: Vec<SubringPoly>) -> Self {
        while ys.last().is_some_and(|c| c.is_zero()) {
            ys.pop();
        }
        RYPoly { ys }
    }

    pub fn zero() -> Self {
        RYPoly::default()
    }

    pub fn one() -> Self {
        Self::from_x(SubringPoly::one())
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::from_x(SubringPoly::constant(c))
    }

    pub fn from_x(p: SubringPoly) -> Self {
        Self::new(vec![p])
    }

    pub fn x() -> Self {
        Self::from_x(SubringPoly::x())
    }

    pub fn y() -> Self {
        Self::new(vec![SubringPoly::zero(), SubringPoly::one()])
    }

    /// `c x^i y^j`.
    pub fn term(c: RatFunc, i: usize, j: usize) -> Self {
        let mut ys = vec![SubringPoly::zero(); j];
        ys.push(SubringPoly::monomial(c, i));
        Self::new(ys)
    }

    pub fn ys(&self) -> &[SubringPoly] {
        &self.ys
    }

    pub fn y_coeff(&self, j: usize) -> SubringPoly {
        self.ys.get(j).cloned().unwrap_or_default()
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: usize, j: usize) -> RatFunc {
        self.ys.get(j).map(|p| p.coeff(i)).unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.ys.is_empty()
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.ys.len().checked_sub(1)
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.ys.iter().filter_map(SubringPoly::degree).max()
    }

    /// The value when free of both `x` and `y`.
    pub fn as_constant(&self) -> Option<RatFunc> {
        match self.ys.len() {
            0 => Some(RatFunc::zero()),
            1 if self.ys[0].is_constant() => Some(self.ys[0].coeff(0)),
            _ => None,
        }
    }

    /// Free of `y`.
    pub fn as_x_poly(&self) -> Option<SubringPoly> {
        (self.ys.len() <= 1).then(|| self.y_coeff(0))
    }

    pub fn add(&self, o: &RYPoly) -> RYPoly {
        let n = self.ys.len().max(o.ys.len());
        Self::new((0..n).map(|j| self.y_coeff(j).add(&o.y_coeff(j))).collect())
    }

    pub fn neg(&self) -> RYPoly {
        RYPoly { ys: self.ys.iter().map(SubringPoly::neg).collect() }
    }

    pub fn sub(&self, o: &RYPoly) -> RYPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RYPoly) -> RYPoly {
        if self.is_zero() || o.is_zero() {
            return RYPoly::zero();
        }
        let mut out = vec![SubringPoly::zero(); self.ys.len() + o.ys.len() - 1];
        for (i, a) in self.ys.iter().enumerate() {
            for (j, b) in o.ys.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &RatFunc) -> RYPoly {
        Self::new(self.ys.iter().map(|p| p.scale(c)).collect())
    }

    pub fn pow(&self, e: u32) -> RYPoly {
        let mut acc = RYPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading term under the lexicographic order with `y > x`.
    fn leading_term(&self) -> Option<(usize, usize, RatFunc)> {
        let j = self.y_degree()?;
        let p = &self.ys[j];
        let i = p.degree()?;
        Some((i, j, p.coeff(i)))
    }

    /// Quotient in `K[x, y]` when `d` divides `self` there.
    pub fn exact_div(&self, d: &RYPoly) -> Option<RYPoly> {
        let (di, dj, dc) = d.leading_term()?;
        let inv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut quo = RYPoly::zero();
        while let Some((i, j, c)) = rem.leading_term() {
            if i < di || j < dj {
                return None;
            }
            let t = RYPoly::term(c.mul(&inv), i - di, j - dj);
            rem = rem.sub(&t.mul(d));
            quo = quo.add(&t);
        }
        Some(quo)
    }

    /// Every nonzero coefficient, with its `(x, y)` exponents.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &RatFunc)> {
        self.ys.iter().enumerate().flat_map(|(j, p)| {
            p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (i, j, c))
        })
    }
}

impl fmt::Display for RYPoly {
    /// Highest `y` power first; each `y` coefficient printed as a
    /// [`SubringPoly`], parenthesized when it has several terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, p) in self.ys.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            let single = p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
            if j == 0 {
                let body = p.to_string();
                match (first, body.strip_prefix('-')) {
                    (false, Some(rest)) => write!(f, " - {rest}")?,
                    (false, None) => write!(f, " + {body}")?,
                    (true, _) => f.write_str(&body)?,
                }
                break;
            }
            let (neg, p) = match p.order_coeff() {
                Some(c) if single && split_sign(c).0 => (true, p.neg()),
                _ => (false, p.clone()),
            };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let body = p.to_string();
            if p == SubringPoly::one() {
                f.write_str(&power_text("y", j))?;
            } else if single {
                write!(f, "{body}*{}", power_text("y", j))?;
            } else {
                write!(f, "({body})*{}", power_text("y", j))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RYPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RYPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
