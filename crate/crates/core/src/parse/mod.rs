//! Text grammars.
//!
//! Polynomial expressions with rational exponents:
//!
//! ```text
//! expr  := ["-"] term (("+" | "-") term)*
//! term  := coeff | coeff "*" xpow | xpow
//! xpow  := "x" | "x^" uint | "x^(" uint "/" uint ")"
//! coeff := uint | uint "/" uint
//! ```
//!
//! Elements of `Q(s,t)[x, y]` use ordinary infix notation over the letters
//! `s`, `t`, `x`, `y` with `+ - * / ^` and parentheses; division is only by
//! expressions free of `x` and `y`, and `^` takes a nonnegative integer.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{RatFunc, Rational};
use crate::error::{Error, Result};
use crate::ff::FpPoly;
use crate::semidomain::{CoeffDomain, PolyExpr};
use crate::subring::{RYPoly, SubringPoly};

/// Which value type [`parse_expression`] should produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainTag {
    Poly(CoeffDomain),
    Subring,
    Ry,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Poly(PolyExpr),
    Subring(SubringPoly),
    Ry(RYPoly),
}

pub fn parse_expression(text: &str, tag: DomainTag) -> Result<Parsed> {
    Ok(match tag {
        DomainTag::Poly(d) => Parsed::Poly(parse_polyexpr(text, d)?),
        DomainTag::Subring => Parsed::Subring(parse_subring(text)?),
        DomainTag::Ry => Parsed::Ry(parse_ry(text)?),
    })
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { src: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", b as char))
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small_uint(&mut self) -> Result<u32> {
        let at = self.pos;
        let n = self.uint()?;
        u32::try_from(n).map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(b) => self.err(format!("unexpected '{}'", b as char)),
        }
    }
}

/// Parses the expression grammar over the given coefficient domain.
pub fn parse_polyexpr(text: &str, dom: CoeffDomain) -> Result<PolyExpr> {
    let mut c = Cursor::new(text);
    let mut terms = Vec::new();
    let mut negative = c.eat(b'-');
    loop {
        let at = c.pos;
        let (e, mut coeff) = poly_term(&mut c)?;
        if negative {
            coeff = -coeff;
        }
        let coeff = dom.admit(&coeff).map_err(|err| match err {
            Error::Domain(msg) => Error::Parse { pos: at, msg },
            other => other,
        })?;
        terms.push((e, coeff));
        if c.eat(b'+') {
            negative = false;
        } else if c.eat(b'-') {
            negative = true;
        } else {
            break;
        }
    }
    c.finish()?;
    PolyExpr::new(dom, terms)
}

fn poly_term(c: &mut Cursor) -> Result<(Rational, Rational)> {
    if c.peek() == Some(b'x') {
        return Ok((xpow(c)?, Rational::one()));
    }
    let coeff = fraction(c)?;
    if c.eat(b'*') {
        if c.peek() != Some(b'x') {
            return c.err("expected 'x'");
        }
        return Ok((xpow(c)?, coeff));
    }
    Ok((Rational::zero(), coeff))
}

fn fraction(c: &mut Cursor) -> Result<Rational> {
    let n = c.uint()?;
    if c.eat(b'/') {
        let at = c.pos;
        let d = c.uint()?;
        if d.is_zero() {
            return Err(Error::Parse { pos: at, msg: "zero denominator".into() });
        }
        return Ok(Rational::new(n, d).expect("nonzero denominator"));
    }
    Ok(Rational::from_integer(n))
}

fn xpow(c: &mut Cursor) -> Result<Rational> {
    c.expect(b'x')?;
    if !c.eat(b'^') {
        return Ok(Rational::one());
    }
    if c.eat(b'(') {
        let e = fraction(c)?;
        c.expect(b')')?;
        return Ok(e);
    }
    Ok(Rational::from_integer(c.uint()?))
}

/// Parses a polynomial of `F_p[x]`; exponents must be nonnegative integers.
pub fn parse_fppoly(text: &str, p: u64) -> Result<FpPoly> {
    let f = parse_polyexpr(text, CoeffDomain::Fp(p))?;
    if f.exponent_lcm() != BigInt::one() {
        return Err(Error::Parse { pos: 0, msg: "exponents of an F_p[x] polynomial must be integers".into() });
    }
    f.to_fppoly_scaled(1)
}

/// Parses an element of `Q(s,t)[x, y]`.
pub fn parse_ry(text: &str) -> Result<RYPoly> {
    let mut c = Cursor::new(text);
    let v = infix_expr(&mut c)?;
    c.finish()?;
    Ok(v)
}

/// Parses an element of `Q(s,t)[x]`; `y` is rejected.
pub fn parse_subring(text: &str) -> Result<SubringPoly> {
    let v = parse_ry(text)?;
    v.as_x_poly().ok_or_else(|| Error::Parse { pos: 0, msg: "unexpected variable y".into() })
}

/// Parses an element of `Q(s,t)`; `x` and `y` are rejected.
pub fn parse_ratfunc(text: &str) -> Result<RatFunc> {
    let v = parse_ry(text)?;
    v.as_constant().ok_or_else(|| Error::Parse { pos: 0, msg: "expected an expression in s and t only".into() })
}

fn infix_expr(c: &mut Cursor) -> Result<RYPoly> {
    let mut acc = infix_term(c)?;
    loop {
        if c.eat(b'+') {
            acc = acc.add(&infix_term(c)?);
        } else if c.eat(b'-') {
            acc = acc.sub(&infix_term(c)?);
        } else {
            return Ok(acc);
        }
    }
}

fn infix_term(c: &mut Cursor) -> Result<RYPoly> {
    let mut acc = infix_factor(c)?;
    loop {
        if c.eat(b'*') {
            acc = acc.mul(&infix_factor(c)?);
        } else if c.eat(b'/') {
            let at = c.pos;
            let d = infix_factor(c)?;
            let Some(k) = d.as_constant() else {
                return Err(Error::Parse { pos: at, msg: "division by an expression in x or y".into() });
            };
            let inv = k.inv().map_err(|_| Error::Parse { pos: at, msg: "division by zero".into() })?;
            acc = acc.scale(&inv);
        } else {
            return Ok(acc);
        }
    }
}

fn infix_factor(c: &mut Cursor) -> Result<RYPoly> {
    if c.eat(b'-') {
        return Ok(infix_factor(c)?.neg());
    }
    let base = infix_atom(c)?;
    if c.eat(b'^') {
        let e = c.small_uint()?;
        return Ok(base.pow(e));
    }
    Ok(base)
}

fn infix_atom(c: &mut Cursor) -> Result<RYPoly> {
    match c.peek() {
        Some(b'(') => {
            c.pos += 1;
            let v = infix_expr(c)?;
            c.expect(b')')?;
            Ok(v)
        }
        Some(b's') => {
            c.pos += 1;
            Ok(RYPoly::constant(RatFunc::s()))
        }
        Some(b't') => {
            c.pos += 1;
            Ok(RYPoly::constant(RatFunc::t()))
        }
        Some(b'x') => {
            c.pos += 1;
            Ok(RYPoly::x())
        }
        Some(b'y') => {
            c.pos += 1;
            Ok(RYPoly::y())
        }
        Some(b) if b.is_ascii_digit() => Ok(RYPoly::constant(RatFunc::from(Rational::from_integer(c.uint()?)))),
        Some(b) => c.err(format!("unexpected '{}'", b as char)),
        None => c.err("unexpected end of input"),
    }
}
