//! Exact arithmetic: rationals, `p`-adic valuations and the rational
//! function field `Q(s, t)` used as a computable stand-in for a pair of
//! algebraically independent reals.

pub mod mpoly;
mod ratfunc;
mod rational;

pub use mpoly::{MPoly, Monomial};
pub use ratfunc::{ratfunc_arith, FieldOp, FieldValue, RatFunc};
pub use rational::{in_localization, is_prime, padic_valuation, prime_factors, Rational};

/// Reduced-form constructor; fails on a zero denominator.
pub fn make_rational(n: i64, d: i64) -> crate::Result<Rational> {
    Rational::new(n, d)
}

/// Serializes any `Display` value as a JSON string.
pub(crate) fn ser_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Serializes a sequence of `Display` values as JSON strings.
pub(crate) fn ser_display_seq<T: std::fmt::Display, S: serde::Serializer>(
    v: &[T],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}
