//! Exact-arithmetic workbench for factorization theory.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: arbitrary-precision rationals, `p`-adic valuations and the
//!   rational function fields `Q(s)`, `Q(s,t)`.
//! * [`ff`]: prime fields, dense polynomials over them, irreducibility
//!   criteria for binomials and trinomials together with an independent
//!   irreducibility oracle and a factorizer.
//! * [`monoid`]: the atomic Puiseux monoids `M_{q,r}` and bounded decision
//!   procedures (membership, divisibility, atoms, chains of principal ideals).
//! * [`semidomain`]: polynomial expressions with rational exponents, the ascent
//!   procedure over `Z[x]` and `F_p[x]`, and bounded atom tests in `F_p[M]`.
//! * [`subring`]: the rings `Z[x] + F[x]x^2`, `Z[x] + K[x]x^2` and the
//!   candidate-factorization refuter for `R[y]` with `R = Z + Zx + x^2 K[x]`.
//! * [`parse`]: text grammars for every value type above.
//! * [`check`]: the verification driver behind the `check` command.

pub mod arith;
pub mod check;
pub mod error;
pub mod ff;
pub mod monoid;
pub mod parse;
pub mod semidomain;
pub mod subring;

pub use error::{Error, Result};
