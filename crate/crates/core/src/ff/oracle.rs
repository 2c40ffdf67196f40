//! Irreducibility decided without any structural criterion: exhaustive trial
//! division at small degree, the Frobenius (Rabin) test above that.

use super::{mul_mod, FpPoly};
use crate::arith::prime_factors;
use crate::error::{domain, Result};

/// Routing between the two oracle paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct OracleConfig {
    /// Degrees up to this value use exhaustive trial division.
    pub exhaustive_max_degree: usize,
    /// Upper bound on the number of monic trial divisors; above it the
    /// Frobenius test is used even at small degree.
    pub exhaustive_max_candidates: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { exhaustive_max_degree: 12, exhaustive_max_candidates: 2_000_000 }
    }
}

impl OracleConfig {
    fn use_exhaustive(&self, p: u64, n: usize) -> bool {
        n <= self.exhaustive_max_degree
            && trial_candidates(p, n).is_some_and(|c| c <= self.exhaustive_max_candidates)
    }
}

/// Number of monic polynomials of degree `1..=n/2`, or `None` on overflow.
fn trial_candidates(p: u64, n: usize) -> Option<u64> {
    let mut total: u64 = 0;
    let mut pk: u64 = 1;
    for _ in 1..=n / 2 {
        pk = pk.checked_mul(p)?;
        total = total.checked_add(pk)?;
    }
    Some(total)
}

/// Exact irreducibility verdict for a non-constant polynomial.
pub fn is_irreducible_oracle(f: &FpPoly) -> Result<bool> {
    is_irreducible_with(f, &OracleConfig::default())
}

pub fn is_irreducible_with(f: &FpPoly, cfg: &OracleConfig) -> Result<bool> {
    let n = nonconstant_degree(f)?;
    if cfg.use_exhaustive(f.modulus(), n) {
        irreducible_by_trial_division(f)
    } else {
        irreducible_by_frobenius(f)
    }
}

fn nonconstant_degree(f: &FpPoly) -> Result<usize> {
    match f.degree() {
        Some(n) if n >= 1 => Ok(n),
        _ => domain("irreducibility of a constant polynomial"),
    }
}

/// Trial division of `f` by every monic polynomial of degree `1..=deg f / 2`.
pub fn irreducible_by_trial_division(f: &FpPoly) -> Result<bool> {
    let n = nonconstant_degree(f)?;
    let p = f.modulus();
    let f = f.monic();
    let fc = f.coeffs();
    let mut rem = vec![0u64; n + 1];
    for k in 1..=n / 2 {
        // g = x^k + g[k-1] x^{k-1} + ... + g[0], enumerated as a base-p counter
        let mut g = vec![0u64; k];
        loop {
            if divides_monic(fc, &g, p, &mut rem) {
                return Ok(false);
            }
            if !increment(&mut g, p) {
                break;
            }
        }
    }
    Ok(true)
}

fn increment(g: &mut [u64], p: u64) -> bool {
    for c in g.iter_mut() {
        *c += 1;
        if *c < p {
            return true;
        }
        *c = 0;
    }
    false
}

/// Whether the monic `x^k + low(x)` divides `f` (coefficients ascending).
fn divides_monic(f: &[u64], low: &[u64], p: u64, scratch: &mut [u64]) -> bool {
    let k = low.len();
    let n = f.len() - 1;
    scratch[..=n].copy_from_slice(f);
    for top in (k..=n).rev() {
        let c = scratch[top];
        if c == 0 {
            continue;
        }
        let base = top - k;
        for (j, &b) in low.iter().enumerate() {
            if b != 0 {
                let v = &mut scratch[base + j];
                *v = (*v + p - mul_mod(c, b, p)) % p;
            }
        }
    }
    scratch[..k].iter().all(|&c| c == 0)
}

/// Rabin's test: `f` of degree `n` is irreducible iff `x^(p^n) = x mod f` and
/// `gcd(x^(p^(n/l)) - x, f) = 1` for every prime `l | n`.
pub fn irreducible_by_frobenius(f: &FpPoly) -> Result<bool> {
    let n = nonconstant_degree(f)?;
    let p = f.modulus();
    let f = f.monic();
    let x = FpPoly::x(p);
    // frob[i] = x^(p^i) mod f
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(x.rem(&f));
    for i in 1..=n {
        let next = frob[i - 1].pow_mod(p as u128, &f);
        frob.push(next);
    }
    if frob[n] != x.rem(&f) {
        return Ok(false);
    }
    for l in prime_factors(n as u64) {
        let h = frob[n / l as usize].sub(&x);
        if !h.gcd(&f).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::new(p, c).unwrap()
    }

    #[test]
    fn small_cases() {
        assert!(is_irreducible_oracle(&poly(2, &[1, 1, 1])).unwrap());
        assert!(is_irreducible_oracle(&poly(2, &[1, 0, 0, 1, 0, 0, 1])).unwrap());
        assert!(!is_irreducible_oracle(&poly(5, &[-1, 0, 1])).unwrap());
        assert!(is_irreducible_oracle(&poly(5, &[3])).is_err());
        // linear polynomials are irreducible
        assert!(is_irreducible_oracle(&poly(7, &[3, 2])).unwrap());
    }

    #[test]
    fn both_paths_agree_exhaustively_f2_deg_le_8() {
        for n in 1..=8usize {
            for bits in 0u32..(1 << n) {
                let mut c: Vec<i64> = (0..n).map(|i| ((bits >> i) & 1) as i64).collect();
                c.push(1);
                let f = poly(2, &c);
                assert_eq!(
                    irreducible_by_trial_division(&f).unwrap(),
                    irreducible_by_frobenius(&f).unwrap(),
                    "{f:?}"
                );
            }
        }
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree n over F_p: (1/n) sum_{d|n} mu(d) p^(n/d)
        let count = |p: u64, n: usize| -> usize {
            let mut total = 0;
            let mut c = vec![0i64; n];
            loop {
                let mut v = c.clone();
                v.push(1);
                if irreducible_by_trial_division(&poly(p, &v)).unwrap() {
                    total += 1;
                }
                let mut i = 0;
                loop {
                    if i == n {
                        return total;
                    }
                    c[i] += 1;
                    if (c[i] as u64) < p {
                        break;
                    }
                    c[i] = 0;
                    i += 1;
                }
            }
        };
        assert_eq!(count(2, 4), 3);
        assert_eq!(count(3, 3), 8);
        assert_eq!(count(5, 2), 10);
    }
}
