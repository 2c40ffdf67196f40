use num_integer::Integer;

use super::{inv_mod, pow_mod, FpElem, FpPoly};
use crate::arith::prime_factors;
use crate::error::{domain, Result};

/// Least `e >= 1` with `a^e = 1`.
pub fn multiplicative_order(a: FpElem) -> Result<u64> {
    if a.is_zero() {
        return domain("multiplicative order of zero");
    }
    let p = a.modulus();
    let mut e = p - 1;
    for l in prime_factors(p - 1) {
        while e.is_multiple_of(l) && pow_mod(a.value(), e / l, p) == 1 {
            e /= l;
        }
    }
    Ok(e)
}

/// Generators of `F_p^x` in increasing order.
pub fn primitive_roots(p: u64) -> Result<Vec<FpElem>> {
    super::check_modulus(p)?;
    Ok((1..p)
        .map(|a| FpElem::raw(a, p))
        .filter(|&a| multiplicative_order(a).map(|e| e == p - 1).unwrap_or(false))
        .collect())
}

/// Criterion for irreducibility of `x^t - a` over a prime field: with `e`
/// the order of `a`, require `gcd(t, (p-1)/e) = 1`, every prime factor of
/// `t` divides `e`, and `4 | t` forces `4 | p - 1`.
pub fn binomial_irreducible(t: u64, a: FpElem) -> Result<bool> {
    if t < 2 {
        return domain(format!("binomial exponent {t} < 2"));
    }
    let e = multiplicative_order(a)?;
    let p = a.modulus();
    let coprime = t.gcd(&((p - 1) / e)) == 1;
    let primes_divide = prime_factors(t).iter().all(|l| e % l == 0);
    let four = !t.is_multiple_of(4) || (p - 1).is_multiple_of(4);
    Ok(coprime && primes_divide && four)
}

/// The parameter `a` for which every `x^(2^k) - 2a x^(2^(k-1)) - 1` is
/// irreducible over `F_p`, `p = 3 mod 4`.
///
/// With `p + 1 = 2^g * s`, `s` odd: `a_1 = 0`,
/// `a_j = ((a_{j-1} + 1) / 2)^((p+1)/4)` for `2 <= j < g`, and the result is
/// `a_g = ((a_{g-1} - 1) / 2)^((p+1)/4)`.
pub fn trinomial_parameter(p: u64) -> Result<FpElem> {
    super::check_modulus(p)?;
    if p % 4 != 3 {
        return domain(format!("{p} is not 3 mod 4"));
    }
    let mut g = 0;
    let mut m = p + 1;
    while m.is_multiple_of(2) {
        m /= 2;
        g += 1;
    }
    let half = inv_mod(2, p);
    let e = (p + 1) / 4;
    let mut a = 0u64;
    for _ in 2..g {
        a = pow_mod((a + 1) % p * half % p, e, p);
    }
    a = pow_mod((a + p - 1) % p * half % p, e, p);
    Ok(FpElem::raw(a, p))
}

/// `x^(2^k) - 2a x^(2^(k-1)) - 1` over `F_p`.
pub fn trinomial(a: FpElem, k: u32) -> Result<FpPoly> {
    if k == 0 {
        return domain("trinomial index k must be >= 1");
    }
    let p = a.modulus();
    let n = 1usize << k;
    let mut c = vec![0u64; n + 1];
    c[0] = p - 1;
    c[n / 2] = (p - 2 * a.value() % p) % p;
    c[n] = 1;
    Ok(FpPoly::from_raw(p, c))
}
