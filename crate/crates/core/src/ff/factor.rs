//! Square-free decomposition followed by Berlekamp splitting.

use serde::Serialize;

use super::{inv_mod, mul_mod, FpPoly};
use crate::error::{domain, Result};

/// `unit * prod(factor^mult)` with monic irreducible, pairwise distinct factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub unit: u64,
    pub factors: Vec<(FpPoly, usize)>,
}

impl Factorization {
    pub fn product(&self, p: u64) -> FpPoly {
        self.factors
            .iter()
            .fold(FpPoly::constant(p, self.unit), |acc, (f, m)| acc.mul(&f.pow(*m as u64)))
    }

    /// Irreducible factors repeated according to multiplicity.
    pub fn flattened(&self) -> Vec<FpPoly> {
        let mut out = Vec::new();
        for (f, m) in &self.factors {
            for _ in 0..*m {
                out.push(f.clone());
            }
        }
        out
    }

    pub fn num_irreducible(&self) -> usize {
        self.factors.iter().map(|(_, m)| m).sum()
    }
}

/// Complete factorization of a nonzero polynomial.
pub fn factorize(f: &FpPoly) -> Result<Factorization> {
    if f.is_zero() {
        return domain("factorization of the zero polynomial");
    }
    let unit = f.leading();
    let mut factors: Vec<(FpPoly, usize)> = Vec::new();
    for (part, mult) in square_free(&f.monic()) {
        for g in berlekamp(&part) {
            match factors.iter_mut().find(|(h, _)| *h == g) {
                Some((_, m)) => *m += mult,
                None => factors.push((g, mult)),
            }
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(Factorization { unit, factors })
}

/// Square-free decomposition of a monic polynomial: pairs `(g, m)` with
/// square-free `g` and `prod g^m = f`.
fn square_free(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).expect("gcd divides");
        if !fac.is_constant() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_constant() {
        for (g, m) in square_free(&pth_root(&c)) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// `g` with `g^p = f`, for `f` whose exponents are all multiples of `p`.
fn pth_root(f: &FpPoly) -> FpPoly {
    let p = f.modulus() as usize;
    let coeffs = f.coeffs().iter().step_by(p).copied().collect();
    FpPoly::from_raw(f.modulus(), coeffs)
}

/// Irreducible factors of a monic square-free polynomial.
fn berlekamp(f: &FpPoly) -> Vec<FpPoly> {
    let n = f.degree().unwrap_or(0);
    if n <= 1 {
        return vec![f.clone()];
    }
    let p = f.modulus();
    let basis = berlekamp_kernel(f);
    let k = basis.len();
    let mut factors = vec![f.clone()];
    if k == 1 {
        return factors;
    }
    'outer: for v in basis.iter().filter(|v| !v.is_constant()) {
        for s in 0..p {
            let shifted = v.sub(&FpPoly::constant(p, s));
            let mut next = Vec::with_capacity(factors.len() + 1);
            for h in factors.drain(..) {
                if h.degree() == Some(1) {
                    next.push(h);
                    continue;
                }
                let g = h.gcd(&shifted);
                if g.is_constant() || g.degree() == h.degree() {
                    next.push(h);
                } else {
                    next.push(h.exact_div(&g).expect("gcd divides").monic());
                    next.push(g);
                }
            }
            factors = next;
            if factors.len() == k {
                break 'outer;
            }
        }
    }
    debug_assert_eq!(factors.len(), k);
    factors
}

/// Basis of `{ v : v^p = v mod f }` as polynomials of degree `< n`.
fn berlekamp_kernel(f: &FpPoly) -> Vec<FpPoly> {
    let n = f.degree().unwrap();
    let p = f.modulus();
    // row i = coefficients of x^(i p) mod f, minus the identity
    let xp = FpPoly::x(p).pow_mod(p as u128, f);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur = FpPoly::one(p);
    for i in 0..n {
        let mut row: Vec<u64> = (0..n).map(|j| cur.coeff(j)).collect();
        row[i] = (row[i] + p - 1) % p;
        rows.push(row);
        cur = cur.mul(&xp).rem(f);
    }
    // kernel of M^T: solve v M = 0, i.e. sum_i v_i row_i = 0; transpose then null space
    let mut m: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| rows[i][j]).collect()).collect();
    null_space(&mut m, p).into_iter().map(|v| FpPoly::from_raw(p, v)).collect()
}

/// Null space of the `n x n` matrix `m` (acting on column vectors) over `F_p`.
fn null_space(m: &mut [Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivot_col_of_row = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for v in m[r].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                for j in 0..cols {
                    let sub = mul_mod(factor, m[r][j], p);
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let pivots: std::collections::HashSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = (p - m[row][free]) % p;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::is_irreducible_oracle;

    fn poly(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::new(p, c).unwrap()
    }

    #[test]
    fn examples() {
        let f = factorize(&poly(2, &[0, 1, 1])).unwrap();
        assert_eq!(f.factors, vec![(poly(2, &[0, 1]), 1), (poly(2, &[1, 1]), 1)]);
        let g = poly(2, &[1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(factorize(&g).unwrap().factors, vec![(g.clone(), 1)]);
        let h = poly(2, &[1, 0, 1, 0, 1]);
        assert_eq!(factorize(&h).unwrap().factors, vec![(poly(2, &[1, 1, 1]), 2)]);
        assert!(factorize(&FpPoly::zero(3)).is_err());
    }

    #[test]
    fn pth_powers_and_units() {
        // 2 (x+1)^3 (x^2+1) over F_3
        let f = poly(3, &[1, 1]).pow(3).mul(&poly(3, &[1, 0, 1])).scale(2);
        let fac = factorize(&f).unwrap();
        assert_eq!(fac.unit, 2);
        assert_eq!(fac.product(3), f);
        assert_eq!(fac.num_irreducible(), 4);
        for (g, _) in &fac.factors {
            assert!(is_irreducible_oracle(g).unwrap());
        }
    }

    #[test]
    fn constants() {
        let fac = factorize(&FpPoly::constant(5, 3)).unwrap();
        assert!(fac.factors.is_empty());
        assert_eq!(fac.unit, 3);
    }
}
