//! Factorization of `f = d a_1 ... a_l`: split `f` maximally into
//! indecomposable factors, then divide each by a maximal common divisor of
//! its coefficients.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::zpoly::find_divisor;
use super::{CoeffDomain, PolyExpr, ZPoly};
use crate::arith::Rational;
use crate::error::{domain, Result};
use crate::ff::{factorize, FpPoly};

/// Result over `Z[x]`: `f = d * prod atoms`, each atom primitive with
/// positive leading coefficient. `mcds[i]` is the coefficient gcd removed
/// from the `i`-th indecomposable factor before it became `atoms[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AscentZ {
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub d: BigInt,
    pub atoms: Vec<ZPoly>,
    #[serde(serialize_with = "crate::arith::ser_display_seq")]
    pub mcds: Vec<BigInt>,
}

/// Result over `F_p[x]`: `f = d * prod atoms` with monic atoms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AscentFp {
    pub d: u64,
    pub atoms: Vec<FpPoly>,
}

/// Domain-independent view of either result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ascent {
    pub d: Rational,
    pub atoms: Vec<PolyExpr>,
}

impl AscentZ {
    pub fn product(&self) -> ZPoly {
        self.atoms.iter().fold(ZPoly::constant(self.d.clone()), |acc, a| acc.mul(a))
    }
}

impl AscentFp {
    pub fn product(&self, p: u64) -> FpPoly {
        self.atoms.iter().fold(FpPoly::constant(p, self.d), |acc, a| acc.mul(a))
    }
}

/// Dispatches on the coefficient domain; exponents must be integers.
pub fn ascent_factorization(f: &PolyExpr) -> Result<Ascent> {
    match f.coeff_domain() {
        CoeffDomain::Z => {
            let a = ascent_z(&f.to_zpoly()?)?;
            Ok(Ascent {
                d: Rational::from_integer(a.d),
                atoms: a.atoms.iter().map(PolyExpr::from_zpoly).collect(),
            })
        }
        CoeffDomain::Fp(_) => {
            if f.exponent_lcm() != BigInt::one() {
                return domain("ascent factorization needs integer exponents");
            }
            let a = ascent_fp(&f.to_fppoly_scaled(1)?)?;
            Ok(Ascent {
                d: Rational::from_integer(a.d),
                atoms: a.atoms.iter().map(PolyExpr::from_fppoly).collect(),
            })
        }
        CoeffDomain::Q => domain("no coefficient MCD structure configured for Q"),
    }
}

/// Indecomposable factors by repeated Kronecker splitting of the primitive
/// part; the content stays on the first factor so that the MCD step has
/// something to extract.
pub fn ascent_z(f: &ZPoly) -> Result<AscentZ> {
    if f.is_constant() {
        return domain("ascent factorization of a constant");
    }
    let (content, prim) = f.primitive();
    let mut pending = vec![prim];
    let mut pieces = Vec::new();
    while let Some(g) = pending.pop() {
        match find_divisor(&g)? {
            Some(h) => {
                let rest = g.exact_div(&h).expect("divisor divides");
                pending.push(rest);
                pending.push(h);
            }
            None => pieces.push(g),
        }
    }
    pieces.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    pieces[0] = pieces[0].scale(&content);
    let mut d = BigInt::one();
    let mut atoms = Vec::with_capacity(pieces.len());
    let mut mcds = Vec::with_capacity(pieces.len());
    for g in pieces {
        let (c, a) = g.primitive();
        d *= &c;
        mcds.push(c);
        atoms.push(a);
    }
    Ok(AscentZ { d, atoms, mcds })
}

/// Indecomposable factors by trial division with monic candidates of
/// increasing degree; the first divisor found at each step has minimal degree
/// and is therefore indecomposable.
pub fn ascent_fp(f: &FpPoly) -> Result<AscentFp> {
    if f.is_constant() {
        return domain("ascent factorization of a constant");
    }
    let p = f.modulus();
    let d = f.leading();
    let mut rest = f.monic();
    let mut atoms = Vec::new();
    'outer: while !rest.is_constant() {
        let n = rest.degree().unwrap();
        for k in 1..=n / 2 {
            let mut low = vec![0u64; k];
            loop {
                let mut c: Vec<i64> = low.iter().map(|&v| v as i64).collect();
                c.push(1);
                let g = FpPoly::new(p, &c)?;
                if let Some(q) = rest.exact_div(&g) {
                    atoms.push(g);
                    rest = q;
                    continue 'outer;
                }
                if !bump(&mut low, p) {
                    break;
                }
            }
        }
        atoms.push(rest.clone());
        break;
    }
    atoms.sort_by(|a, b| a.canonical_cmp(b));
    Ok(AscentFp { d, atoms })
}

fn bump(v: &mut [u64], p: u64) -> bool {
    for c in v.iter_mut() {
        *c += 1;
        if *c < p {
            return true;
        }
        *c = 0;
    }
    false
}

/// Over `F_p[x]`: no split into two nonconstant factors, read off the
/// complete factorization.
pub fn indecomposable_fp(f: &FpPoly) -> Result<bool> {
    if f.is_constant() {
        return domain("indecomposability of a constant");
    }
    Ok(factorize(f)?.num_irreducible() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_examples() {
        let a = ascent_z(&ZPoly::new(&[0, 2, 2])).unwrap();
        assert_eq!(a.d, BigInt::from(2));
        assert_eq!(a.atoms, vec![ZPoly::new(&[0, 1]), ZPoly::new(&[1, 1])]);
        let x = ascent_z(&ZPoly::new(&[0, 1])).unwrap();
        assert_eq!((x.d, x.atoms), (BigInt::one(), vec![ZPoly::new(&[0, 1])]));
        let neg = ascent_z(&ZPoly::new(&[0, 0, -3])).unwrap();
        assert_eq!(neg.d, BigInt::from(-3));
        assert_eq!(neg.product(), ZPoly::new(&[0, 0, -3]));
    }

    #[test]
    fn prime_field_examples() {
        let f = FpPoly::new(2, &[1, 0, 0, 1, 0, 0, 1]).unwrap();
        let a = ascent_fp(&f).unwrap();
        assert_eq!((a.d, a.atoms.clone()), (1, vec![f.clone()]));
        let g = FpPoly::new(3, &[0, 2, 0, 2]).unwrap();
        let a = ascent_fp(&g).unwrap();
        assert_eq!(a.d, 2);
        assert_eq!(a.product(3), g);
        assert_eq!(a.atoms.len(), 2);
        assert!(indecomposable_fp(&FpPoly::new(2, &[1, 1, 1]).unwrap()).unwrap());
        assert!(!indecomposable_fp(&FpPoly::monomial(2, 1, 2)).unwrap());
    }

    #[test]
    fn dispatch() {
        let f = PolyExpr::from_zpoly(&ZPoly::new(&[0, 2, 2]));
        let a = ascent_factorization(&f).unwrap();
        assert_eq!(a.d, Rational::from(2));
        let q = PolyExpr::x_pow(CoeffDomain::Q, Rational::one()).unwrap();
        assert!(ascent_factorization(&q).is_err());
    }
}
