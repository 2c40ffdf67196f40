use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::PuiseuxMonoidSpec;
use crate::arith::Rational;
use crate::error::{domain, Result};

/// Nonnegative integer coefficients on generators, keyed by position in the
/// generator list they were computed against.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MembershipCertificate {
    pub coefficients: BTreeMap<usize, u64>,
}

impl MembershipCertificate {
    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Weighted sum of `values`.
    pub fn sum(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (&i, &c) in &self.coefficients {
            acc += &(&values[i] * Rational::from_integer(c));
        }
        acc
    }

    pub fn verify(&self, values: &[Rational], target: &Rational) -> bool {
        self.coefficients.keys().all(|&i| i < values.len()) && self.sum(values) == *target
    }

    /// Total number of generators used, with multiplicity.
    pub fn length(&self) -> u64 {
        self.coefficients.values().sum()
    }

    /// Coefficients keyed by generator label.
    pub fn labeled(&self, spec: &PuiseuxMonoidSpec) -> BTreeMap<String, u64> {
        let gens = spec.generator_list();
        self.coefficients.iter().map(|(&i, &c)| (gens[i].label.clone(), c)).collect()
    }
}

/// A certificate for `target` over the generators of `spec` at its depth.
pub fn membership(target: &Rational, spec: &PuiseuxMonoidSpec) -> Option<MembershipCertificate> {
    membership_over(target, &spec.values())
}

/// A certificate for `target` over an arbitrary list of positive rationals.
pub fn membership_over(target: &Rational, values: &[Rational]) -> Option<MembershipCertificate> {
    let mut found = None;
    Knapsack::new(values, target)?.run(&mut |cert| {
        found = Some(cert);
        false
    });
    found
}

/// Whether `b | c` in the monoid, i.e. a certificate for `c - b`.
pub fn divides(b: &Rational, c: &Rational, spec: &PuiseuxMonoidSpec) -> Option<MembershipCertificate> {
    membership(&(c - b), spec)
}

/// Bounded atom verdict for a listed generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum AtomVerdict {
    /// No decomposition over the other generators at this depth.
    AtomAtDepth { depth: usize },
    /// Certificate over the full generator list, not using the tested value.
    Reducible { certificate: MembershipCertificate },
}

impl AtomVerdict {
    pub fn is_atom(&self) -> bool {
        matches!(self, AtomVerdict::AtomAtDepth { .. })
    }
}

/// Reducible iff `g` lies in the monoid generated by the other generators.
/// A sum of two nonzero elements equal to a generator cannot use that
/// generator, so this also covers every two-term decomposition.
pub fn is_atom_bounded(g: &Rational, spec: &PuiseuxMonoidSpec) -> Result<AtomVerdict> {
    let values = spec.values();
    if !values.contains(g) {
        return domain(format!("{g} is not a generator at depth {}", spec.depth));
    }
    let others: Vec<usize> = (0..values.len()).filter(|&i| values[i] != *g).collect();
    let sub: Vec<Rational> = others.iter().map(|&i| values[i].clone()).collect();
    Ok(match membership_over(g, &sub) {
        None => AtomVerdict::AtomAtDepth { depth: spec.depth },
        Some(c) => AtomVerdict::Reducible {
            certificate: MembershipCertificate {
                coefficients: c.coefficients.into_iter().map(|(i, k)| (others[i], k)).collect(),
            },
        },
    })
}

/// Every factorization of `target` into the atoms of the truncation.
pub fn factorizations_bounded(target: &Rational, spec: &PuiseuxMonoidSpec) -> Vec<MembershipCertificate> {
    factorizations_limited(target, spec, usize::MAX)
}

/// As [`factorizations_bounded`], stopping after `limit` results. Generators
/// that are not atoms at this depth, and repeated values, are skipped.
pub fn factorizations_limited(
    target: &Rational,
    spec: &PuiseuxMonoidSpec,
    limit: usize,
) -> Vec<MembershipCertificate> {
    let values = spec.values();
    let atoms: Vec<usize> = (0..values.len())
        .filter(|&i| !values[..i].contains(&values[i]))
        .filter(|&i| is_atom_bounded(&values[i], spec).map(|v| v.is_atom()).unwrap_or(false))
        .collect();
    let sub: Vec<Rational> = atoms.iter().map(|&i| values[i].clone()).collect();
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    if let Some(k) = Knapsack::new(&sub, target) {
        k.run(&mut |cert| {
            out.push(MembershipCertificate {
                coefficients: cert.coefficients.into_iter().map(|(i, c)| (atoms[i], c)).collect(),
            });
            out.len() < limit
        });
    }
    out.sort();
    out
}

/// Exact unbounded knapsack over a common denominator.
///
/// Generators are processed by decreasing denominator. Writing `L_i` for the
/// lcm of the denominators of generators `i..`, the remainder before step `i`
/// lies in `(1/L_i) Z` and after it must lie in `(1/L_{i+1}) Z`; that fixes the
/// coefficient of generator `i` modulo `L_i / L_{i+1}` up to a gcd, so only one
/// residue class of coefficients is scanned.
struct Knapsack {
    order: Vec<usize>,
    /// generator value times the global common denominator
    scaled: Vec<BigInt>,
    /// global denominator divided by `L_i`
    weight: Vec<BigInt>,
    /// `L_i / L_{i+1}`
    modulus: Vec<BigInt>,
    target: BigInt,
}

impl Knapsack {
    fn new(values: &[Rational], target: &Rational) -> Option<Knapsack> {
        if target.is_negative() {
            return None;
        }
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[b].denom().cmp(values[a].denom()).then(a.cmp(&b)));
        let m = order.len();
        let mut suffix = vec![BigInt::one(); m + 1];
        for i in (0..m).rev() {
            suffix[i] = suffix[i + 1].lcm(values[order[i]].denom());
        }
        let total = suffix[0].clone();
        if !(&total % target.denom()).is_zero() {
            return None;
        }
        let scaled = order.iter().map(|&i| (values[i].inner() * &total).to_integer()).collect();
        let weight = (0..m).map(|i| &total / &suffix[i]).collect();
        let modulus = (0..m).map(|i| &suffix[i] / &suffix[i + 1]).collect();
        let target = (target.inner() * &total).to_integer();
        Some(Knapsack { order, scaled, weight, modulus, target })
    }

    /// Calls `emit` on each solution until it returns `false`.
    fn run(&self, emit: &mut dyn FnMut(MembershipCertificate) -> bool) {
        let mut dead = HashSet::new();
        let mut coeffs = vec![0u64; self.order.len()];
        self.search(0, self.target.clone(), &mut coeffs, &mut dead, emit);
    }

    /// Returns `(found_any, keep_going)`.
    fn search(
        &self,
        i: usize,
        rem: BigInt,
        coeffs: &mut Vec<u64>,
        dead: &mut HashSet<(usize, BigInt)>,
        emit: &mut dyn FnMut(MembershipCertificate) -> bool,
    ) -> (bool, bool) {
        if rem.is_zero() {
            let mut cert = MembershipCertificate::default();
            for (k, &c) in coeffs.iter().enumerate().take(i) {
                if c > 0 {
                    cert.coefficients.insert(self.order[k], c);
                }
            }
            return (true, emit(cert));
        }
        if i == self.order.len() || dead.contains(&(i, rem.clone())) {
            return (false, true);
        }
        let g = &self.scaled[i];
        let Some((start, step)) = self.residue_class(i, &rem) else {
            dead.insert((i, rem));
            return (false, true);
        };
        let cap = (&rem / g).to_u64().unwrap_or(u64::MAX);
        let mut found = false;
        let mut c = start;
        while c <= cap {
            coeffs[i] = c;
            let next = &rem - g * BigInt::from(c);
            let (ok, more) = self.search(i + 1, next, coeffs, dead, emit);
            found |= ok;
            if !more {
                coeffs[i] = 0;
                return (found, false);
            }
            match c.checked_add(step) {
                Some(n) => c = n,
                None => break,
            }
        }
        coeffs[i] = 0;
        if !found {
            dead.insert((i, rem));
        }
        (found, true)
    }

    /// Smallest admissible coefficient and the step between admissible ones.
    fn residue_class(&self, i: usize, rem: &BigInt) -> Option<(u64, u64)> {
        let m = &self.modulus[i];
        if m.is_one() {
            return Some((0, 1));
        }
        let w = &self.weight[i];
        let u = (rem / w).mod_floor(m);
        let v = (&self.scaled[i] / w).mod_floor(m);
        let g = v.gcd(m);
        if !(&u % &g).is_zero() {
            return None;
        }
        let step = m / &g;
        let inv = mod_inverse(&(&v / &g), &step)?;
        let start = ((&u / &g) * inv).mod_floor(&step);
        Some((start.to_u64()?, step.to_u64().unwrap_or(u64::MAX)))
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}
