//! Puiseux monoids given by finitely many generators: the atomic monoids
//! `M_{q,r}` truncated at a depth, or an explicit generator list.
//!
//! Every procedure here works over the finitely generated truncation, so a
//! negative answer only means "not at this depth".

mod chain;
mod membership;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive};
use serde::Serialize;

use crate::arith::{is_prime, prime_factors, Rational};
use crate::error::{domain, Result};

pub use chain::{accp_chain_probe, mqr_chain, ChainReport, LinkReport, LinkStatus};
pub use membership::{
    divides, factorizations_bounded, factorizations_limited, is_atom_bounded, membership,
    membership_over, AtomVerdict, MembershipCertificate,
};

/// The exponent schedule `l_1 < l_2 < ...` behind `M_{q,r}`, subject to
/// `r^(l_n - l_{n-1}) > 2 q^(n+1)` with `l_0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorSchedule {
    q: u64,
    r: u64,
    ell: Vec<u64>,
}

fn check_qr(q: u64, r: u64) -> Result<()> {
    if !is_prime(q) {
        return domain(format!("q = {q} is not prime"));
    }
    if r < 2 {
        return domain(format!("r = {r} < 2"));
    }
    if q.gcd(&r) != 1 {
        return domain(format!("gcd({q}, {r}) != 1"));
    }
    Ok(())
}

fn admissible(q: u64, r: u64, n: usize, step: u64) -> bool {
    let lhs = Pow::pow(BigInt::from(r), step);
    let rhs = Pow::pow(BigInt::from(q), n as u64 + 1) * 2u32;
    lhs > rhs
}

/// Minimal `l_n`, computed from the minimal `l_1, ..., l_{n-1}`.
pub fn ell_sequence(q: u64, r: u64, n: usize) -> Result<u64> {
    if n == 0 {
        return domain("schedule index starts at 1");
    }
    Ok(*GeneratorSchedule::minimal(q, r, n)?.ell.last().unwrap())
}

impl GeneratorSchedule {
    /// The minimal admissible schedule up to index `n`.
    pub fn minimal(q: u64, r: u64, n: usize) -> Result<Self> {
        check_qr(q, r)?;
        let mut ell = Vec::with_capacity(n);
        let mut prev = 0;
        for i in 1..=n {
            let mut step = 1;
            while !admissible(q, r, i, step) {
                step += 1;
            }
            prev += step;
            ell.push(prev);
        }
        Ok(GeneratorSchedule { q, r, ell })
    }

    /// A user-supplied schedule `[l_1, ..., l_n]`, validated.
    pub fn custom(q: u64, r: u64, ell: Vec<u64>) -> Result<Self> {
        check_qr(q, r)?;
        let mut prev = 0;
        for (i, &l) in ell.iter().enumerate() {
            if l <= prev {
                return domain(format!("schedule not strictly increasing at index {}", i + 1));
            }
            if !admissible(q, r, i + 1, l - prev) {
                return domain(format!("schedule violates the growth bound at index {}", i + 1));
            }
            prev = l;
        }
        Ok(GeneratorSchedule { q, r, ell })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn ell(&self) -> &[u64] {
        &self.ell
    }

    pub fn len(&self) -> usize {
        self.ell.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ell.is_empty()
    }
}

/// `(a_n, b_n) = ((q^n r^l - 1), (q^n r^l + 1)) / (2 q^(2n) r^l)` with `l = l_n`.
pub fn generators(schedule: &GeneratorSchedule, n: usize) -> Result<(Rational, Rational)> {
    if n == 0 || n > schedule.len() {
        return domain(format!("generator index {n} outside 1..={}", schedule.len()));
    }
    let qn: BigInt = Pow::pow(BigInt::from(schedule.q), n as u64);
    let rl: BigInt = Pow::pow(BigInt::from(schedule.r), schedule.ell[n - 1]);
    let m = &qn * &rl;
    let den = &qn * &qn * &rl * 2u32;
    let a = Rational::new(&m - BigInt::one(), den.clone())?;
    let b = Rational::new(&m + BigInt::one(), den)?;
    Ok((a, b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonoidKind {
    Explicit(Vec<Rational>),
    Mqr(GeneratorSchedule),
}

/// A labelled generator of a finitely generated truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub label: String,
    pub value: Rational,
}

/// A Puiseux monoid together with the truncation depth at which the bounded
/// procedures run. For `M_{q,r}` the generators at depth `D` are
/// `a_1, b_1, ..., a_D, b_D`; an explicit list ignores the depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PuiseuxMonoidSpec {
    pub kind: MonoidKind,
    pub depth: usize,
    #[serde(skip)]
    gens: Vec<Generator>,
}

impl PuiseuxMonoidSpec {
    pub fn explicit(values: Vec<Rational>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !v.is_positive()) {
            return domain(format!("generator {v} is not positive"));
        }
        let gens = values
            .iter()
            .enumerate()
            .map(|(i, v)| Generator { label: format!("g{}", i + 1), value: v.clone() })
            .collect();
        let depth = values.len();
        Ok(PuiseuxMonoidSpec { kind: MonoidKind::Explicit(values), depth, gens })
    }

    /// `M_{q,r}` with the minimal schedule, truncated at `depth`.
    pub fn mqr(q: u64, r: u64, depth: usize) -> Result<Self> {
        Self::from_schedule(GeneratorSchedule::minimal(q, r, depth)?, depth)
    }

    pub fn from_schedule(schedule: GeneratorSchedule, depth: usize) -> Result<Self> {
        if depth > schedule.len() {
            return domain(format!("depth {depth} exceeds schedule length {}", schedule.len()));
        }
        let mut gens = Vec::with_capacity(2 * depth);
        for n in 1..=depth {
            let (a, b) = generators(&schedule, n)?;
            gens.push(Generator { label: format!("a{n}"), value: a });
            gens.push(Generator { label: format!("b{n}"), value: b });
        }
        Ok(PuiseuxMonoidSpec { kind: MonoidKind::Mqr(schedule), depth, gens })
    }

    /// The same monoid truncated at another depth.
    pub fn with_depth(&self, depth: usize) -> Result<Self> {
        match &self.kind {
            MonoidKind::Explicit(v) => Self::explicit(v.clone()),
            MonoidKind::Mqr(s) if depth <= s.len() => Self::from_schedule(s.clone(), depth),
            MonoidKind::Mqr(s) => {
                Self::from_schedule(GeneratorSchedule::minimal(s.q, s.r, depth)?, depth)
            }
        }
    }

    pub fn generator_list(&self) -> &[Generator] {
        &self.gens
    }

    pub fn values(&self) -> Vec<Rational> {
        self.gens.iter().map(|g| g.value.clone()).collect()
    }

    pub fn by_label(&self, label: &str) -> Option<&Generator> {
        self.gens.iter().find(|g| g.label == label)
    }

    /// Primes allowed in reduced denominators of elements: the prime
    /// factors of `q r` for `M_{q,r}`, of all denominators otherwise.
    /// `None` when an explicit denominator does not fit in 64 bits.
    pub fn denominator_primes(&self) -> Option<Vec<u64>> {
        let mut primes = match &self.kind {
            MonoidKind::Mqr(s) => {
                let mut v = prime_factors(s.q);
                v.extend(prime_factors(s.r));
                v
            }
            MonoidKind::Explicit(_) => {
                let mut v = Vec::new();
                for g in &self.gens {
                    v.extend(prime_factors(g.value.denom().to_u64()?));
                }
                v
            }
        };
        primes.sort_unstable();
        primes.dedup();
        Some(primes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell_examples() {
        assert_eq!(ell_sequence(2, 3, 1).unwrap(), 2);
        assert_eq!(ell_sequence(2, 3, 2).unwrap(), 5);
        assert_eq!(ell_sequence(3, 2, 1).unwrap(), 5);
        assert_eq!(GeneratorSchedule::minimal(2, 3, 6).unwrap().ell(), &[2, 5, 9, 13, 18, 24]);
        assert!(ell_sequence(2, 4, 1).is_err());
        assert!(ell_sequence(4, 3, 1).is_err());
    }

    #[test]
    fn generator_values() {
        let s = GeneratorSchedule::minimal(2, 3, 2).unwrap();
        let (a1, b1) = generators(&s, 1).unwrap();
        assert_eq!(a1, Rational::frac(17, 72));
        assert_eq!(b1, Rational::frac(19, 72));
        assert_eq!(generators(&s, 2).unwrap().0, Rational::frac(971, 7776));
        assert!(generators(&s, 3).is_err());
    }

    #[test]
    fn custom_schedule_validation() {
        assert!(GeneratorSchedule::custom(2, 3, vec![2, 5]).is_ok());
        assert!(GeneratorSchedule::custom(2, 3, vec![3, 7]).is_ok());
        assert!(GeneratorSchedule::custom(2, 3, vec![1]).is_err());
        assert!(GeneratorSchedule::custom(2, 3, vec![2, 4]).is_err());
    }

    #[test]
    fn explicit_requires_positive() {
        assert!(PuiseuxMonoidSpec::explicit(vec![Rational::zero()]).is_err());
        let m = PuiseuxMonoidSpec::explicit(vec![Rational::frac(1, 2), Rational::frac(1, 3)]).unwrap();
        assert_eq!(m.denominator_primes(), Some(vec![2, 3]));
        assert_eq!(PuiseuxMonoidSpec::mqr(5, 4, 1).unwrap().denominator_primes(), Some(vec![2, 5]));
    }
}
