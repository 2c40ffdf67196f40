use atomlab::arith::{in_localization, Rational};
use atomlab::monoid::{
    divides, factorizations_bounded, generators, is_atom_bounded, membership, membership_over,
    GeneratorSchedule, PuiseuxMonoidSpec,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

/// Plain recursive enumeration over all coefficient vectors bounded by
/// `target / g`, with no modular reasoning.
fn brute_member(values: &[Rational], target: &Rational) -> bool {
    fn go(values: &[Rational], i: usize, rem: &Rational) -> bool {
        if rem.is_zero() {
            return true;
        }
        if i == values.len() || rem.is_negative() {
            return false;
        }
        let mut left = rem.clone();
        loop {
            if go(values, i + 1, &left) {
                return true;
            }
            left = &left - &values[i];
            if left.is_negative() {
                return false;
            }
        }
    }
    go(values, 0, target)
}

fn brute_count(values: &[Rational], target: &Rational) -> usize {
    fn go(values: &[Rational], i: usize, rem: &Rational) -> usize {
        if rem.is_zero() {
            return 1;
        }
        if i == values.len() {
            return 0;
        }
        let mut total = 0;
        let mut left = rem.clone();
        while !left.is_negative() {
            total += go(values, i + 1, &left);
            left = &left - &values[i];
        }
        total
    }
    go(values, 0, target)
}

#[test]
fn mqr_membership_matches_brute_force() {
    let m = PuiseuxMonoidSpec::mqr(2, 3, 3).unwrap();
    let vals = m.values();
    let den = 2 * 2i64.pow(6) * 3i64.pow(9);
    // targets k / den over a coarse grid in (0, 1/2]
    for k in (1..=den / 2).step_by(997) {
        let t = r(k, den);
        let cert = membership(&t, &m);
        assert_eq!(cert.is_some(), brute_member(&vals, &t), "target {t}");
        if let Some(c) = cert {
            assert!(c.verify(&vals, &t));
        }
    }
}

#[test]
fn sums_of_generators_are_certified() {
    let m = PuiseuxMonoidSpec::mqr(3, 2, 4).unwrap();
    let vals = m.values();
    for mask in 0u32..256 {
        let mut t = Rational::zero();
        for (i, v) in vals.iter().enumerate() {
            let c = (mask >> i) & 1;
            t = &t + &(v * Rational::from(c as i64));
        }
        let c = membership(&t, &m).expect("a sum of generators is a member");
        assert!(c.verify(&vals, &t));
    }
}

#[test]
fn first_pair_difference_rejected_by_brute_force_too() {
    let m = PuiseuxMonoidSpec::mqr(2, 3, 6).unwrap();
    assert!(membership(&r(1, 36), &m).is_none());
    assert!(!brute_member(&m.values(), &r(1, 36)));
}

#[test]
fn factorization_count_matches_brute_force() {
    let m = PuiseuxMonoidSpec::mqr(2, 3, 2).unwrap();
    let vals = m.values();
    for t in [r(1, 2), r(1, 4), r(3, 4), r(1, 1)] {
        let fs = factorizations_bounded(&t, &m);
        assert_eq!(fs.len(), brute_count(&vals, &t), "target {t}");
        for c in &fs {
            assert!(c.verify(&vals, &t));
        }
    }
}

#[test]
fn interleaving_and_sum_identity() {
    for (q, rr) in [(2u64, 3u64), (3, 2), (5, 4), (7, 2)] {
        let s = GeneratorSchedule::minimal(q, rr, 9).unwrap();
        let mut prev_b = Rational::one();
        for n in 1..=9 {
            let (a, b) = generators(&s, n).unwrap();
            assert!(prev_b > b && b > a, "q={q} r={rr} n={n}");
            assert_eq!(&a + &b, Rational::from_integer(q).pow(n as i32).unwrap().recip().unwrap());
            let bound = BigInt::from(2) * BigInt::from(q).pow(2 * n as u32) * BigInt::from(rr).pow(s.ell()[n - 1] as u32);
            assert!((&bound % a.denom()) == BigInt::from(0));
            assert!((&bound % b.denom()) == BigInt::from(0));
            let primes: Vec<u64> = atomlab::arith::prime_factors(q * rr);
            assert!(in_localization(&a, &primes) && in_localization(&b, &primes));
            prev_b = a;
        }
    }
}

#[test]
fn atoms_stable_across_depths() {
    for (q, rr) in [(2u64, 3u64), (3, 2), (5, 4)] {
        for depth in 1..=6 {
            let m = PuiseuxMonoidSpec::mqr(q, rr, depth).unwrap();
            for g in m.generator_list().iter().take(6) {
                let v = is_atom_bounded(&g.value, &m).unwrap();
                assert!(v.is_atom(), "q={q} r={rr} depth={depth} {}", g.label);
            }
        }
    }
}

#[test]
fn non_divisibility_of_pairs() {
    for (q, rr) in [(2u64, 3u64), (3, 2)] {
        let m = PuiseuxMonoidSpec::mqr(q, rr, 6).unwrap();
        let v = m.values();
        for n in 0..3 {
            assert!(divides(&v[2 * n + 1], &v[2 * n], &m).is_none());
        }
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (1i64..8, 1i64..7).prop_map(|(n, d)| r(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn explicit_membership_matches_brute_force(
        gens in prop::collection::vec(small_rational(), 1..4),
        num in 0i64..40,
        den in 1i64..13,
    ) {
        let t = r(num, den);
        let cert = membership_over(&t, &gens);
        prop_assert_eq!(cert.is_some(), brute_member(&gens, &t));
        if let Some(c) = cert {
            prop_assert!(c.verify(&gens, &t));
        }
    }

    #[test]
    fn membership_monotone_in_depth(k in 0i64..2000, depth in 1usize..4) {
        let small = PuiseuxMonoidSpec::mqr(2, 3, depth).unwrap();
        let big = small.with_depth(depth + 1).unwrap();
        let den = small.values().iter().map(|v| v.denom().clone()).max().unwrap();
        let t = Rational::new(k, den).unwrap();
        if membership(&t, &small).is_some() {
            prop_assert!(membership(&t, &big).is_some());
        }
    }
}
