use atomlab::ff::{
    binomial_irreducible, factorize, frobenius_power_check, irreducible_by_frobenius,
    irreducible_by_trial_division, is_irreducible_oracle, multiplicative_order, trinomial,
    trinomial_parameter, FpElem, FpPoly,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIMES: [u64; 11] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

fn binomial(t: usize, a: u64, p: u64) -> FpPoly {
    FpPoly::monomial(p, 1, t).sub(&FpPoly::constant(p, a))
}

fn random_poly(rng: &mut ChaCha8Rng, p: u64, max_deg: usize) -> FpPoly {
    let deg = rng.gen_range(0..=max_deg);
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(0..p) as i64).collect();
    c.push(rng.gen_range(1..p) as i64);
    FpPoly::new(p, &c).unwrap()
}

#[test]
fn binomial_criterion_agrees_with_oracle() {
    for p in PRIMES {
        for a in 1..p {
            let el = FpElem::new(a as i64, p).unwrap();
            for t in 2..=12usize {
                let crit = binomial_irreducible(t as u64, el).unwrap();
                let oracle = is_irreducible_oracle(&binomial(t, a, p)).unwrap();
                assert_eq!(crit, oracle, "x^{t} - {a} over F_{p}");
            }
        }
    }
}

#[test]
fn trinomials_are_irreducible() {
    for p in PRIMES.iter().copied().filter(|p| p % 4 == 3) {
        let a = trinomial_parameter(p).unwrap();
        for k in 1..=4 {
            let f = trinomial(a, k).unwrap();
            assert!(is_irreducible_oracle(&f).unwrap(), "p={p} k={k} f={f}");
        }
    }
}

#[test]
fn factorize_sound_and_complete() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let p = [2u64, 3, 5, 7][i % 4];
        let f = random_poly(&mut rng, p, 10);
        let fac = factorize(&f).unwrap();
        assert_eq!(fac.product(p), f);
        for (g, m) in &fac.factors {
            assert!(*m >= 1);
            assert!(g.is_monic());
            assert!(is_irreducible_oracle(g).unwrap(), "{g} from {f}");
        }
    }
}

#[test]
fn frobenius_identity_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..500 {
        let p = [2u64, 3, 5, 7, 11][i % 5];
        let g = random_poly(&mut rng, p, 6);
        let n = rng.gen_range(1..=3);
        assert!(frobenius_power_check(&g, n), "{g} n={n}");
    }
}

#[test]
fn orders_divide_group_order() {
    for p in PRIMES {
        for a in 1..p {
            let e = multiplicative_order(FpElem::new(a as i64, p).unwrap()).unwrap();
            assert_eq!((p - 1) % e, 0);
        }
    }
}

#[test]
fn oracle_paths_agree_on_overlap() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..400 {
        let p = [3u64, 5, 7][i % 3];
        let f = random_poly(&mut rng, p, 8);
        if f.is_constant() {
            continue;
        }
        assert_eq!(
            irreducible_by_trial_division(&f).unwrap(),
            irreducible_by_frobenius(&f).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn primitive_root_binomials() {
    // x^((p-1)^n) - a for primitive roots a
    for (p, n) in [(5u64, 1u32), (5, 2), (13, 1), (13, 2), (17, 1)] {
        let t = (p - 1).pow(n) as usize;
        for a in atomlab::ff::primitive_roots(p).unwrap() {
            assert!(binomial_irreducible(t as u64, a).unwrap());
            assert!(is_irreducible_oracle(&binomial(t, a.value(), p)).unwrap());
        }
    }
}
