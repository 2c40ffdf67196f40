use atomlab::arith::{MPoly, Monomial, RatFunc, Rational};
use atomlab::parse::{parse_ratfunc, parse_ry, parse_subring};
use atomlab::subring::{
    ab_target, almost_atomic_witness, claim1_constraints, claim2_polynomials, infinite_descent_demo, is_atomic_element,
    membership_subring, not_almost_atomic_witness, quasi_atomic_witness, refute_quasi_atomic_candidate,
    shipped_candidates, InvalidReason, ProbeBudget, RYPoly, RefuteVerdict, SplitKind, SubringPoly, SubringSpec,
    TopField,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..7, 1i64..5).prop_map(|(n, d)| Rational::frac(n, d))
}

fn int() -> impl Strategy<Value = Rational> {
    (-6i64..7).prop_map(Rational::from)
}

/// Small polynomial in `s` and `t` (or `s` only).
fn mpoly(with_t: bool) -> impl Strategy<Value = MPoly> {
    let tmax = if with_t { 2u32 } else { 1 };
    prop::collection::vec(((0u32..3, 0u32..tmax), -3i64..4), 1..3).prop_map(|ts| {
        ts.into_iter().fold(MPoly::zero(), |acc, ((i, j), c)| acc.add(&MPoly::term(Monomial::new(i, j), Rational::from(c))))
    })
}

fn ratfunc(with_t: bool) -> impl Strategy<Value = RatFunc> {
    (mpoly(with_t), mpoly(with_t)).prop_map(|(n, d)| {
        let d = if d.is_zero() { MPoly::one() } else { d };
        RatFunc::new(n, d).unwrap()
    })
}

/// Members of `Z[x] + Q[x]x^2` given as raw coefficient lists.
fn zq_member() -> impl Strategy<Value = Vec<Rational>> {
    (int(), int(), prop::collection::vec(rat(), 0..4)).prop_map(|(a, b, rest)| {
        let mut v = vec![a, b];
        v.extend(rest);
        v
    })
}

fn zk_member(with_t: bool) -> impl Strategy<Value = SubringPoly> {
    (int(), int(), prop::collection::vec(ratfunc(with_t), 0..3)).prop_map(|(a, b, rest)| {
        let mut v = vec![RatFunc::from(a), RatFunc::from(b)];
        v.extend(rest);
        SubringPoly::new(v)
    })
}

fn ry_member() -> impl Strategy<Value = RYPoly> {
    prop::collection::vec(zk_member(true), 0..3).prop_map(RYPoly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn criterion_matches_direct_order_coefficient(cs in zq_member()) {
        let f = SubringPoly::from_rationals(&cs);
        prop_assume!(!f.is_zero());
        let first = cs.iter().find(|c| !c.is_zero()).unwrap();
        prop_assert_eq!(is_atomic_element(&f, &SubringSpec::zq()).unwrap(), first.is_integer());
    }

    #[test]
    fn atomic_products_stay_atomic(f in zk_member(true), g in zk_member(true)) {
        let spec = SubringSpec::zst();
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assume!(is_atomic_element(&f, &spec).unwrap() && is_atomic_element(&g, &spec).unwrap());
        let fg = f.mul(&g);
        prop_assert!(membership_subring(&fg, &spec));
        prop_assert!(is_atomic_element(&fg, &spec).unwrap());
    }

    #[test]
    fn almost_atomic_witness_is_sound(cs in zq_member()) {
        let f = SubringPoly::from_rationals(&cs);
        prop_assume!(!f.is_zero());
        let w = almost_atomic_witness(&f, &SubringSpec::zq()).unwrap();
        let s = RatFunc::from(Rational::from_integer(w.s.clone()));
        prop_assert!(w.s > BigInt::from(0));
        prop_assert!(is_atomic_element(&f.scale(&s), &SubringSpec::zq()).unwrap());
        prop_assert!(w.product_atomic);
    }

    #[test]
    fn quasi_atomic_witness_is_sound(f in zk_member(false)) {
        let spec = SubringSpec::zk(TopField::Qs);
        prop_assume!(!f.is_zero());
        let w = quasi_atomic_witness(&f, &spec).unwrap();
        prop_assert!(membership_subring(&w.multiplier, &spec));
        let g = w.multiplier.mul(&f);
        prop_assert!(is_atomic_element(&g, &spec).unwrap());
        prop_assert_eq!(g.order_coeff().unwrap(), &RatFunc::one());
    }

    #[test]
    fn claim2_degree_law(z_s in (1i64..9).prop_flat_map(|v| prop_oneof![Just(v), Just(-v)]),
                         zs in prop::collection::vec(-9i64..10, 0..8), s in 0usize..4) {
        let zs: Vec<BigInt> = zs.into_iter().map(BigInt::from).collect();
        let d = s + zs.len();
        let qs = claim2_polynomials(&BigInt::from(z_s), &zs, s, d).unwrap();
        prop_assert_eq!(qs.len(), zs.len());
        for q in &qs {
            prop_assert_eq!(q.degree, q.k - s);
            prop_assert!(!q.q.is_constant());
        }
    }

    /// A low-order `T_i` always forces some coefficient of some `p_i` out of `Z`.
    #[test]
    fn low_order_forces_a_violation(ts in prop::collection::vec(zk_member(true), 1..4),
                                    e in 1u32..3, gamma in ratfunc(true)) {
        prop_assume!(!gamma.is_zero() && ts.iter().any(|t| !t.is_zero()));
        let r = claim1_constraints(&ts, e, &gamma).unwrap();
        if !r.low_order.is_empty() {
            prop_assert!(r.violation_count() > 0);
            prop_assert!(!r.all_members);
        }
    }

    #[test]
    fn subring_text_round_trip(f in zk_member(true)) {
        prop_assert_eq!(parse_subring(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn ry_text_round_trip(f in ry_member()) {
        prop_assert_eq!(parse_ry(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn ratfunc_text_round_trip(k in ratfunc(true)) {
        prop_assert_eq!(parse_ratfunc(&k.to_string()).unwrap(), k);
    }

    #[test]
    fn kappa_breaks_atomicity(f in zk_member(false)) {
        let spec = SubringSpec::zk(TopField::Qs);
        prop_assume!(!f.is_zero() && is_atomic_element(&f, &spec).unwrap());
        let r = not_almost_atomic_witness(&spec, &RatFunc::s(), &f).unwrap();
        prop_assert!(!r.product_atomic);
        prop_assert_eq!(r.product_order_coeff, r.f_order_coeff.mul(&RatFunc::s()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn random_factorizations_never_validate(f in ry_member(), g in ry_member(), split in 0usize..3) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let big = f.mul(&g);
        let ab = ab_target(&RYPoly::one());
        let factors = match split {
            0 => vec![big.clone(), ab],
            1 => vec![f.clone(), g.mul(&ab)],
            _ => vec![f.mul(&ab), g.clone()],
        };
        if let Ok(v) = refute_quasi_atomic_candidate(&big, &factors, &ProbeBudget::default()) {
            prop_assert!(!v.is_valid());
            if let RefuteVerdict::Invalid { reason: InvalidReason::ReducibleFactor { index, left, right, .. } } = v {
                prop_assert_eq!(left.mul(&right), factors[index].clone());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mpoly_gcd_divides_and_is_maximal(a in mpoly(true), b in mpoly(true), c in mpoly(true)) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let (ac, bc) = (a.mul(&c), b.mul(&c));
        let g = ac.gcd(&bc);
        prop_assert!(ac.exact_div(&g).is_some() && bc.exact_div(&g).is_some());
        prop_assert!(g.exact_div(&c).is_some());
    }

    #[test]
    fn subring_gcd_divides_and_is_maximal(a in zk_member(true), b in zk_member(true), c in zk_member(true)) {
        prop_assume!(!c.is_zero() && !a.is_zero() && !b.is_zero());
        let (ac, bc) = (a.mul(&c), b.mul(&c));
        let g = ac.gcd(&bc);
        prop_assert!(ac.div_rem(&g).unwrap().1.is_zero() && bc.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(g.div_rem(&c).unwrap().1.is_zero());
    }
}

#[test]
fn descent_chain_of_length_ten() {
    let c = infinite_descent_demo(&Rational::frac(1, 2), &BigInt::from(2), 10).unwrap();
    assert!(c.proper);
    assert_eq!(c.steps.len(), 10);
    let two = RatFunc::from_int(2);
    let mut prev = c.start.clone();
    for s in &c.steps {
        assert!(s.member && !s.unit && !s.atomic);
        assert_eq!(s.cofactor.scale(&two), prev);
        let expected = SubringPoly::monomial(RatFunc::from(Rational::new(1, BigInt::from(2).pow(s.k as u32 + 1)).unwrap()), 2);
        assert_eq!(s.cofactor, expected);
        prev = s.cofactor.clone();
    }
}

#[derive(Debug, PartialEq)]
enum Expect {
    NonMember(usize),
    Mismatch,
    Reducible(usize, SplitKind),
}

#[test]
fn shipped_candidates_are_refuted() {
    use Expect::*;
    use SplitKind::*;
    let expected = [
        Reducible(0, IntegerContent),
        NonMember(2),
        NonMember(1),
        Reducible(1, IntegerContent),
        Mismatch,
        Mismatch,
        Reducible(1, IntegerContent),
        Reducible(1, IntegerContent),
        Reducible(1, IntegerContent),
        NonMember(1),
        Reducible(1, IntegerContent),
        Reducible(1, IntegerContent),
        NonMember(1),
        NonMember(1),
        NonMember(2),
        Reducible(2, IntegerContent),
        NonMember(1),
        Reducible(0, XContent),
        Reducible(0, XContent),
        Reducible(0, YContent),
    ];
    let cands = shipped_candidates().unwrap();
    assert_eq!(cands.len(), expected.len());
    for (c, want) in cands.iter().zip(expected) {
        let v = refute_quasi_atomic_candidate(&c.f, &c.factors, &ProbeBudget::default()).unwrap();
        let got = match v {
            RefuteVerdict::Invalid { reason: InvalidReason::NonMember { index, .. } } => NonMember(index),
            RefuteVerdict::Invalid { reason: InvalidReason::ProductMismatch { .. } } => Mismatch,
            RefuteVerdict::Invalid { reason: InvalidReason::ReducibleFactor { index, kind, ref left, ref right } } => {
                assert_eq!(left.mul(right), c.factors[index], "{}", c.label);
                Reducible(index, kind)
            }
            other => panic!("{}: {other:?}", c.label),
        };
        assert_eq!(got, want, "{}", c.label);
    }
}
