use num_bigint::BigInt;
use num_traits::{One, Pow, Signed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{CheckParams, Job, Outcome, Suite, Verdict};
use crate::arith::{in_localization, is_prime, prime_factors, MPoly, Monomial, RatFunc, Rational};
use crate::error::Result;
use crate::ff::{
    binomial_irreducible, factorize, is_irreducible_with, primitive_roots, trinomial, trinomial_parameter, FpElem,
    FpPoly,
};
use crate::monoid::{divides, generators, is_atom_bounded, membership, GeneratorSchedule, PuiseuxMonoidSpec};
use crate::semidomain::{
    ascent_fp, ascent_z, atom_test_bounded, exact_divide, indecomposable_fp, indecomposable_z, support_in_monoid,
    AtomTestVerdict, CoeffDomain, PolyExpr, ZPoly,
};
use crate::subring::{
    almost_atomic_witness, claim1_constraints, claim2_polynomials, infinite_descent_demo, is_atomic_element,
    membership_subring, not_almost_atomic_witness, quasi_atomic_witness, refute_quasi_atomic_candidate,
    shipped_candidates, shipped_claim1_corpus, RefuteVerdict, SubringPoly, SubringSpec, TopField,
};

pub(super) fn jobs(suite: Suite, p: &CheckParams) -> Vec<Job> {
    match suite {
        Suite::PropMqr => prop_mqr(p),
        Suite::Binomials => binomials(p),
        Suite::Trinomials => trinomials(p),
        Suite::Ascent => ascent(p),
        Suite::Subring => subring(p),
        Suite::Nonascent => nonascent(p),
        Suite::All => vec![],
    }
}

fn q_pow(q: u64, n: usize) -> Rational {
    Rational::from_integer(BigInt::from(q).pow(n))
}

fn prop_mqr(p: &CheckParams) -> Vec<Job> {
    let mut jobs = Vec::new();
    let n = p.n;
    for &(q, r) in &p.pairs {
        let params = json!({ "q": q, "r": r, "n": n });
        let budgets = json!({ "n": n });
        let prefix = format!("prop-mqr.{q}-{r}");
        jobs.push(Job::new(
            format!("{prefix}.schedule"),
            Suite::PropMqr,
            "exponent schedule: l_n strictly increasing, r^(l_n - l_(n-1)) > 2 q^(n+1), each l_n minimal",
            params.clone(),
            budgets.clone(),
            move |_| schedule_check(q, r, n),
        ));
        jobs.push(Job::new(
            format!("{prefix}.interleaving"),
            Suite::PropMqr,
            "generators interleave: 1 > b_1 and b_n > a_n > b_(n+1)",
            params.clone(),
            budgets.clone(),
            move |_| interleaving_check(q, r, n),
        ));
        jobs.push(Job::new(
            format!("{prefix}.sum-identity"),
            Suite::PropMqr,
            "a_n + b_n = q^(-n)",
            params.clone(),
            budgets.clone(),
            move |_| {
                let s = GeneratorSchedule::minimal(q, r, n)?;
                let mut rows = Vec::new();
                let mut ok = true;
                for k in 1..=n {
                    let (a, b) = generators(&s, k)?;
                    let holds = &a + &b == q_pow(q, k).recip()?;
                    ok &= holds;
                    rows.push(json!({ "n": k, "sum": (&a + &b).to_string(), "holds": holds }));
                }
                Ok(Outcome::pass_if(ok, json!({ "rows": rows })))
            },
        ));
        jobs.push(Job::new(
            format!("{prefix}.localization"),
            Suite::PropMqr,
            "every generator lies in Z[1/q, 1/r] after reduction",
            params.clone(),
            budgets.clone(),
            move |_| {
                let s = GeneratorSchedule::minimal(q, r, n)?;
                let mut primes = prime_factors(q);
                primes.extend(prime_factors(r));
                let mut outside = Vec::new();
                for k in 1..=n {
                    let (a, b) = generators(&s, k)?;
                    for (label, g) in [("a", a), ("b", b)] {
                        if !in_localization(&g, &primes) {
                            outside.push(format!("{label}{k} = {g}"));
                        }
                    }
                }
                Ok(Outcome::pass_if(outside.is_empty(), json!({ "primes": primes, "outside": outside })))
            },
        ));
        jobs.push(Job::new(
            format!("{prefix}.unit-fractions"),
            Suite::PropMqr,
            "1/q^n is certified in the truncation at depth n",
            params,
            budgets,
            move |_| {
                let mut rows = Vec::new();
                let mut ok = true;
                for k in 1..=n {
                    let spec = PuiseuxMonoidSpec::mqr(q, r, k)?;
                    let target = q_pow(q, k).recip()?;
                    let cert = membership(&target, &spec);
                    let verified = cert.as_ref().is_some_and(|c| c.verify(&spec.values(), &target));
                    ok &= verified;
                    rows.push(json!({
                        "n": k,
                        "target": target.to_string(),
                        "certificate": cert.map(|c| c.labeled(&spec)),
                    }));
                }
                Ok(Outcome::pass_if(ok, json!({ "rows": rows })))
            },
        ));
    }
    let (atom_n, depth) = (p.atom_n, p.depth);
    for &(q, r) in &p.atom_pairs {
        let params = json!({ "q": q, "r": r, "n": atom_n, "depth": depth });
        let budgets = json!({ "depth": depth });
        let prefix = format!("prop-mqr.{q}-{r}");
        jobs.push(Job::new(
            format!("{prefix}.atoms"),
            Suite::PropMqr,
            "a_n and b_n are atoms of every truncation up to the depth",
            params.clone(),
            budgets.clone(),
            move |_| {
                let mut rows = Vec::new();
                let mut ok = true;
                for d in 1..=depth {
                    let spec = PuiseuxMonoidSpec::mqr(q, r, d)?;
                    for k in 1..=atom_n.min(d) {
                        for label in [format!("a{k}"), format!("b{k}")] {
                            let g = spec.by_label(&label).expect("generator present").value.clone();
                            let v = is_atom_bounded(&g, &spec)?;
                            ok &= v.is_atom();
                            rows.push(json!({ "depth": d, "generator": label, "verdict": v }));
                        }
                    }
                }
                Ok(Outcome::pass_if(ok, json!({ "rows": rows })))
            },
        ));
        jobs.push(Job::new(
            format!("{prefix}.non-divisibility"),
            Suite::PropMqr,
            "b_n does not divide a_n",
            params,
            budgets,
            move |_| {
                let spec = PuiseuxMonoidSpec::mqr(q, r, depth.max(atom_n))?;
                let mut rows = Vec::new();
                let mut ok = true;
                for k in 1..=atom_n {
                    let a = spec.by_label(&format!("a{k}")).expect("generator present").value.clone();
                    let b = spec.by_label(&format!("b{k}")).expect("generator present").value.clone();
                    let cert = divides(&b, &a, &spec);
                    ok &= cert.is_none();
                    rows.push(json!({ "n": k, "divides": cert.is_some() }));
                }
                Ok(Outcome::pass_if(ok, json!({ "rows": rows })))
            },
        ));
    }
    jobs
}

fn schedule_check(q: u64, r: u64, n: usize) -> Result<Outcome> {
    let s = GeneratorSchedule::minimal(q, r, n)?;
    let ell = s.ell().to_vec();
    let mut increasing = true;
    let mut admissible = true;
    let mut minimal = true;
    let mut prev = 0u64;
    for (i, &l) in ell.iter().enumerate() {
        increasing &= l > prev;
        let bound = BigInt::from(2) * BigInt::from(q).pow(i + 2);
        let step = l.saturating_sub(prev);
        admissible &= BigInt::from(r).pow(step) > bound;
        minimal &= step == 0 || BigInt::from(r).pow(step - 1) <= bound;
        prev = l;
    }
    Ok(Outcome::pass_if(
        increasing && admissible && minimal,
        json!({ "ell": ell, "increasing": increasing, "admissible": admissible, "minimal": minimal }),
    ))
}

fn interleaving_check(q: u64, r: u64, n: usize) -> Result<Outcome> {
    let s = GeneratorSchedule::minimal(q, r, n + 1)?;
    let gens: Vec<(Rational, Rational)> = (1..=n + 1).map(|k| generators(&s, k)).collect::<Result<_>>()?;
    let mut ok = Rational::one() > gens[0].1;
    for k in 0..n {
        ok &= gens[k].1 > gens[k].0 && gens[k].0 > gens[k + 1].1;
    }
    let listed: Vec<Value> = gens
        .iter()
        .take(n)
        .enumerate()
        .map(|(k, (a, b))| json!({ "n": k + 1, "a": a.to_string(), "b": b.to_string() }))
        .collect();
    Ok(Outcome::pass_if(ok, json!({ "generators": listed })))
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

fn binomial(p: u64, t: usize, a: u64) -> FpPoly {
    FpPoly::monomial(p, 1, t).sub(&FpPoly::constant(p, a))
}

fn binomials(p: &CheckParams) -> Vec<Job> {
    let mut jobs = Vec::new();
    let (tmax, oracle) = (p.tmax, p.oracle);
    let budgets = json!({ "oracle": oracle });
    for prime in primes_up_to(p.pmax) {
        jobs.push(Job::new(
            format!("binomials.p{prime:02}"),
            Suite::Binomials,
            "x^t - a over F_p: criterion agrees with the irreducibility oracle",
            json!({ "p": prime, "t": [2, tmax] }),
            budgets.clone(),
            move |_| {
                let mut disagreements = Vec::new();
                let (mut agreements, mut irreducible) = (0u64, 0u64);
                for a in 1..prime {
                    let el = FpElem::new(a as i64, prime)?;
                    for t in 2..=tmax {
                        let crit = binomial_irreducible(t, el)?;
                        let truth = is_irreducible_with(&binomial(prime, t as usize, a), &oracle)?;
                        if crit == truth {
                            agreements += 1;
                        } else {
                            disagreements.push(json!({ "a": a, "t": t, "criterion": crit, "oracle": truth }));
                        }
                        irreducible += u64::from(truth);
                    }
                }
                Ok(Outcome::pass_if(
                    disagreements.is_empty(),
                    json!({ "agreements": agreements, "irreducible": irreducible, "disagreements": disagreements }),
                ))
            },
        ));
    }
    let cases: Vec<(u64, u32)> =
        [(5, 1), (5, 2), (13, 1), (13, 2), (17, 1)].into_iter().filter(|&(q, _)| q <= p.pmax).collect();
    if !cases.is_empty() {
        jobs.push(Job::new(
            "binomials.primitive-roots",
            Suite::Binomials,
            "x^((p-1)^n) - a is irreducible for every primitive root a",
            json!({ "cases": cases }),
            budgets,
            move |_| {
                let mut rows = Vec::new();
                let mut ok = true;
                for &(prime, n) in &cases {
                    let t = (prime - 1).pow(n);
                    for a in primitive_roots(prime)? {
                        let crit = binomial_irreducible(t, a)?;
                        let truth = is_irreducible_with(&binomial(prime, t as usize, a.value()), &oracle)?;
                        ok &= crit && truth;
                        rows.push(json!({ "p": prime, "n": n, "a": a.value(), "criterion": crit, "oracle": truth }));
                    }
                }
                Ok(Outcome::pass_if(ok, json!({ "rows": rows })))
            },
        ));
    }
    jobs
}

fn trinomials(p: &CheckParams) -> Vec<Job> {
    let (kmax, oracle) = (p.kmax, p.oracle);
    p.trinomial_primes
        .iter()
        .map(|&prime| {
            Job::new(
                format!("trinomials.p{prime:02}"),
                Suite::Trinomials,
                "x^(2^k) - 2a x^(2^(k-1)) - 1 with the constructed a is irreducible over F_p",
                json!({ "p": prime, "k": [1, kmax] }),
                json!({ "oracle": oracle }),
                move |_| {
                    let a = trinomial_parameter(prime)?;
                    let mut rows = Vec::new();
                    let mut ok = true;
                    for k in 1..=kmax {
                        let f = trinomial(a, k)?;
                        let irr = is_irreducible_with(&f, &oracle)?;
                        ok &= irr;
                        rows.push(json!({ "k": k, "poly": f.to_string(), "irreducible": irr }));
                    }
                    Ok(Outcome::pass_if(ok, json!({ "a": a.value(), "rows": rows })))
                },
            )
        })
        .collect()
}

fn random_fp(rng: &mut ChaCha8Rng, p: u64, max_deg: usize) -> Result<FpPoly> {
    let deg = rng.gen_range(1..=max_deg);
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(0..p) as i64).collect();
    c.push(rng.gen_range(1..p) as i64);
    FpPoly::new(p, &c)
}

fn random_z(rng: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> ZPoly {
    let deg = rng.gen_range(1..=max_deg);
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    let mut lead = 0;
    while lead == 0 {
        lead = rng.gen_range(-bound..=bound);
    }
    c.push(lead);
    ZPoly::new(&c)
}

fn ascent(p: &CheckParams) -> Vec<Job> {
    let mut jobs = Vec::new();
    let (cases, degree) = (p.ascent_fp_cases, p.ascent_fp_degree);
    for prime in [2u64, 3] {
        jobs.push(Job::new(
            format!("ascent.f{prime}"),
            Suite::Ascent,
            "ascent over F_p[x]: exact reassembly, indecomposable factors, atoms match the factorizer",
            json!({ "p": prime, "cases": cases, "max_degree": degree }),
            json!({ "max_degree": degree }),
            move |rng| {
                let mut failures = Vec::new();
                for _ in 0..cases {
                    let f = random_fp(rng, prime, degree)?;
                    let a = ascent_fp(&f)?;
                    let mut atoms = a.atoms.clone();
                    atoms.sort_by(|x, y| x.canonical_cmp(y));
                    let reassembles = a.product(prime) == f;
                    let indecomposable = a.atoms.iter().map(indecomposable_fp).collect::<Result<Vec<_>>>()?;
                    let matches = atoms == factorize(&f)?.flattened();
                    if !(reassembles && indecomposable.iter().all(|&b| b) && matches) {
                        failures.push(f.to_string());
                    }
                }
                Ok(Outcome::pass_if(failures.is_empty(), json!({ "cases": cases, "failures": failures })))
            },
        ));
    }
    let (cases, degree, bound) = (p.ascent_z_cases, p.ascent_z_degree, p.ascent_z_coeff);
    jobs.push(Job::new(
        "ascent.z",
        Suite::Ascent,
        "ascent over Z[x]: exact reassembly, indecomposable factors, d is the signed content and the product of the removed gcds",
        json!({ "cases": cases, "max_degree": degree, "max_coefficient": bound }),
        json!({ "max_degree": degree }),
        move |rng| {
            let mut failures = Vec::new();
            for _ in 0..cases {
                let f = random_z(rng, degree, bound);
                let a = ascent_z(&f)?;
                let mut content = f.content();
                if f.leading().is_negative() {
                    content = -content;
                }
                let ok = a.product() == f
                    && a.d == content
                    && a.mcds.iter().product::<BigInt>() == a.d
                    && a.atoms.iter().all(|g| g.content().is_one() && g.leading().is_positive())
                    && a.atoms.iter().map(indecomposable_z).collect::<Result<Vec<_>>>()?.iter().all(|&b| b);
                if !ok {
                    failures.push(f.to_string());
                }
            }
            Ok(Outcome::pass_if(failures.is_empty(), json!({ "cases": cases, "failures": failures })))
        },
    ));
    jobs
}

fn f2(terms: &[(Rational, i64)]) -> Result<PolyExpr> {
    PolyExpr::new(CoeffDomain::Fp(2), terms.iter().map(|(e, c)| (e.clone(), Rational::from(*c))))
}

fn fd() -> Result<PolyExpr> {
    f2(&[(Rational::from(2), 1), (Rational::one(), 1), (Rational::zero(), 1)])
}

fn nonascent(p: &CheckParams) -> Vec<Job> {
    let mut jobs = Vec::new();
    let (images, oracle) = (p.frobenius_images, p.oracle);
    jobs.push(Job::new(
        "nonascent.frobenius-images",
        Suite::Nonascent,
        "x^(2*3^n) + x^(3^n) + 1 is irreducible over F_2",
        json!({ "n": [0, images] }),
        json!({ "oracle": oracle }),
        move |_| {
            let mut rows = Vec::new();
            let mut ok = true;
            for n in 0..=images {
                let m = 3usize.pow(n);
                let f = FpPoly::new(2, &[1, 1, 1])?.compose_power(m);
                let irr = is_irreducible_with(&f, &oracle)?;
                ok &= irr;
                rows.push(json!({ "n": n, "degree": 2 * m, "irreducible": irr }));
            }
            Ok(Outcome::pass_if(ok, json!({ "rows": rows })))
        },
    ));
    let (depth, budget) = (p.depth, p.atom_test);
    jobs.push(Job::new(
        "nonascent.atom-test",
        Suite::Nonascent,
        "x^2 + x + 1 = (x + x^(1/2) + 1)^2 in F_2[M_{2,3}] with certified supports",
        json!({ "q": 2, "r": 3, "depth": depth, "f": "x^2+x+1" }),
        json!({ "depth": depth, "atom_test": budget }),
        move |_| {
            let spec = PuiseuxMonoidSpec::mqr(2, 3, depth)?;
            let f = fd()?;
            let v = atom_test_bounded(&f, &spec, &budget)?;
            let verdict = match &v {
                AtomTestVerdict::Reducible { left, right, left_support, right_support, .. } => {
                    let half = f2(&[(Rational::one(), 1), (Rational::frac(1, 2), 1), (Rational::zero(), 1)])?;
                    let ok = left.mul(right)? == f
                        && *left == half
                        && *right == half
                        && left_support.all_certified
                        && right_support.all_certified;
                    if ok {
                        Verdict::Pass
                    } else {
                        Verdict::Fail
                    }
                }
                AtomTestVerdict::Unknown { .. } => Verdict::UnknownAtBudget,
                _ => Verdict::Fail,
            };
            Ok(Outcome { verdict, payload: serde_json::to_value(&v).expect("verdict serializes") })
        },
    ));
    let instances = p.quotient_instances;
    jobs.push(Job::new(
        "nonascent.quotient-support",
        Suite::Nonascent,
        "for A = f_d(x^(1/2^n)) and B supported in M, the quotient AB / A is recovered with support certified in M",
        json!({ "instances": instances, "generator_depth": 3, "n": [0, 4] }),
        json!({ "depth": 4 }),
        move |rng| {
            let spec = PuiseuxMonoidSpec::mqr(2, 3, 3)?;
            let vals = spec.values();
            let mut failures = Vec::new();
            let mut constructed = 0usize;
            while constructed < instances {
                let n = constructed % 5;
                let a = fd()?.substitute_power(&Rational::frac(1, 1 << n))?;
                let mut b = PolyExpr::zero(CoeffDomain::Fp(2));
                for _ in 0..rng.gen_range(1..=3) {
                    let mut e = Rational::zero();
                    for _ in 0..rng.gen_range(0..=3) {
                        e = &e + &vals[rng.gen_range(0..vals.len())];
                    }
                    b = b.add(&PolyExpr::x_pow(CoeffDomain::Fp(2), e)?)?;
                }
                if b.is_zero() {
                    continue;
                }
                constructed += 1;
                let quotient = exact_divide(&a.mul(&b)?, &a)?;
                let certified = quotient.as_ref().is_some_and(|q| *q == b && support_in_monoid(q, &spec).all_certified);
                let a_spec = PuiseuxMonoidSpec::mqr(2, 3, n.max(3))?;
                if !(certified && support_in_monoid(&a, &a_spec).all_certified) {
                    failures.push(json!({ "n": n, "b": b.to_string() }));
                }
            }
            Ok(Outcome::pass_if(failures.is_empty(), json!({ "instances": constructed, "failures": failures })))
        },
    ));
    jobs
}

fn rat(rng: &mut ChaCha8Rng, int: bool) -> Rational {
    let n = rng.gen_range(-6i64..=6);
    if int {
        Rational::from(n)
    } else {
        Rational::frac(n, rng.gen_range(1..=6))
    }
}

/// A random member of `Z + Zx + x^2 Q[x]`, nonzero.
fn random_zq(rng: &mut ChaCha8Rng) -> Vec<Rational> {
    loop {
        let len = rng.gen_range(1..=5);
        let v: Vec<Rational> = (0..len).map(|i| rat(rng, i < 2)).collect();
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

/// `(a + b s) / (c + d s)` with small integer entries.
fn random_qs(rng: &mut ChaCha8Rng) -> RatFunc {
    let lin = |rng: &mut ChaCha8Rng| {
        MPoly::constant(Rational::from(rng.gen_range(-4i64..=4)))
            .add(&MPoly::term(Monomial::new(1, 0), Rational::from(rng.gen_range(-4i64..=4))))
    };
    let num = lin(rng);
    let mut den = lin(rng);
    while den.is_zero() {
        den = lin(rng);
    }
    RatFunc::new(num, den).expect("nonzero denominator")
}

/// A random nonzero member of `Z + Zx + x^2 Q(s)[x]`.
fn random_zqs(rng: &mut ChaCha8Rng) -> SubringPoly {
    loop {
        let len = rng.gen_range(1..=5);
        let v: Vec<RatFunc> =
            (0..len).map(|i| if i < 2 { RatFunc::from(rat(rng, true)) } else { random_qs(rng) }).collect();
        let f = SubringPoly::new(v);
        if !f.is_zero() {
            return f;
        }
    }
}

fn subring(p: &CheckParams) -> Vec<Job> {
    let mut jobs = Vec::new();
    let cases = p.subring_cases;
    jobs.push(Job::new(
        "subring.criterion",
        Suite::Subring,
        "in Z[x] + Q[x]x^2 a nonzero f is atomic iff its order coefficient is an integer",
        json!({ "cases": cases, "ring": SubringSpec::zq().to_string() }),
        json!({ "cases": cases }),
        move |rng| {
            let spec = SubringSpec::zq();
            let mut corpus =
                vec![vec![Rational::zero(), Rational::zero(), Rational::frac(1, 2)], vec![Rational::zero(), Rational::one()]];
            while corpus.len() < cases {
                corpus.push(random_zq(rng));
            }
            let mut mismatches = Vec::new();
            let mut atomic = 0usize;
            for cs in &corpus {
                let f = SubringPoly::from_rationals(cs);
                let expected = cs.iter().find(|c| !c.is_zero()).expect("nonzero").is_integer();
                let got = is_atomic_element(&f, &spec)?;
                atomic += usize::from(got);
                if got != expected {
                    mismatches.push(f.to_string());
                }
            }
            let anchors = [
                is_atomic_element(&SubringPoly::from_rationals(&corpus[0]), &spec)?,
                is_atomic_element(&SubringPoly::from_rationals(&corpus[1]), &spec)?,
            ];
            Ok(Outcome::pass_if(
                mismatches.is_empty() && anchors == [false, true],
                json!({ "cases": corpus.len(), "atomic": atomic, "half_x2_atomic": anchors[0], "x_atomic": anchors[1], "mismatches": mismatches }),
            ))
        },
    ));
    jobs.push(Job::new(
        "subring.witnesses",
        Suite::Subring,
        "almost-atomic and quasi-atomic multipliers always produce elements passing the criterion",
        json!({ "cases": cases }),
        json!({ "cases": cases }),
        move |rng| {
            let zq = SubringSpec::zq();
            let zqs = SubringSpec::zk(TopField::Qs);
            let mut failures = Vec::new();
            for _ in 0..cases {
                let f = SubringPoly::from_rationals(&random_zq(rng));
                let w = almost_atomic_witness(&f, &zq)?;
                if !(w.product_atomic && is_atomic_element(&w.product, &zq)?) {
                    failures.push(json!({ "mode": "almost", "f": f.to_string() }));
                }
                let g = random_zqs(rng);
                let w = quasi_atomic_witness(&g, &zqs)?;
                if !(w.product_atomic && membership_subring(&w.multiplier, &zqs) && is_atomic_element(&w.product, &zqs)?) {
                    failures.push(json!({ "mode": "quasi", "f": g.to_string() }));
                }
            }
            Ok(Outcome::pass_if(failures.is_empty(), json!({ "cases": cases, "failures": failures })))
        },
    ));
    let kappa_cases = p.kappa_cases;
    jobs.push(Job::new(
        "subring.kappa",
        Suite::Subring,
        "for kappa = s outside Q, kappa x^2 f is not atomic in Z[x] + Q(s)[x]x^2 for atomic f",
        json!({ "cases": kappa_cases, "kappa": "s" }),
        json!({ "cases": kappa_cases }),
        move |rng| {
            let spec = SubringSpec::zk(TopField::Qs);
            let mut records = 0usize;
            let mut failures = Vec::new();
            while records < kappa_cases {
                let f = random_zqs(rng);
                if !is_atomic_element(&f, &spec)? {
                    continue;
                }
                records += 1;
                let rec = not_almost_atomic_witness(&spec, &RatFunc::s(), &f)?;
                if rec.product_atomic {
                    failures.push(f.to_string());
                }
            }
            Ok(Outcome::pass_if(failures.is_empty(), json!({ "records": records, "failures": failures })))
        },
    ));
    let depth = p.descent_depth;
    jobs.push(Job::new(
        "subring.descent",
        Suite::Subring,
        "q x^2 = a (q x^2 / a) = ... is a proper infinite descent in Z[x] + Q[x]x^2",
        json!({ "q": "1/2", "a": 2, "depth": depth }),
        json!({ "depth": depth }),
        move |_| {
            let chain = infinite_descent_demo(&Rational::frac(1, 2), &BigInt::from(2), depth)?;
            let ok = chain.proper
                && chain.steps.len() == depth
                && chain.steps.iter().all(|s| s.member && !s.unit && !s.atomic);
            Ok(Outcome::pass_if(ok, serde_json::to_value(&chain).expect("chain serializes")))
        },
    ));
    jobs.push(Job::new(
        "subring.claim2",
        Suite::Subring,
        "the recursively defined Q_k are nonconstant with deg Q_k = k - s",
        json!({ "cases": cases }),
        json!({ "cases": cases }),
        move |rng| {
            let mut failures = Vec::new();
            for _ in 0..cases {
                let mut z_s = 0i64;
                while z_s == 0 {
                    z_s = rng.gen_range(-9..=9);
                }
                let s_index = rng.gen_range(0..4usize);
                let count = rng.gen_range(1..=8usize);
                let zs: Vec<BigInt> = (0..count).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
                let qs = claim2_polynomials(&BigInt::from(z_s), &zs, s_index, s_index + count)?;
                if qs.len() != count || qs.iter().any(|q| q.degree != q.k - s_index || q.q.is_constant()) {
                    failures.push(json!({ "z_s": z_s, "s": s_index, "z": zs.iter().map(|z| z.to_string()).collect::<Vec<_>>() }));
                }
            }
            Ok(Outcome::pass_if(failures.is_empty(), json!({ "cases": cases, "failures": failures })))
        },
    ));
    jobs.push(Job::new(
        "subring.claim1",
        Suite::Subring,
        "low-order T_i force non-integral s/gamma, t/gamma coefficients in the factor A(y)",
        json!({ "corpus": "shipped" }),
        json!({}),
        move |_| {
            let mut rows = Vec::new();
            let mut ok = true;
            for case in shipped_claim1_corpus()? {
                let r = claim1_constraints(&case.ts, case.e, &case.gamma)?;
                let positions = r.violation_positions();
                let matches = positions == case.violations;
                let forced = r.low_order.is_empty() || r.violation_count() > 0;
                ok &= matches && forced;
                rows.push(json!({ "label": case.label, "violations": positions, "expected": case.violations }));
            }
            Ok(Outcome::pass_if(ok, json!({ "cases": rows })))
        },
    ));
    let budget = p.probe;
    jobs.push(Job::new(
        "subring.refuter",
        Suite::Subring,
        "no shipped factorization of F (s x^2 y + t x^2) into irreducibles of R[y] is valid",
        json!({ "corpus": "shipped" }),
        json!({ "probe": budget }),
        move |_| {
            let mut rows = Vec::new();
            let (mut valid, mut invalid, mut unknown) = (0usize, 0usize, 0usize);
            for c in shipped_candidates()? {
                let v = refute_quasi_atomic_candidate(&c.f, &c.factors, &budget)?;
                match v {
                    RefuteVerdict::Valid { .. } => valid += 1,
                    RefuteVerdict::Invalid { .. } => invalid += 1,
                    RefuteVerdict::UnknownAtBudget { .. } => unknown += 1,
                }
                rows.push(json!({ "label": c.label, "verdict": v }));
            }
            Ok(Outcome::pass_if(
                valid == 0,
                json!({ "valid": valid, "invalid": invalid, "unknown_at_budget": unknown, "candidates": rows }),
            ))
        },
    ));
    jobs
}
