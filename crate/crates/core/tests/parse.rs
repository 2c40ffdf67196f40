use atomlab::arith::Rational;
use atomlab::parse::{parse_expression, parse_polyexpr, DomainTag, Parsed};
use atomlab::semidomain::{CoeffDomain, PolyExpr};
use atomlab::Error;
use proptest::prelude::*;

fn exponent() -> impl Strategy<Value = Rational> {
    (0i64..40, 1i64..9).prop_map(|(n, d)| Rational::frac(n, d))
}

fn poly(dom: CoeffDomain) -> impl Strategy<Value = PolyExpr> {
    let coeff = match dom {
        CoeffDomain::Fp(p) => (0..p as i64, Just(1i64)).boxed(),
        CoeffDomain::Z => (-20i64..21, Just(1i64)).boxed(),
        CoeffDomain::Q => (-20i64..21, 1i64..10).boxed(),
    };
    prop::collection::vec((exponent(), coeff), 0..7).prop_map(move |ts| {
        PolyExpr::new(dom, ts.into_iter().map(|(e, (n, d))| (e, Rational::frac(n, d)))).unwrap()
    })
}

fn domains() -> impl Strategy<Value = CoeffDomain> {
    prop_oneof![
        Just(CoeffDomain::Fp(2)),
        Just(CoeffDomain::Fp(3)),
        Just(CoeffDomain::Fp(7)),
        Just(CoeffDomain::Z),
        Just(CoeffDomain::Q),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn polyexpr_round_trip(f in domains().prop_flat_map(poly)) {
        let dom = f.coeff_domain();
        let text = f.to_string();
        let g = parse_polyexpr(&text, dom).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(g.to_string(), text);
    }

    #[test]
    fn dispatch_matches_direct_parse(f in poly(CoeffDomain::Q)) {
        let text = f.to_string();
        prop_assert_eq!(parse_expression(&text, DomainTag::Poly(CoeffDomain::Q)).unwrap(), Parsed::Poly(f));
    }

    #[test]
    fn whitespace_is_ignored(f in poly(CoeffDomain::Z)) {
        let spaced = f.to_string().replace('+', " + ").replace('*', " * ");
        prop_assert_eq!(parse_polyexpr(&spaced, CoeffDomain::Z).unwrap(), f);
    }
}

fn parse_pos(text: &str, dom: CoeffDomain) -> Option<usize> {
    match parse_polyexpr(text, dom) {
        Err(Error::Parse { pos, .. }) => Some(pos),
        _ => None,
    }
}

#[test]
fn error_positions() {
    let f2 = CoeffDomain::Fp(2);
    assert_eq!(parse_pos("x^(1/0)", f2), Some(5));
    assert_eq!(parse_pos("x^2+x+", f2), Some(6));
    assert_eq!(parse_pos("x^2+*x", f2), Some(4));
    assert_eq!(parse_pos("x^(1/2", f2), Some(6));
    assert_eq!(parse_pos("3*y", f2), Some(2));
    assert_eq!(parse_pos("x+1/2", CoeffDomain::Z), Some(2));
    assert_eq!(parse_pos("", CoeffDomain::Q), Some(0));
}

#[test]
fn reference_values() {
    let f = parse_polyexpr("x^2+x+1", CoeffDomain::Fp(2)).unwrap();
    assert_eq!(f.support(), vec![Rational::frac(0, 1), Rational::frac(1, 1), Rational::frac(2, 1)]);
    let g = parse_polyexpr("x^(17/72)", CoeffDomain::Fp(2)).unwrap();
    assert!(g.is_monomial());
    assert_eq!(g.degree(), Some(&Rational::frac(17, 72)));
    assert_eq!(parse_polyexpr("x^(2/4)", CoeffDomain::Fp(2)).unwrap().to_string(), "x^(1/2)");
    assert_eq!(parse_polyexpr("x+x", CoeffDomain::Fp(2)).unwrap().to_string(), "0");
}
