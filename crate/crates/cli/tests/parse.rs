use num_bigint::BigInt;
use proptest::prelude::*;
use torfol::poly::Monomial;
use torfol::{QPoly, Rational};
use torfol_cli::parse::{numbered, parse_polynomial};
use torfol_cli::print;

fn vars(n: usize) -> Vec<String> {
    numbered("x", n, 1)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn rational_coefficient_single_term() {
    let p = parse_polynomial("-(1/2)*x1^3*x2^2*x3", &vars(3)).unwrap();
    assert_eq!(p, QPoly::term(Monomial::new(&[3, 2, 1]), q(-1, 2)));
}

#[test]
fn zero_and_constants() {
    assert!(parse_polynomial("0", &vars(2)).unwrap().is_zero());
    assert!(parse_polynomial("x1 - x1", &vars(2)).unwrap().is_zero());
    assert_eq!(parse_polynomial("3/6", &vars(2)).unwrap(), QPoly::constant(2, q(1, 2)));
}

#[test]
fn juxtaposition_and_sign_runs() {
    let v = vars(4);
    let a = parse_polynomial("2x1 x2 +-3 x3^2 + +x4", &v).unwrap();
    let b = parse_polynomial("2*x1*x2 - 3*x3^2 + x4", &v).unwrap();
    assert_eq!(a, b);
    let c = parse_polynomial("(x1 + x2)(x1 - x2)", &v).unwrap();
    assert_eq!(c, parse_polynomial("x1^2 - x2^2", &v).unwrap());
    assert_eq!(parse_polynomial("−x1", &v).unwrap(), -&QPoly::var(4, 0));
}

#[test]
fn powers_bind_tighter_than_signs() {
    let v = vars(1);
    assert_eq!(parse_polynomial("-x1^2", &v).unwrap(), parse_polynomial("-(x1^2)", &v).unwrap());
    assert_eq!(parse_polynomial("(-x1)^2", &v).unwrap(), parse_polynomial("x1^2", &v).unwrap());
}

#[test]
fn error_positions() {
    let v = vars(2);
    let e = parse_polynomial("x1 + y", &v).unwrap_err();
    assert_eq!(e.position, 5);
    assert!(e.message.contains("unknown variable `y`"));

    let e = parse_polynomial("z2*", &vars(2)).unwrap_err();
    assert_eq!(e.position, 0);

    let e = parse_polynomial("x1*", &v).unwrap_err();
    assert_eq!(e.position, 3);
    assert!(e.message.contains("end of input"));

    let e = parse_polynomial("x1 )", &v).unwrap_err();
    assert_eq!(e.position, 3);
    assert!(e.message.contains("after a complete expression"));

    let e = parse_polynomial("(x1 + x2", &v).unwrap_err();
    assert!(e.message.contains("expected `)`"));

    let e = parse_polynomial("x1^x2", &v).unwrap_err();
    assert_eq!(e.position, 3);

    let e = parse_polynomial("1/0", &v).unwrap_err();
    assert!(e.message.contains("division by zero"));

    let e = parse_polynomial("x1 $ x2", &v).unwrap_err();
    assert_eq!(e.position, 3);

    let e = parse_polynomial("   ", &v).unwrap_err();
    assert_eq!(e.message, "empty expression");
}

fn arb_poly(n: usize) -> impl Strategy<Value = QPoly> {
    let term = (prop::collection::vec(0u32..4, n), -20i64..20, 1i64..7);
    prop::collection::vec(term, 0..6).prop_map(move |terms| {
        QPoly::from_terms(n, terms.into_iter().map(|(e, a, b)| (Monomial::new(&e), q(a, b))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn print_then_parse_round_trips(p in arb_poly(3)) {
        let v = vars(3);
        let text = print::polynomial(&p, &v);
        prop_assert_eq!(parse_polynomial(&text, &v).unwrap(), p);
    }
}
