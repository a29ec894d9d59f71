//! Properties of the Gröbner engine through the public API only.

use proptest::prelude::*;
use torfol::groebner::{Engine, MonomialOrder, DEFAULT_STEP_BUDGET};
use torfol::poly::{Monomial, Polynomial};
use torfol::{frac, QIdeal, QPoly, Zp};

type P = Polynomial<Zp<32003>>;

fn arb_zp_poly(n: usize) -> impl Strategy<Value = P> {
    prop::collection::vec((prop::collection::vec(0u32..3, n), -50i64..50), 1..5)
        .prop_map(move |t| P::from_terms(n, t.into_iter().map(|(e, c)| (Monomial::new(&e), Zp::new(c)))))
}

fn arb_q_poly(n: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, n), -9i64..9, 1i64..4), 1..4)
        .prop_map(move |t| QPoly::from_terms(n, t.into_iter().map(|(e, a, b)| (Monomial::new(&e), frac(a, b)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn bases_are_reduced_and_generate(gens in prop::collection::vec(arb_zp_poly(3), 1..4)) {
        let engine = Engine::new(DEFAULT_STEP_BUDGET);
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let g = engine.groebner_basis(&gens, order).unwrap();
            prop_assert!(engine.is_groebner(&g, order).unwrap());
            for b in &g {
                // monic with respect to `order`, not the storage order
                let (_, c) = b.terms().iter().max_by(|x, y| order.cmp(&x.0, &y.0)).unwrap();
                prop_assert_eq!(*c, Zp::new(1));
            }
            for f in &gens {
                prop_assert!(engine.normal_form(f, &g, order).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn products_lie_in_intersections(f in arb_q_poly(3), g in arb_q_poly(3)) {
        let engine = Engine::new(DEFAULT_STEP_BUDGET);
        let a = QIdeal::new(3, vec![f.clone()]);
        let b = QIdeal::new(3, vec![g.clone()]);
        let both = engine.intersect(&a, &b).unwrap();
        prop_assert!(engine.member(&(&f * &g), &both).unwrap());
        prop_assert!(engine.contains(&a, &both).unwrap());
        prop_assert!(engine.contains(&b, &both).unwrap());
    }

    #[test]
    fn quotient_undoes_multiplication(f in arb_q_poly(2), g in arb_q_poly(2)) {
        prop_assume!(!g.is_zero());
        let engine = Engine::new(DEFAULT_STEP_BUDGET);
        let fg = QIdeal::new(2, vec![&f * &g]);
        let q = engine.quotient_by(&fg, &g).unwrap();
        prop_assert!(engine.ideal_equal(&q, &QIdeal::new(2, vec![f])).unwrap());
    }
}

#[test]
fn saturation_strategies_agree() {
    let engine = Engine::new(DEFAULT_STEP_BUDGET);
    let x = |i| QPoly::var(3, i);
    // (x0^2 x1, x0 x2^3) saturated by (x0) is (x1, x2^3)
    let i = QIdeal::new(3, vec![&x(0).pow(2) * &x(1), &x(0) * &x(2).pow(3)]);
    let j = QIdeal::new(3, vec![x(0)]);
    let a = engine.saturate(&i, &j).unwrap();
    let b = engine.saturate_rabinowitsch(&i, &j).unwrap();
    assert!(engine.ideal_equal(&a, &b).unwrap());
    assert!(engine.ideal_equal(&a, &QIdeal::new(3, vec![x(1), x(2).pow(3)])).unwrap());
}

#[test]
fn dimensions_of_simple_varieties() {
    let engine = Engine::new(DEFAULT_STEP_BUDGET);
    let x = |i| QPoly::var(4, i);
    assert_eq!(engine.dimension(&QIdeal::new(4, vec![x(0), x(1)])).unwrap(), 2);
    assert_eq!(engine.codimension(&QIdeal::new(4, vec![&x(0) * &x(1)])).unwrap(), 1);
    assert!(engine.is_unit(&QIdeal::unit(4)).unwrap());
}

#[test]
fn tiny_budget_is_a_resource_error() {
    let engine = Engine::new(3);
    let x = |i| QPoly::var(3, i);
    let gens = vec![&x(0).pow(3) - &x(1), &x(1).pow(2) - &x(2), &(&x(0) * &x(2)) - &x(1)];
    assert!(matches!(engine.groebner_basis(&gens, MonomialOrder::GrevLex), Err(torfol::Error::Resource { .. })));
}

#[test]
fn lex_basis_of_a_curve_stays_cheap() {
    // once took millions of steps, when sugar was not raised during reduction
    let z = |i| P::var(3, i);
    let c = |v: i64| P::constant(3, Zp::new(v));
    let f = &(&(&(&c(-38) * &(&(&z(0).pow(2) * &z(1)) * &z(2).pow(2))) - &(&c(32) * &z(1))) + &(&c(23) * &z(2))) - &c(25);
    let g = &(&(&(&c(-3) * &(&(&z(0).pow(2) * &z(1)) * &z(2))) - &(&c(9) * &(&z(0) * &z(1).pow(2)))) + &(&c(12) * &(&z(0).pow(2) * &z(2)))) - &(&c(50) * &z(2));
    let engine = Engine::new(100_000);
    let basis = engine.groebner_basis(&[f, g], MonomialOrder::Lex).unwrap();
    // an independent computation gives five elements, the last free of z1
    assert_eq!(basis.len(), 5);
    assert!(basis.iter().any(|b| b.terms().iter().all(|(m, _)| m.exp(0) == 0)));
}
