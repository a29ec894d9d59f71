use super::*;
use crate::forms::KForm;
use crate::groebner::Engine;
use crate::poly::Monomial;
use crate::{rat, QPoly};

fn p2() -> Fan {
    Fan::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap()
}

fn h2() -> Fan {
    Fan::new(
        vec![vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .unwrap()
}

fn fake_135() -> Fan {
    Fan::from_generators(vec![vec![6, -10], vec![3, 0], vec![-3, 2]], vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap()
}

#[test]
fn projective_plane_class_group() {
    let g = class_group(&p2()).unwrap();
    assert_eq!(g.free_rank(), 1);
    assert!(g.torsion_orders().is_empty());
    for d in g.degrees() {
        assert_eq!(d.free, vec![1]);
    }
    assert_eq!(g.relation_basis(), &[vec![1, 1, 1]]);
}

#[test]
fn hirzebruch_class_group_and_relations() {
    let fan = h2();
    let g = class_group(&fan).unwrap();
    assert_eq!(g.free_rank(), 2);
    assert!(g.torsion_orders().is_empty());
    assert_eq!(g.relation_basis(), &[vec![1, 0, 1, 2], vec![0, 1, 0, 1]]);
    for r in g.relation_basis() {
        for c in 0..2 {
            assert_eq!(r.iter().zip(fan.rays()).map(|(a, v)| a * v[c]).sum::<i64>(), 0);
        }
    }
    assert_eq!(fan.non_consecutive_pairs(), vec![(0, 2), (1, 3)]);
    let pos = g.positive_relation();
    assert!(pos.iter().all(|c| *c > 0));
}

#[test]
fn fake_weighted_plane_degrees() {
    let g = class_group(&fake_135()).unwrap();
    assert_eq!(g.torsion_orders(), &[2, 3]);
    let want = [(1, 1, 0), (3, 0, 1), (5, 0, 0)];
    for (d, w) in g.degrees().iter().zip(want) {
        assert_eq!(d.components(), vec![w.0, w.1, w.2]);
    }
    assert_eq!(g.anticanonical().components(), vec![9, 1, 1]);
}

#[test]
fn weighted_plane_degree_of_product() {
    let fan = Fan::weighted_projective(&[1, 3, 5]).unwrap();
    let g = class_group(&fan).unwrap();
    assert_eq!(g.relation_basis(), &[vec![1, 3, 5]]);
    let p = QPoly::term(Monomial::new(&[1, 1, 1]), rat(1));
    assert_eq!(g.degree_of(&p).unwrap().free, vec![9]);
    assert!(g.degree_of(&QPoly::one(3)).unwrap().is_zero());
    let bad = &QPoly::var(3, 0) + &QPoly::var(3, 1);
    assert!(matches!(g.degree_of(&bad), Err(crate::Error::Homogeneity { .. })));
}

#[test]
fn monomials_of_degree_match_brute_force() {
    let fan = h2();
    let g = class_group(&fan).unwrap();
    let d = g.degree(vec![4, 2], vec![]).unwrap();
    let got = g.monomials_of_degree(&d);
    let mut brute = Vec::new();
    for a in 0..10u32 {
        for b in 0..10 {
            for c in 0..10 {
                for e in 0..10 {
                    let m = Monomial::new(&[a, b, c, e]);
                    if g.monomial_degree(&m) == d {
                        brute.push(m);
                    }
                }
            }
        }
    }
    brute.sort_by(|a, b| b.cmp(a));
    assert_eq!(got, brute);
    assert!(!got.is_empty());
}

#[test]
fn irrelevant_ideals() {
    let i = p2().irrelevant_ideal();
    let gens: Vec<String> = i.generators().iter().map(|p| p.to_string()).collect();
    assert_eq!(gens, vec!["z3", "z1", "z2"]);
    let i = h2().irrelevant_ideal();
    let gens: Vec<String> = i.generators().iter().map(|p| p.to_string()).collect();
    assert_eq!(gens, vec!["z3*z4", "z1*z4", "z1*z2", "z2*z3"]);
    assert!(p2().non_consecutive_pairs().is_empty());
}

#[test]
fn radial_fields_and_volume_forms() {
    let fan = Fan::weighted_projective(&[1, 3, 5]).unwrap();
    let g = class_group(&fan).unwrap();
    let r = radial_fields(&g);
    assert_eq!(r.len(), 1);
    let omega = volume_form(&g);
    // a0 z0 dz1∧dz2 − a1 z1 dz0∧dz2 + a2 z2 dz0∧dz1
    let z = |i| QPoly::var(3, i);
    let expect = KForm::from_terms(3, 2, vec![(vec![1, 2], z(0)), (vec![0, 2], z(1).scale(&rat(-3))), (vec![0, 1], z(2).scale(&rat(5)))]).unwrap();
    assert_eq!(omega, expect);
    assert!(omega.contract(&r[0]).unwrap().is_zero());

    for fan in [p2(), h2(), fan.clone()] {
        let g = class_group(&fan).unwrap();
        let omega = volume_form(&g);
        for r in radial_fields(&g) {
            assert!(omega.contract(&r).unwrap().is_zero());
        }
        let b = volume_coefficients(&g).unwrap();
        assert!(plucker_holds(&b, g.nvars(), g.dim()));
    }
}

#[test]
fn projective_line() {
    let fan = Fan::new(vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap();
    let g = class_group(&fan).unwrap();
    let omega = volume_form(&g);
    let expect = KForm::one_form(vec![-QPoly::var(2, 1), QPoly::var(2, 0)]);
    assert!(omega == expect || omega == -&expect);
}

#[test]
fn plucker_detects_indecomposable() {
    // e1∧e2 + e3∧e4 is not decomposable
    let mut b = std::collections::BTreeMap::new();
    b.insert(vec![0, 1], rat(1));
    b.insert(vec![2, 3], rat(1));
    assert!(!plucker_holds(&b, 4, 2));
}

#[test]
fn admissibility() {
    assert!(admissible(0, &[1, 3, 5]).unwrap());
    assert!(!admissible(1, &[1, 3, 5]).unwrap());
    for l in -5..5 {
        assert!(admissible(l, &[1, 1, 1]).unwrap());
    }
    assert!(admissible(0, &[2, 4, 1]).is_err());
}

#[test]
fn detorsion_of_fake_plane() {
    let fake = fake_135();
    let cover = detorsion(&fake).unwrap();
    let g = class_group(&cover).unwrap();
    assert!(g.torsion_orders().is_empty());
    assert_eq!(g.relation_basis(), class_group(&fake).unwrap().relation_basis());
    assert_eq!(g.relation_basis(), &[vec![1, 3, 5]]);
    let plain = detorsion(&h2()).unwrap();
    assert_eq!(class_group(&plain).unwrap().relation_basis(), class_group(&h2()).unwrap().relation_basis());
}

#[test]
fn random_torsion_round_trip() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let base = Fan::weighted_projective(&[1, 2, 3]).unwrap();
    let cones = base.max_cones().to_vec();
    let mut built = 0;
    while built < 10 {
        // V = L⁻¹·D·R⁻¹ with L⁻¹ the Smith data of a ℙ(1,2,3)-type matrix
        let s = smith_normal_form(&base.ray_matrix());
        let d1 = rng.gen_range(1..4);
        let d2 = d1 * rng.gen_range(1..4);
        let Ok(fan) = Fan::from_smith_data(&s.l_inv, &[d1, d2], &s.r_inv, cones.clone()) else { continue };
        let g = class_group(&fan).unwrap();
        let order: i64 = g.torsion_orders().iter().product();
        assert_eq!(order, d1 * d2);
        let cover = detorsion(&fan).unwrap();
        assert!(class_group(&cover).unwrap().torsion_orders().is_empty());
        built += 1;
    }
}

#[test]
fn completeness_step_examples() {
    let z = |i| QPoly::var(3, i);
    let f = vec![&z(0) * &z(0), &z(0) * &z(1), &z(0) * &z(2)];
    let out = completeness_step(&f, &z(0), &p2()).unwrap();
    assert_eq!(out, vec![z(0), z(1), z(2)]);
    let id = vec![z(0), z(1), z(2)];
    assert_eq!(completeness_step(&id, &(&z(0) + &z(1)), &p2()).unwrap(), id);

    let p112 = Fan::new(vec![vec![-1, -2], vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
    let f = vec![&z(0) * &z(0), &z(0) * &z(1), &(&z(0) * &z(2)) * &(&z(2) * &z(2))];
    match completeness_step(&f, &z(0), &p112) {
        Err(crate::Error::Obstruction { cone, .. }) => assert_eq!(cone, vec![0, 1]),
        other => panic!("expected an obstruction, got {other:?}"),
    }
}

#[test]
fn fan_validation_errors() {
    assert!(Fan::new(vec![vec![2, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 0]]).is_err());
    // missing a cone: not complete
    assert!(Fan::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2]]).is_err());
    // not spanning
    assert!(Fan::new(vec![vec![1, 0], vec![-1, 0]], vec![vec![0], vec![1]]).is_err());
    let e = Engine::default();
    let z = e.dimension(&h2().irrelevant_ideal()).unwrap();
    assert_eq!(z, 2);
}
