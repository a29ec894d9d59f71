use super::*;
use crate::foliation::field_form_correspondence;
use crate::poly::Monomial;
use crate::toric::{volume_form, DegreeVector};
use crate::frac;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn x(n: usize, i: usize) -> QPoly {
    QPoly::var(n, i)
}

fn p2() -> Fan {
    Fan::weighted_projective(&[1, 1, 1]).unwrap()
}

fn h2() -> Fan {
    Fan::new(
        vec![vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .unwrap()
}

fn pencil() -> KForm {
    KForm::one_form(vec![-&x(3, 1), x(3, 0), QPoly::zero(3)])
}

fn random_form_of_degree(rng: &mut ChaCha8Rng, n: usize, d: u32) -> QPoly {
    let mut terms = Vec::new();
    for mask in 0..(d as usize + 1).pow(n as u32) {
        let mut e = Vec::with_capacity(n);
        let mut r = mask;
        for _ in 0..n {
            e.push((r % (d as usize + 1)) as u32);
            r /= d as usize + 1;
        }
        if e.iter().sum::<u32>() == d && rng.gen_bool(0.6) {
            terms.push((Monomial::new(&e), rat(rng.gen_range(-3..=3))));
        }
    }
    let p = QPoly::from_terms(n, terms);
    if p.is_zero() {
        x(n, 0).pow(d)
    } else {
        p
    }
}

fn random_lifting(rng: &mut ChaCha8Rng, n: usize, degrees: &[u32], fan: Fan) -> RationalMapLifting {
    RationalMapLifting::new(degrees.iter().map(|d| random_form_of_degree(rng, n, *d)).collect(), fan).unwrap()
}

/// A random descending 1-form `i_Y Ω_X` with `Y` of degree `d`.
fn random_descending(rng: &mut ChaCha8Rng, g: &GradingData, d: &DegreeVector) -> KForm {
    let m = g.nvars();
    let coeffs = (0..m)
        .map(|i| QPoly::from_terms(m, g.monomials_of_degree(&d.add(g.var_degree(i))).into_iter().map(|mo| (mo, rat(rng.gen_range(-2..=2))))))
        .collect();
    field_form_correspondence(&VectorField::new(coeffs), g).unwrap()
}

/// A pinned generic quadratic map ℙ³ ⇢ ℙ².
fn quadratic_map() -> RationalMapLifting {
    let n = 4;
    let q = |t: &[(i64, usize, usize)]| t.iter().fold(QPoly::zero(n), |acc, (c, i, j)| &acc + &(&x(n, *i) * &x(n, *j)).scale(&rat(*c)));
    RationalMapLifting::new(
        vec![
            q(&[(1, 0, 0), (2, 1, 2), (-1, 3, 3), (1, 0, 3)]),
            q(&[(1, 1, 1), (-3, 0, 2), (1, 2, 3), (2, 0, 1)]),
            q(&[(1, 2, 2), (1, 0, 1), (-2, 1, 3), (1, 3, 3)]),
        ],
        p2(),
    )
    .unwrap()
}

#[test]
fn identity_lifting() {
    let e = Engine::new(1 << 20);
    let f = RationalMapLifting::new((0..3).map(|i| x(3, i)).collect(), p2()).unwrap();
    let r = f.validate(&e).unwrap();
    assert!(r.complete && !r.assertion_violated);
    assert_eq!(f.pullback(&pencil()).unwrap(), pencil());
    let ideals = pullback_ideals(&e, &f, &pencil()).unwrap();
    assert!(e.ideal_equal(&ideals.j_omega, &singular_ideal(&pencil())).unwrap());
    assert!(ideals.k_equals_pulled_k);
}

#[test]
fn base_locus_in_codimension_one() {
    let e = Engine::new(1 << 20);
    let mut f = RationalMapLifting::new(vec![x(3, 0).pow(2), &x(3, 0) * &x(3, 1), &x(3, 0) * &x(3, 2)], p2()).unwrap();
    f.flags.complete = true;
    let r = f.validate(&e).unwrap();
    assert_eq!(r.base_locus_codim, 1);
    assert!(!r.complete && r.assertion_violated);
}

#[test]
fn relation_violation_is_named() {
    let e = Engine::new(1 << 20);
    let f = RationalMapLifting::new(vec![x(2, 0), x(2, 1), x(2, 0).pow(2)], p2()).unwrap();
    match f.validate(&e) {
        Err(Error::Degree(msg)) => assert!(msg.starts_with("Σ e_i v_i ≠ 0 in coordinate") && msg.contains("2·"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn hirzebruch_relation_holds() {
    let e = Engine::new(1 << 20);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = random_lifting(&mut rng, 3, &[1, 1, 1, 3], h2());
    f.validate(&e).unwrap();
}

#[test]
fn pullback_is_a_dga_morphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10 {
        let f = random_lifting(&mut rng, 3, &[2, 1, 2], p2());
        let a = KForm::one_form((0..3).map(|_| random_form_of_degree(&mut rng, 3, 1)).collect());
        let b = KForm::one_form((0..3).map(|_| random_form_of_degree(&mut rng, 3, 2)).collect());
        assert_eq!(f.pullback(&a.d()).unwrap(), f.pullback(&a).unwrap().d());
        assert_eq!(f.pullback(&a.wedge(&b)).unwrap(), f.pullback(&a).unwrap().wedge(&f.pullback(&b).unwrap()));
    }
}

#[test]
fn pencil_pullback_degree() {
    let f = quadratic_map();
    let omega = f.pullback(&pencil()).unwrap();
    let g = f.source_grading().unwrap();
    assert_eq!(omega.degree(&g).unwrap().unwrap().free, vec![4]);
    assert_eq!(f.expected_pullback_degree(&pencil()), Some(4));
    assert!(matches!(f.pullback(&KForm::dz(4, 0)), Err(Error::Context(_))));
}

#[test]
fn pulled_volume_form_is_logarithmic() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let f = random_lifting(&mut rng, 3, &[1, 1, 1, 3], h2());
    assert_eq!(pulled_volume_form(&f).unwrap(), f.pullback(&volume_form(f.target_grading())).unwrap());
    let f = quadratic_map();
    assert_eq!(pulled_volume_form(&f).unwrap(), f.pullback(&volume_form(f.target_grading())).unwrap());
}

#[test]
fn pullback_ideal_theorem_for_quadratic_pencil() {
    let e = Engine::new(1 << 22);
    let f = quadratic_map();
    let r = pullback_ideals(&e, &f, &pencil()).unwrap();
    assert!(r.k_equals_a_of_f);
    assert!(r.j_tilde_equals_k);
    assert!(r.j_inside_k);
    assert!(r.k_equals_pulled_k);
    assert!(r.witnesses_accepted.iter().all(|x| *x));
    assert!(r.solver_members.iter().all(|x| *x));
}

#[test]
fn deformation_split_trivial_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let f = random_lifting(&mut rng, 3, &[1, 1, 1], p2());
    let g = f.target_grading().clone();
    let d = DegreeVector::new(vec![1], vec![], &[]);
    let a = random_descending(&mut rng, &g, &d);
    let eta = random_descending(&mut rng, &g, &d);
    let zero_g = vec![QPoly::zero(3); 3];
    let s = deformation_split(&f, &zero_g, &a, &eta).unwrap();
    assert!(s.tau2.is_zero());
    assert_eq!(s.tau, f.pullback(&eta).unwrap());
    let gs: Vec<QPoly> = (0..3).map(|_| random_form_of_degree(&mut rng, 3, 1)).collect();
    let s = deformation_split(&f, &gs, &a, &KForm::zero(3, 1)).unwrap();
    assert!(s.tau1.is_zero());
    assert_eq!(s.tau, s.tau2);
    let bad = vec![x(3, 0).pow(2), QPoly::zero(3), QPoly::zero(3)];
    assert!(matches!(deformation_split(&f, &bad, &a, &eta), Err(Error::Degree(_))));
}

#[test]
fn deformation_split_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for (fan, degs, d) in [(p2(), vec![2, 2, 2], vec![1]), (h2(), vec![1, 1, 1, 3], vec![0, 0])] {
        for _ in 0..3 {
            let f = random_lifting(&mut rng, 3, &degs, fan.clone());
            let g = f.target_grading().clone();
            let dv = DegreeVector::new(d.clone(), vec![], &[]);
            let a = random_descending(&mut rng, &g, &dv);
            let eta = random_descending(&mut rng, &g, &dv);
            let gs: Vec<QPoly> = degs.iter().map(|e| random_form_of_degree(&mut rng, 3, *e)).collect();
            let s = deformation_split(&f, &gs, &a, &eta).unwrap();
            assert!(s.identity_holds);
            assert!(s.tau1_tangent);
        }
    }
}

#[test]
fn logarithmic_forms() {
    // ℙ(1,3,5): Σ λ_i ẑ_i dz_i needs Σ λ_i a_i = 0
    let f = vec![x(3, 0), x(3, 1).pow(3), x(3, 2).pow(5)];
    let mut lambda = BTreeMap::new();
    lambda.insert(vec![0], rat(2));
    lambda.insert(vec![1], rat(1));
    lambda.insert(vec![2], frac(-1, 1));
    let omega = logarithmic_builder(&lambda, &f, 1).unwrap();
    assert!(omega.wedge(&omega.d()).is_zero());
    lambda.insert(vec![2], rat(1));
    assert!(matches!(logarithmic_builder(&lambda, &f, 1), Err(Error::Coefficient(_))));
}

#[test]
fn logarithmic_volume_coefficients_on_two_forms() {
    let e = Engine::new(1 << 20);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let f = random_lifting(&mut rng, 4, &[1, 1, 1, 3], h2());
    f.validate(&e).unwrap();
    let b = volume_coefficients(f.target_grading()).unwrap();
    assert_eq!(logarithmic_builder(&b, f.components(), 2).unwrap(), f.pullback(&volume_form(f.target_grading())).unwrap());
    // not decomposable
    let mut bad = BTreeMap::new();
    bad.insert(vec![0, 1], rat(1));
    bad.insert(vec![2, 3], rat(1));
    assert!(logarithmic_builder(&bad, &(0..4).map(|i| x(4, i)).collect::<Vec<_>>(), 2).is_err());
}

#[test]
fn flag_on_hirzebruch_surface() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let f = random_lifting(&mut rng, 4, &[1, 1, 1, 3], h2());
    let flag = flag_builder(&f).unwrap();
    assert_eq!(flag.etas.len(), 2);
    assert_eq!(flag.basis[0], vec![1, 1, 1, 3]);
    assert!(flag.pullbacks_agree);
    assert_eq!(flag.etas[1], volume_form(f.target_grading()));
    let euler = VectorField::new((0..4).map(|i| x(4, i).scale(&rat(flag.basis[0][i]))).collect());
    for eta in &flag.etas {
        assert!(eta.contract(&euler).unwrap().is_zero());
    }
}

#[test]
fn flag_on_projective_plane_is_just_the_volume_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let f = random_lifting(&mut rng, 3, &[2, 2, 2], p2());
    let flag = flag_builder(&f).unwrap();
    assert_eq!(flag.basis, vec![vec![1, 1, 1]]);
    assert_eq!(flag.etas, vec![volume_form(f.target_grading())]);
    assert_eq!(flag.omegas[0], pulled_volume_form(&f).unwrap());
}

#[test]
fn dimension_formula() {
    assert_eq!(log_component_dimension(3, &[1, 1, 1, 1]).unwrap(), 14);
    assert_eq!(log_component_dimension(3, &[2, 1, 1, 1]).unwrap(), 20);
    assert_eq!(log_component_dimension(2, &[1; 6]).unwrap(), 18);
    assert!(log_component_dimension(3, &[1, 1, 1]).is_err());
}
