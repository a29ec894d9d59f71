use super::*;
use crate::poly::Monomial;
use crate::toric::class_group;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn z(n: usize, i: usize) -> QPoly {
    QPoly::var(n, i)
}

fn projective(n: usize) -> (Fan, GradingData) {
    let fan = Fan::weighted_projective(&vec![1; n + 1]).unwrap();
    let g = class_group(&fan).unwrap();
    (fan, g)
}

fn h2() -> (Fan, GradingData) {
    let fan = Fan::new(
        vec![vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .unwrap();
    let g = class_group(&fan).unwrap();
    (fan, g)
}

fn one_form(coeffs: Vec<QPoly>) -> KForm {
    KForm::one_form(coeffs)
}

/// `z0·dz1 − z1·dz0`, the pencil of lines through a point.
fn pencil(n: usize) -> KForm {
    let m = n + 1;
    let mut c = vec![QPoly::zero(m); m];
    c[0] = -&z(m, 1);
    c[1] = z(m, 0);
    one_form(c)
}

/// `Σ λ_i ẑ_i dz_i` on ℙ², with `Σ λ_i = 0`.
fn logarithmic(l: [i64; 3]) -> KForm {
    let c = (0..3).map(|i| &z(3, (i + 1) % 3) * &z(3, (i + 2) % 3)).zip(l).map(|(p, x)| p.scale(&rat(x))).collect();
    one_form(c)
}

fn random_homogeneous(rng: &mut ChaCha8Rng, g: &GradingData, d: &DegreeVector) -> QPoly {
    QPoly::from_terms(g.nvars(), g.monomials_of_degree(d).into_iter().map(|m| (m, rat(rng.gen_range(-3..=3)))))
}

fn deg(d: i64) -> DegreeVector {
    DegreeVector::new(vec![d], vec![], &[])
}

#[test]
fn pencil_passes_every_check() {
    let (_, g) = projective(2);
    let e = Engine::new(1 << 20);
    let f = check_foliation(&e, &pencil(2), &g).unwrap();
    assert!(f.checks.all_pass(), "{:?}", f.checks);
    assert_eq!(f.degree, Some(deg(2)));
    assert_eq!(f.checks.singular_codim, 2);
}

#[test]
fn failures_are_recorded() {
    let e = Engine::new(1 << 20);
    let (_, g3) = projective(3);
    // contact form: descends, not integrable
    let mut c = vec![QPoly::zero(4); 4];
    c[0] = -&z(4, 1);
    c[1] = z(4, 0);
    c[2] = -&z(4, 3);
    c[3] = z(4, 2);
    let r = check_foliation(&e, &one_form(c), &g3).unwrap().checks;
    assert!(r.descent && !r.integrable);
    let (_, g2) = projective(2);
    let r = check_foliation(&e, &KForm::dz(3, 0), &g2).unwrap().checks;
    assert!(!r.descent);
    // a common factor puts the singular set in codimension one
    let r = check_foliation(&e, &pencil(2).mul_poly(&z(3, 2)), &g2).unwrap().checks;
    assert_eq!(r.singular_codim, 1);
    assert!(!r.codim_ok());
    let bad = one_form(vec![z(3, 1), QPoly::one(3), QPoly::zero(3)]);
    assert!(matches!(check_foliation(&e, &bad, &g2), Err(Error::Homogeneity { .. })));
}

#[test]
fn volume_form_as_a_two_form_foliation() {
    let (_, g) = h2();
    let e = Engine::new(1 << 20);
    let r = check_foliation(&e, &volume_form(&g), &g).unwrap().checks;
    assert!(r.descent && r.decomposable);
}

#[test]
fn kupka_of_pencil_and_closed_forms() {
    let e = Engine::new(1 << 20);
    let a = pencil(2);
    let j = singular_ideal(&a);
    let k = kupka_ideal(&e, &a).unwrap();
    assert!(e.ideal_equal(&j, &k).unwrap());
    assert!(e.ideal_equal(&j, &kupka_set_presentation(&e, &a).unwrap()).unwrap());
    // a closed form
    let closed = KForm::function(&z(3, 0) * &z(3, 1)).d();
    assert!(e.is_unit(&kupka_ideal(&e, &closed).unwrap()).unwrap());
}

#[test]
fn gamma_sets_are_empty_on_three_rays() {
    let (fan, _) = projective(2);
    let e = Engine::new(1 << 20);
    assert_eq!(gamma_sets(&e, &pencil(2), &fan).unwrap(), GammaSets::default());
}

#[test]
fn gamma_sets_on_hirzebruch_product_form() {
    // z1 z3 (z2 z4)-pencil: vanishes along both pairs of opposite divisors
    let (fan, g) = h2();
    let e = Engine::new(1 << 20);
    let m = 4;
    let mut c = vec![QPoly::zero(m); m];
    // α = z2 z4 (z3 dz1 − z1 dz3) descends on H₂ (degree (2,2))
    c[0] = &(&z(m, 1) * &z(m, 3)) * &z(m, 2);
    c[2] = -&(&(&z(m, 1) * &z(m, 3)) * &z(m, 0));
    let a = one_form(c);
    let chk = check_foliation(&e, &a, &g).unwrap().checks;
    assert!(chk.descent, "{chk:?}");
    let gs = gamma_sets(&e, &a, &fan).unwrap();
    assert_eq!(gs.gamma, vec![(0, 2), (1, 3)]);
}

#[test]
fn singular_ideal_is_inside_unfoldings_ideal() {
    let (_, g) = projective(2);
    let a = logarithmic([1, 2, -3]);
    for h in singular_ideal(&a).generators() {
        let w = unfoldings_ideal_membership(&a, &g, h).unwrap().expect("J ⊆ I");
        assert!(verify_unfolding_witness(&a, h, &w));
    }
    assert!(unfoldings_ideal_membership(&a, &g, &QPoly::one(3)).unwrap().is_none());
}

#[test]
fn unfoldings_ideal_sits_inside_kupka_ideal() {
    let (_, g) = projective(2);
    let e = Engine::new(1 << 20);
    let a = logarithmic([1, 2, -3]);
    let k = kupka_ideal(&e, &a).unwrap();
    for r in 1..=3 {
        for u in unfoldings_space(&a, &g, &deg(r)).unwrap() {
            assert!(e.member(&u.h, &k).unwrap());
        }
    }
}

#[test]
fn trivial_unfolding_is_the_zero_class() {
    let (_, g) = projective(2);
    let a = pencil(2);
    let t = UnfoldingPair { h: QPoly::zero(3), eta: a.clone(), r: deg(2) };
    assert!(is_unfolding(&a, &g, &t).unwrap());
    // the space mod (0, α) does not contain it: adding it keeps the rank
    let basis = unfoldings_space(&a, &g, &deg(2)).unwrap();
    assert!(basis.iter().all(|u| u.eta != a || !u.h.is_zero()));
    let f = z(3, 2);
    let moved = module_action(&f, &t, &g).unwrap();
    assert!(moved.h.is_zero());
    assert_eq!(moved.eta, a.mul_poly(&f).scale(&frac(3, 2)));
}

#[test]
fn module_action_closure_and_associativity() {
    let (_, g) = projective(2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = logarithmic([2, -1, -1]);
    for r in 1..=3 {
        let basis = unfoldings_space(&a, &g, &deg(r)).unwrap();
        assert!(!basis.is_empty());
        for _ in 0..4 {
            let mut u = UnfoldingPair { h: QPoly::zero(3), eta: KForm::zero(3, 1), r: deg(r) };
            for b in &basis {
                let c = rat(rng.gen_range(-2..=2));
                u.h = &u.h + &b.h.scale(&c);
                u.eta = &u.eta + &b.eta.scale(&c);
            }
            assert!(is_unfolding(&a, &g, &u).unwrap());
            let f = random_homogeneous(&mut rng, &g, &deg(1));
            let h = random_homogeneous(&mut rng, &g, &deg(2));
            let fu = module_action(&f, &u, &g).unwrap();
            assert!(is_unfolding(&a, &g, &fu).unwrap());
            let left = module_action(&(&h * &f), &u, &g).unwrap();
            let right = module_action(&h, &fu, &g).unwrap();
            assert_eq!(left, right);
        }
    }
}

#[test]
fn module_action_rejects_degree_zero() {
    let (_, g) = projective(2);
    let u = UnfoldingPair { h: QPoly::one(3), eta: KForm::zero(3, 1), r: deg(0) };
    assert!(matches!(module_action(&z(3, 0), &u, &g), Err(Error::DegenerateDegree(_))));
}

#[test]
fn unfoldings_project_to_deformations() {
    let (_, g) = projective(3);
    // a rational pencil F1 dF2 − F2 dF1 with F1, F2 quadrics
    let q1 = &(&z(4, 0) * &z(4, 1)) + &(&z(4, 2) * &z(4, 3));
    let q2 = &(&z(4, 0) * &z(4, 0)) - &(&z(4, 1) * &z(4, 2));
    let df = |p: &QPoly| KForm::function(p.clone()).d();
    let a = &df(&q2).mul_poly(&q1) - &df(&q1).mul_poly(&q2);
    let l = a.degree(&g).unwrap().unwrap();
    assert_eq!(l, deg(4));
    let basis = unfoldings_space(&a, &g, &l).unwrap();
    assert!(!basis.is_empty());
    for u in &basis {
        assert!(is_deformation(&a, &u.eta));
    }
    // away from degree ℓ the defect is (1 − r/ℓ) dh∧dα
    for u in unfoldings_space(&a, &g, &deg(2)).unwrap() {
        let dh = KForm::function(u.h.clone()).d();
        assert_eq!(deformation_defect(&a, &u.eta), dh.wedge(&a.d()).scale(&frac(1, 2)));
    }
}

/// Dense brute force: every coefficient of `η` of degree `d` is an unknown,
/// the deformation equation and descent are expanded to a dense matrix.
fn brute_force_deformation_dim(a: &KForm, g: &GradingData) -> usize {
    let d = a.degree(g).unwrap().unwrap();
    let m = g.nvars();
    let mut unknowns = Vec::new();
    for i in 0..m {
        for mono in g.monomials_of_degree(&d.sub(g.var_degree(i))) {
            let mut c = vec![QPoly::zero(m); m];
            c[i] = QPoly::term(mono, rat(1));
            unknowns.push(KForm::one_form(c));
        }
    }
    let radial = radial_fields(g);
    let mut probe_keys: Vec<(usize, Vec<usize>, Monomial)> = Vec::new();
    let mut images = Vec::new();
    for e in &unknowns {
        let mut parts = vec![deformation_defect(a, e)];
        parts.extend(radial.iter().map(|r| e.contract(r).unwrap()));
        for (b, p) in parts.iter().enumerate() {
            for (idx, c) in p.terms() {
                for (mono, _) in c.terms() {
                    if !probe_keys.contains(&(b, idx.clone(), mono.clone())) {
                        probe_keys.push((b, idx.clone(), mono.clone()));
                    }
                }
            }
        }
        images.push(parts);
    }
    let matrix: Vec<Vec<Rational>> = images
        .iter()
        .map(|parts| probe_keys.iter().map(|(b, idx, mono)| parts[*b].coefficient(idx).coefficient(mono)).collect())
        .collect();
    let rank = linalg::rank_of(&matrix);
    unknowns.len() - rank - 1
}

#[test]
fn deformations_of_a_generic_plane_foliation() {
    let (_, g) = projective(2);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // degree-2 foliation: i_R i_Y vol with Y of degree 1 (coefficients quadratic)
    let y = VectorField::new((0..3).map(|_| random_homogeneous(&mut rng, &g, &deg(2))).collect());
    let a = field_form_correspondence(&y, &g).unwrap();
    assert_eq!(a.degree(&g).unwrap(), Some(deg(4)));
    let space = deformation_space(&a, &g).unwrap();
    // every 1-form on ℙ² is integrable: D(α) = H⁰(Ω¹(4))/ℚα
    assert_eq!(space.len(), 14);
    assert_eq!(space.len(), brute_force_deformation_dim(&a, &g));
    assert!(space.iter().all(|eta| is_deformation(&a, eta)));
    let scaled = deformation_space(&a.scale(&rat(-7)), &g).unwrap();
    assert_eq!(scaled.len(), space.len());
}

#[test]
fn deformations_in_three_space_are_constrained() {
    let (_, g) = projective(3);
    let a = pencil(3);
    let space = deformation_space(&a, &g).unwrap();
    assert_eq!(space.len(), brute_force_deformation_dim(&a, &g));
    // pencils of hyperplanes: the linear forms in z0, z1 are deformed within
    // the 4 × 2 matrices modulo scaling, Gr(2,4) has dimension 4
    assert_eq!(space.len(), 4);
    assert!(deformation_space(&a, &g).unwrap().iter().all(|e| *e != a));
}

#[test]
fn unfolding_dimensions_are_scale_invariant() {
    let (_, g) = projective(2);
    let a = logarithmic([1, 1, -2]);
    for r in 1..=3 {
        assert_eq!(
            unfoldings_space(&a, &g, &deg(r)).unwrap().len(),
            unfoldings_space(&a.scale(&frac(-3, 5)), &g, &deg(r)).unwrap().len()
        );
    }
}

#[test]
fn toric_unfoldings_need_the_form_degree() {
    let (_, g) = h2();
    let a = volume_form(&g).contract(&VectorField::coordinate(4, 0)).unwrap();
    let d = a.degree(&g).unwrap().unwrap();
    let other = d.add(g.var_degree(0));
    assert!(matches!(unfoldings_space(&a, &g, &other), Err(Error::Degree(_))));
    for u in unfoldings_space(&a, &g, &d).unwrap() {
        assert!(is_unfolding(&a, &g, &u).unwrap());
        assert!(is_deformation(&a, &u.eta));
    }
}

#[test]
fn euler_field_gives_the_zero_form() {
    let (_, g) = projective(2);
    let r = &radial_fields(&g)[0];
    assert!(field_form_correspondence(r, &g).unwrap().is_zero());
}

#[test]
fn weighted_plane_field_round_trip() {
    let fan = Fan::weighted_projective(&[1, 3, 5]).unwrap();
    let g = class_group(&fan).unwrap();
    let (a0, b0, b1, c0, c1, c2) = (rat(2), rat(-1), rat(3), rat(1), rat(-2), rat(5));
    let m = 3;
    let y = VectorField::new(vec![
        z(m, 0).scale(&a0),
        &z(m, 1).scale(&b0) + &z(m, 0).pow(3).scale(&b1),
        &(&z(m, 2).scale(&c0) + &z(m, 0).pow(5).scale(&c1)) + &(&z(m, 0).pow(2) * &z(m, 1)).scale(&c2),
    ]);
    let a = field_form_correspondence(&y, &g).unwrap();
    assert_eq!(a.degree(&g).unwrap(), Some(deg(9)));
    let rep = solve_field(&a, &g).unwrap();
    assert_eq!(field_form_correspondence(&rep.field, &g).unwrap(), a);
    // the difference is a multiple of the Euler field, which spans the kernel
    assert_eq!(rep.kernel_dim, 1);
    let diff = y.sub(&rep.field);
    let r = &radial_fields(&g)[0];
    let ratio = diff.coefficients()[0].div_exact(&z(m, 0)).and_then(|p| p.as_constant()).unwrap();
    assert_eq!(r.scale(&ratio), diff);
    // diagonal fields reduce to Σ λ_i ẑ_i dz_i with Σ λ_i a_i = 0
    let diag = VectorField::new(vec![z(m, 0).scale(&a0), z(m, 1).scale(&b0), z(m, 2).scale(&c0)]);
    let log = field_form_correspondence(&diag, &g).unwrap();
    let mut weighted = rat(0);
    for (i, w) in [1, 3, 5].into_iter().enumerate() {
        let hat: Vec<u32> = (0..3).map(|j| u32::from(j != i)).collect();
        let lambda = log.coefficient(&[i]).coefficient(&Monomial::new(&hat));
        assert_eq!(log.coefficient(&[i]), QPoly::term(Monomial::new(&hat), lambda.clone()));
        weighted += lambda * rat(w);
    }
    assert_eq!(weighted, rat(0));
}

#[test]
fn unsolvable_field_representation() {
    let (_, g) = projective(2);
    // dz0 wedge-descends nowhere: no field gives it
    let err = solve_field(&KForm::one_form(vec![z(3, 1), -&z(3, 0), QPoly::zero(3)]).mul_poly(&z(3, 2)), &g);
    assert!(err.is_ok());
    let bad = KForm::dz(3, 0).mul_poly(&z(3, 1));
    assert!(matches!(solve_field(&bad, &g), Err(Error::Representation(_))));
}

#[test]
fn division_point_test() {
    let e = Engine::new(1 << 20);
    let prime = crate::groebner::monomial_prime(3, &[0, 1]);
    assert!(!not_division_point(&e, &[z(3, 0), z(3, 1)], &prime).unwrap());
    assert!(not_division_point(&e, &[z(3, 0), z(3, 2)], &prime).unwrap());
}
