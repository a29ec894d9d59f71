//! Foliations given by twisted forms in homogeneous coordinates: validity
//! checks, singular and Kupka ideals, Γ-sets, unfoldings, first-order
//! deformations and the vector-field description on surfaces.
//!
//! The unfolding, deformation and membership problems are bilinear in the
//! data but *linear* in the unknowns, and homogeneity forces the degree of
//! every unknown. They are therefore solved as finite exact linear systems
//! over ℚ (see [`LinearSystem`]) rather than with module Gröbner bases.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::forms::KForm;
use crate::groebner::{in_monomial_prime, Engine};
use crate::linalg::{self, SparseRow};
use crate::poly::Monomial;
use crate::toric::{radial_fields, volume_form, DegreeVector, Fan, GradingData, VectorField};
use crate::{frac, rat, QIdeal, QPoly, Rational};

/// Outcome of each condition in the definition of a foliation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub degree: Option<DegreeVector>,
    /// `i_{R_j} α = 0` for every radial field.
    pub descent: bool,
    /// `i_V α ∧ α = 0` over coordinate frames (automatic for 1-forms).
    pub decomposable: bool,
    /// `α ∧ dα = 0` for 1-forms, `i_V α ∧ dα = 0` over frames otherwise.
    pub integrable: bool,
    /// Codimension of the coefficient ideal in the Cox ring.
    pub singular_codim: i64,
}

impl CheckRecord {
    pub fn codim_ok(&self) -> bool {
        self.singular_codim >= 2
    }

    pub fn all_pass(&self) -> bool {
        self.descent && self.decomposable && self.integrable && self.codim_ok()
    }
}

/// A form together with the checks it was subjected to.
#[derive(Clone, Debug)]
pub struct FoliationForm {
    pub form: KForm,
    pub grading: GradingData,
    pub degree: Option<DegreeVector>,
    pub checks: CheckRecord,
}

fn frames(m: usize, size: usize) -> Vec<Vec<usize>> {
    (0u64..1 << m).filter(|s| s.count_ones() as usize == size).map(crate::forms::indices_of).collect()
}

/// Run every check of the definition. Only an inhomogeneous form is an
/// error; failed conditions are recorded.
pub fn check_foliation(engine: &Engine, a: &KForm, g: &GradingData) -> Result<FoliationForm> {
    if a.is_zero() {
        return Err(Error::Argument("the zero form defines no foliation".into()));
    }
    let degree = a.degree(g)?;
    let m = a.nvars();
    let descent = a.k() == 0 || radial_fields(g).iter().all(|r| a.contract(r).map(|f| f.is_zero()).unwrap_or(false));
    let da = a.d();
    let (decomposable, integrable) = if a.k() == 1 {
        (true, a.wedge(&da).is_zero())
    } else if a.k() == 0 {
        (true, true)
    } else {
        let mut dec = true;
        let mut int = true;
        for frame in frames(m, a.k() - 1) {
            let mut b = a.clone();
            for &j in &frame {
                b = b.contract(&VectorField::coordinate(m, j))?;
            }
            dec &= b.wedge(a).is_zero();
            int &= b.wedge(&da).is_zero();
        }
        (dec, int)
    };
    let singular_codim = engine.codimension(&a.coefficient_ideal())?;
    Ok(FoliationForm {
        form: a.clone(),
        grading: g.clone(),
        degree: degree.clone(),
        checks: CheckRecord { degree, descent, decomposable, integrable, singular_codim },
    })
}

/// `J(α) = 𝒞(α)`.
pub fn singular_ideal(a: &KForm) -> QIdeal {
    a.coefficient_ideal()
}

/// `K(α) = (J(α) : 𝒞(dα))`. A closed form has `𝒞(dα) = 0`, whose
/// annihilator reading gives the unit ideal; this is logged as a warning.
pub fn kupka_ideal(engine: &Engine, a: &KForm) -> Result<QIdeal> {
    let da = a.d();
    if da.is_zero() {
        log::warn!("dα = 0: the Kupka ideal is taken to be ⟨1⟩");
        return Ok(QIdeal::unit(a.nvars()));
    }
    engine.quotient(&singular_ideal(a), &da.coefficient_ideal())
}

/// `(J(α) : 𝒞(dα)^∞)`, the presentation of the Kupka set before taking
/// radicals. Containment in a prime is insensitive to the radical.
pub fn kupka_set_presentation(engine: &Engine, a: &KForm) -> Result<QIdeal> {
    let da = a.d();
    if da.is_zero() {
        log::warn!("dα = 0: the Kupka set ideal is taken to be ⟨1⟩");
        return Ok(QIdeal::unit(a.nvars()));
    }
    engine.saturate(&singular_ideal(a), &da.coefficient_ideal())
}

/// `Γ_α ⊇ Γ_{α,K} ⊇ Γ^{set}_{α,K}`, as 0-based pairs of rays.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaSets {
    pub gamma: Vec<(usize, usize)>,
    pub gamma_kupka: Vec<(usize, usize)>,
    pub gamma_kupka_set: Vec<(usize, usize)>,
}

/// Γ-sets from already computed ideals.
pub fn gamma_sets_from(fan: &Fan, j: &QIdeal, k: &QIdeal, sat: &QIdeal) -> GammaSets {
    let pairs = fan.non_consecutive_pairs();
    let inside = |i: &QIdeal, (a, b): (usize, usize)| in_monomial_prime(i, &[a, b]);
    let gamma: Vec<_> = pairs.into_iter().filter(|p| inside(j, *p)).collect();
    let gamma_kupka: Vec<_> = gamma.iter().copied().filter(|p| inside(k, *p)).collect();
    let gamma_kupka_set = gamma_kupka.iter().copied().filter(|p| inside(sat, *p)).collect();
    GammaSets { gamma, gamma_kupka, gamma_kupka_set }
}

/// The three Γ-sets of a 1-form on a surface. Empty when the surface has
/// three rays. The Kupka ideals are only computed when `Γ_α` is nonempty.
pub fn gamma_sets(engine: &Engine, a: &KForm, fan: &Fan) -> Result<GammaSets> {
    if fan.non_consecutive_pairs().is_empty() {
        return Ok(GammaSets::default());
    }
    let j = singular_ideal(a);
    let probe = gamma_sets_from(fan, &j, &j, &j);
    if probe.gamma.is_empty() {
        return Ok(probe);
    }
    let k = kupka_ideal(engine, a)?;
    let sat = kupka_set_presentation(engine, a)?;
    Ok(gamma_sets_from(fan, &j, &k, &sat))
}

/// Sufficient test for `𝔭` not being a division point: some generator of
/// `I(α)` lies outside `𝔭`, so `1 ∈ I(α)_𝔭`.
pub fn not_division_point(engine: &Engine, unfolding_generators: &[QPoly], prime: &QIdeal) -> Result<bool> {
    for h in unfolding_generators {
        if !engine.member(h, prime)? {
            return Ok(true);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Degree-forced linear systems

/// Unknown coefficients of polynomials and forms with prescribed degrees.
///
/// Each unknown is a (slot, monomial) pair; the caller computes the image of
/// every unknown under the linear map of interest and the system is
/// assembled column by column, keyed by (differential index set, monomial).
pub(crate) struct LinearSystem {
    keys: HashMap<(usize, u64, Monomial), usize>,
    columns: Vec<Vec<(usize, Rational)>>,
}

impl LinearSystem {
    pub fn new() -> Self {
        LinearSystem { keys: HashMap::new(), columns: Vec::new() }
    }

    fn key(&mut self, block: usize, mask: u64, m: &Monomial) -> usize {
        let n = self.keys.len();
        *self.keys.entry((block, mask, m.clone())).or_insert(n)
    }

    fn entries(&mut self, blocks: &[KForm]) -> Vec<(usize, Rational)> {
        let mut col = Vec::new();
        for (b, image) in blocks.iter().enumerate() {
            for (mask, p) in image.masked_terms() {
                for (m, c) in p.terms() {
                    col.push((self.key(b, mask, m), c.clone()));
                }
            }
        }
        col.sort_by_key(|e| e.0);
        col
    }

    pub fn push_column(&mut self, image: &KForm) {
        self.push_blocks(std::slice::from_ref(image));
    }

    /// A column whose image is a tuple of forms, one equation block each.
    pub fn push_blocks(&mut self, blocks: &[KForm]) {
        let c = self.entries(blocks);
        self.columns.push(c);
    }

    /// `(rows, rhs)` for `Σ x_t·column_t = target`.
    fn rows(&mut self, target: Option<&KForm>) -> (Vec<SparseRow<Rational>>, Vec<Rational>) {
        let b = target.map(|t| self.entries(std::slice::from_ref(t))).unwrap_or_default();
        let mut rows: Vec<SparseRow<Rational>> = vec![Vec::new(); self.keys.len()];
        for (t, col) in self.columns.iter().enumerate() {
            for (r, c) in col {
                rows[*r].push((t, c.clone()));
            }
        }
        let mut rhs = vec![rat(0); self.keys.len()];
        for (r, c) in b {
            rhs[r] = c;
        }
        (rows, rhs)
    }

    pub fn kernel(&mut self) -> Vec<Vec<Rational>> {
        let (rows, _) = self.rows(None);
        linalg::rref(self.columns.len(), rows).kernel()
    }

    pub fn solve(&mut self, target: &KForm) -> Option<Vec<Rational>> {
        let (rows, rhs) = self.rows(Some(target));
        linalg::solve(self.columns.len(), &rows, &rhs)
    }
}

/// A homogeneous unknown: the monomials of a polynomial of degree `d`, or
/// of each coefficient of a `k`-form of degree `d`.
#[derive(Clone)]
pub(crate) struct Unknown {
    /// (differential index set, monomial) per scalar unknown.
    pub basis: Vec<(u64, Monomial)>,
    nvars: usize,
    k: usize,
}

impl Unknown {
    pub fn polynomial(g: &GradingData, d: &DegreeVector) -> Unknown {
        Unknown { basis: g.monomials_of_degree(d).into_iter().map(|m| (0, m)).collect(), nvars: g.nvars(), k: 0 }
    }

    pub fn one_form(g: &GradingData, d: &DegreeVector) -> Unknown {
        let mut basis = Vec::new();
        for i in 0..g.nvars() {
            for m in g.monomials_of_degree(&d.sub(g.var_degree(i))) {
                basis.push((1u64 << i, m));
            }
        }
        Unknown { basis, nvars: g.nvars(), k: 1 }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    /// The basis element `t` as a form (a 0-form for polynomial unknowns).
    pub fn element(&self, t: usize) -> KForm {
        let (mask, m) = &self.basis[t];
        let p = QPoly::term(m.clone(), rat(1));
        if self.k == 0 {
            KForm::function(p)
        } else {
            KForm::from_terms(self.nvars, self.k, vec![(crate::forms::indices_of(*mask), p)]).expect("valid basis element")
        }
    }

    pub fn assemble(&self, coeffs: &[Rational]) -> KForm {
        let mut out = KForm::zero(self.nvars, self.k);
        for (t, c) in coeffs.iter().enumerate() {
            if *c != rat(0) {
                out = &out + &self.element(t).scale(c);
            }
        }
        out
    }
}

fn function_of(f: &KForm) -> QPoly {
    f.coefficient(&[])
}

/// Free part of a degree on a grading of free rank one.
fn scalar_degree(g: &GradingData, d: &DegreeVector) -> Result<i64> {
    if g.free_rank() != 1 {
        return Err(Error::Context(format!("expected a grading of free rank 1, got {}", g.free_rank())));
    }
    Ok(d.free[0])
}

fn form_degree(a: &KForm, g: &GradingData) -> Result<DegreeVector> {
    a.degree(g)?.ok_or_else(|| Error::Argument("the zero form has no degree".into()))
}

/// Weights `(ρ, λ)` in the unfolding equation `ρ·h·dα = λ·α∧(η − dh)` for
/// unknowns of degree `r`: `(r, ℓ)` on free-rank-one gradings and `(1, 1)`
/// at `r = deg α` otherwise.
fn unfolding_weights(g: &GradingData, deg_a: &DegreeVector, r: &DegreeVector) -> Result<(Rational, Rational)> {
    if g.free_rank() == 1 {
        let (rr, l) = (scalar_degree(g, r)?, scalar_degree(g, deg_a)?);
        return Ok((rat(rr), rat(l)));
    }
    if r != deg_a {
        return Err(Error::Degree(format!("graded unfoldings need a free rank 1 grading; in rank {} only degree {deg_a} is defined", g.free_rank())));
    }
    let one = rat(1);
    Ok((one.clone(), one))
}

/// A graded unfolding `(h, η)` of degree `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfoldingPair {
    pub h: QPoly,
    pub eta: KForm,
    pub r: DegreeVector,
}

/// `ρ·h·dα − λ·α∧(η − dh)`; zero iff `(h, η)` is an unfolding.
pub fn unfolding_defect(a: &KForm, g: &GradingData, u: &UnfoldingPair) -> Result<KForm> {
    let deg_a = form_degree(a, g)?;
    let (rho, lambda) = unfolding_weights(g, &deg_a, &u.r)?;
    let dh = KForm::function(u.h.clone()).d();
    let lhs = a.d().mul_poly(&u.h).scale(&rho);
    let rhs = a.wedge(&(&u.eta - &dh)).scale(&lambda);
    Ok(&lhs - &rhs)
}

pub fn is_unfolding(a: &KForm, g: &GradingData, u: &UnfoldingPair) -> Result<bool> {
    Ok(unfolding_defect(a, g, u)?.is_zero())
}

/// Whether `h·dα = α∧η̃` for the given witness.
pub fn verify_unfolding_witness(a: &KForm, h: &QPoly, witness: &KForm) -> bool {
    a.d().mul_poly(h) == a.wedge(witness)
}

/// Membership `h ∈ I(α)`: solve `h·dα = α∧η̃` for `η̃` of degree `deg h`.
/// Returns a witness if one exists.
pub fn unfoldings_ideal_membership(a: &KForm, g: &GradingData, h: &QPoly) -> Result<Option<KForm>> {
    if h.is_zero() {
        return Ok(Some(KForm::zero(a.nvars(), 1)));
    }
    let r = g.degree_of(h)?;
    let unknown = Unknown::one_form(g, &r);
    let mut sys = LinearSystem::new();
    for t in 0..unknown.len() {
        sys.push_column(&a.wedge(&unknown.element(t)));
    }
    let target = a.d().mul_poly(h);
    Ok(sys.solve(&target).map(|x| unknown.assemble(&x)))
}

/// A basis of the degree-`r` unfoldings modulo the trivial ones
/// `S_{r−ℓ}·(0, α)`.
///
/// Only the degree-`ℓ` part projects to deformations: for `r ≠ ℓ` the
/// deformation defect of `η` is `(1 − r/ℓ)·dh∧dα`.
pub fn unfoldings_space(a: &KForm, g: &GradingData, r: &DegreeVector) -> Result<Vec<UnfoldingPair>> {
    let deg_a = form_degree(a, g)?;
    let (rho, lambda) = unfolding_weights(g, &deg_a, r)?;
    let hu = Unknown::polynomial(g, r);
    let eu = Unknown::one_form(g, r);
    let da = a.d();
    let mut sys = LinearSystem::new();
    // Over projective space the definition takes η among all Kähler forms;
    // on other toric varieties η must itself descend.
    let radial = if g.free_rank() == 1 { Vec::new() } else { radial_fields(g) };
    let zero = KForm::zero(a.nvars(), 0);
    for t in 0..hu.len() {
        let h = function_of(&hu.element(t));
        let dh = KForm::function(h.clone()).d();
        let mut blocks = vec![&da.mul_poly(&h).scale(&rho) + &a.wedge(&dh).scale(&lambda)];
        blocks.extend(radial.iter().map(|_| zero.clone()));
        sys.push_blocks(&blocks);
    }
    for t in 0..eu.len() {
        let e = eu.element(t);
        let mut blocks = vec![a.wedge(&e).scale(&-lambda.clone())];
        for r in &radial {
            blocks.push(e.contract(r)?);
        }
        sys.push_blocks(&blocks);
    }
    let kernel = sys.kernel();
    let split = |v: &[Rational]| (function_of(&hu.assemble(&v[..hu.len()])), eu.assemble(&v[hu.len()..]));
    // trivial directions (0, f·α), expressed in the same coordinates
    let trivial: Vec<Vec<Rational>> = Unknown::polynomial(g, &r.sub(&deg_a))
        .basis
        .iter()
        .map(|(_, m)| {
            let f = QPoly::term(m.clone(), rat(1));
            let mut v = vec![rat(0); hu.len()];
            v.extend(coordinates(&eu, &a.mul_poly(&f)));
            v
        })
        .collect();
    let classes = complement(&trivial, &kernel);
    Ok(classes
        .into_iter()
        .map(|v| {
            let (h, eta) = split(&v);
            UnfoldingPair { h, eta, r: r.clone() }
        })
        .collect())
}

/// Coordinates of a form in the monomial basis of an unknown.
fn coordinates(u: &Unknown, f: &KForm) -> Vec<Rational> {
    u.basis
        .iter()
        .map(|(mask, m)| {
            let idx = crate::forms::indices_of(*mask);
            f.coefficient(&idx).coefficient(m)
        })
        .collect()
}

/// Vectors of `space` that extend a basis of `span(sub)` to one of
/// `span(sub ∪ space)`.
fn complement(sub: &[Vec<Rational>], space: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut acc: Vec<Vec<Rational>> = sub.to_vec();
    let mut rank = linalg::rank_of(&acc);
    let mut out = Vec::new();
    for v in space {
        acc.push(v.clone());
        let r = linalg::rank_of(&acc);
        if r > rank {
            rank = r;
            out.push(v.clone());
        } else {
            acc.pop();
        }
    }
    out
}

/// `f·(h, η) = (fh, ((r+s)/r)·fη + (1/r)(r·h·df − s·f·dh))`.
pub fn module_action(f: &QPoly, u: &UnfoldingPair, g: &GradingData) -> Result<UnfoldingPair> {
    let r = scalar_degree(g, &u.r)?;
    if r == 0 {
        return Err(Error::DegenerateDegree("the module action divides by the degree r = 0".into()));
    }
    let sd = if f.is_zero() { g.zero_degree() } else { g.degree_of(f)? };
    let s = scalar_degree(g, &sd)?;
    let rq = rat(r);
    let df = KForm::function(f.clone()).d();
    let dh = KForm::function(u.h.clone()).d();
    let first = u.eta.mul_poly(f).scale(&frac(r + s, r));
    let second = &df.mul_poly(&u.h).scale(&rq) - &dh.mul_poly(f).scale(&rat(s));
    Ok(UnfoldingPair { h: f * &u.h, eta: &first + &second.scale(&frac(1, r)), r: u.r.add(&sd) })
}

/// `α∧dη + η∧dα`; zero iff `η` is a first-order deformation.
pub fn deformation_defect(a: &KForm, eta: &KForm) -> KForm {
    &a.wedge(&eta.d()) + &eta.wedge(&a.d())
}

pub fn is_deformation(a: &KForm, eta: &KForm) -> bool {
    deformation_defect(a, eta).is_zero()
}

/// A basis of `D(α)`: descended 1-forms of degree `deg α` solving the
/// deformation equation, modulo `ℚ·α`.
pub fn deformation_space(a: &KForm, g: &GradingData) -> Result<Vec<KForm>> {
    let d = form_degree(a, g)?;
    let eu = Unknown::one_form(g, &d);
    let radial = radial_fields(g);
    let da = a.d();
    let mut sys = LinearSystem::new();
    for t in 0..eu.len() {
        let e = eu.element(t);
        let mut blocks = vec![&a.wedge(&e.d()) + &e.wedge(&da)];
        for r in &radial {
            blocks.push(e.contract(r)?);
        }
        sys.push_blocks(&blocks);
    }
    let kernel = sys.kernel();
    let trivial = vec![coordinates(&eu, a)];
    Ok(complement(&trivial, &kernel).into_iter().map(|v| eu.assemble(&v)).collect())
}

/// The surface correspondence `Y ↦ i_Y Ω_X`.
pub fn field_form_correspondence(y: &VectorField, g: &GradingData) -> Result<KForm> {
    volume_form(g).contract(y)
}

/// A vector field representing a 1-form through `α = i_Y Ω_X`, and the
/// dimension of the space of such representatives (radial summands
/// `Σ f_j R_j` and anything else in the kernel).
#[derive(Clone, Debug)]
pub struct FieldRepresentative {
    pub field: VectorField,
    pub kernel_dim: usize,
}

pub fn solve_field(a: &KForm, g: &GradingData) -> Result<FieldRepresentative> {
    if a.k() + 1 != g.dim() {
        return Err(Error::Context(format!("a {}-form is represented by a field only on a {}-dimensional variety", a.k(), a.k() + 1)));
    }
    let omega = volume_form(g);
    let deg_omega = g.anticanonical();
    let l = form_degree(a, g)?.sub(&deg_omega);
    let m = g.nvars();
    let mut slots: Vec<(usize, Monomial)> = Vec::new();
    for i in 0..m {
        for mono in g.monomials_of_degree(&l.add(g.var_degree(i))) {
            slots.push((i, mono));
        }
    }
    let field_of = |i: usize, mono: &Monomial| {
        let mut c = vec![QPoly::zero(m); m];
        c[i] = QPoly::term(mono.clone(), rat(1));
        VectorField::new(c)
    };
    let mut sys = LinearSystem::new();
    for (i, mono) in &slots {
        sys.push_column(&omega.contract(&field_of(*i, mono))?);
    }
    let x = sys.solve(a).ok_or_else(|| Error::Representation("i_Y Ω_X = α has no solution in the forced degree".into()))?;
    let kernel_dim = sys.kernel().len();
    let mut field = VectorField::zero(m);
    for ((i, mono), c) in slots.iter().zip(&x) {
        if *c != rat(0) {
            field = field.add(&field_of(*i, mono).scale(c));
        }
    }
    Ok(FieldRepresentative { field, kernel_dim })
}

#[cfg(test)]
mod tests;
