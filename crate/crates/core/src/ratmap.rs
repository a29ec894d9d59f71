//! Rational maps `ℙⁿ ⇢ X` given by polynomial liftings, and everything
//! transported along them: pulled-back forms, their ideals, first-order
//! deformations, logarithmic forms and the flag of subfoliations through a
//! weighted projective presentation.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::foliation::{kupka_ideal, singular_ideal, unfoldings_ideal_membership, verify_unfolding_witness};
use crate::forms::KForm;
use crate::groebner::Engine;
use crate::poly::FirstOrderPolynomial;
use crate::toric::{class_group, plucker_holds, smith_normal_form, volume_coefficients, Fan, GradingData, IntMatrix, VectorField};
use crate::{rat, QDual, QIdeal, QPoly, Rational};

/// Assertions a caller may make about a lifting; they are checked by
/// [`RationalMapLifting::validate`], never assumed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MapFlags {
    pub flat_pullback: bool,
    pub complete: bool,
}

/// `F = (F_1, …, F_m)`, homogeneous of degrees `ē` in `n + 1` variables,
/// lifting a rational map to the toric variety of `target`.
#[derive(Clone, Debug)]
pub struct RationalMapLifting {
    components: Vec<QPoly>,
    degrees: Vec<i64>,
    target: Fan,
    grading: GradingData,
    pub flags: MapFlags,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapReport {
    /// Codimension of `F*(I_Z)` in the source.
    pub base_locus_codim: i64,
    pub complete: bool,
    /// The complete flag was asserted but does not hold.
    pub assertion_violated: bool,
}

impl RationalMapLifting {
    /// Degrees are read off the components, which must be nonzero and
    /// homogeneous in the standard grading.
    pub fn new(components: Vec<QPoly>, target: Fan) -> Result<Self> {
        let mut degrees = Vec::with_capacity(components.len());
        for (i, f) in components.iter().enumerate() {
            if f.is_zero() {
                return Err(Error::Argument(format!("component F{} is zero", i + 1)));
            }
            if !f.is_standard_homogeneous() {
                let t = f.terms();
                return Err(Error::Homogeneity {
                    first: format!("F{}: {}", i + 1, QPoly::term(t[0].0.clone(), t[0].1.clone())),
                    second: format!("{}", QPoly::term(t[t.len() - 1].0.clone(), t[t.len() - 1].1.clone())),
                });
            }
            degrees.push(i64::from(f.total_degree().unwrap_or(0)));
        }
        Self::with_degrees(components, degrees, target)
    }

    pub fn with_degrees(components: Vec<QPoly>, degrees: Vec<i64>, target: Fan) -> Result<Self> {
        if components.len() != target.nrays() || degrees.len() != components.len() {
            return Err(Error::Context(format!("{} components and {} degrees for {} rays", components.len(), degrees.len(), target.nrays())));
        }
        let n = components[0].nvars();
        if n < 2 || components.iter().any(|f| f.nvars() != n) {
            return Err(Error::Context("components must share a source ring with at least two variables".into()));
        }
        for (i, (f, e)) in components.iter().zip(&degrees).enumerate() {
            if !f.is_zero() && (!f.is_standard_homogeneous() || i64::from(f.total_degree().unwrap_or(0)) != *e) {
                return Err(Error::Degree(format!("F{} is not homogeneous of degree {e}", i + 1)));
            }
        }
        let grading = class_group(&target)?;
        Ok(RationalMapLifting { components, degrees, target, grading, flags: MapFlags::default() })
    }

    pub fn components(&self) -> &[QPoly] {
        &self.components
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn target(&self) -> &Fan {
        &self.target
    }

    pub fn target_grading(&self) -> &GradingData {
        &self.grading
    }

    pub fn source_vars(&self) -> usize {
        self.components[0].nvars()
    }

    /// Standard grading of the source projective space.
    pub fn source_grading(&self) -> Result<GradingData> {
        class_group(&Fan::weighted_projective(&vec![1; self.source_vars()])?)
    }

    /// `Σ e_i v_i = 0`, then the base locus.
    pub fn validate(&self, engine: &Engine) -> Result<MapReport> {
        for c in 0..self.target.dim() {
            let s: i64 = self.degrees.iter().zip(self.target.rays()).map(|(e, v)| e * v[c]).sum();
            if s != 0 {
                let terms: Vec<String> = self.degrees.iter().zip(self.target.rays()).map(|(e, v)| format!("{e}·{}", v[c])).collect();
                return Err(Error::Degree(format!("Σ e_i v_i ≠ 0 in coordinate {}: {} = {s}", c + 1, terms.join(" + "))));
            }
        }
        let base = self.pull_ideal(&self.target.irrelevant_ideal())?;
        let base_locus_codim = engine.codimension(&base)?;
        let complete = base_locus_codim >= 2;
        Ok(MapReport { base_locus_codim, complete, assertion_violated: self.flags.complete && !complete })
    }

    pub fn pull_poly(&self, p: &QPoly) -> Result<QPoly> {
        p.substitute(&self.components)
    }

    /// The ideal generated by `F*` of the generators.
    pub fn pull_ideal(&self, i: &QIdeal) -> Result<QIdeal> {
        let gens = i.generators().iter().map(|g| self.pull_poly(g)).collect::<Result<Vec<_>>>()?;
        Ok(QIdeal::new(self.source_vars(), gens))
    }

    fn differentials(&self) -> Vec<KForm> {
        self.components.iter().map(|f| KForm::function(f.clone()).d()).collect()
    }

    /// `F*a`: substitute the coefficients and replace `dz_i` by `dF_i`.
    pub fn pullback(&self, a: &KForm) -> Result<KForm> {
        if a.nvars() != self.components.len() {
            return Err(Error::Context(format!("a form in {} variables pulled back along a map to {} coordinates", a.nvars(), self.components.len())));
        }
        let df = self.differentials();
        let n = self.source_vars();
        let mut out = KForm::zero(n, a.k());
        for (idx, c) in a.terms() {
            let mut t = KForm::function(self.pull_poly(c)?);
            for &i in &idx {
                t = t.wedge(&df[i]);
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// `Σ d_i e_i` for a 1-form of class `[Σ d_i D_i]`, read from any
    /// monomial of the form; the standard degree of `F*α` when `F*α` has no
    /// common factor.
    pub fn expected_pullback_degree(&self, a: &KForm) -> Option<i64> {
        let (idx, c) = a.terms().into_iter().next()?;
        let (mono, _) = c.terms().first()?;
        let base: i64 = mono.exps().iter().zip(&self.degrees).map(|(u, e)| i64::from(*u) * e).sum();
        Some(base + idx.iter().map(|i| self.degrees[*i]).sum::<i64>())
    }
}

/// The ideals of a pulled-back 1-form `ω = F*α`.
#[derive(Clone, Debug)]
pub struct PullbackIdeals {
    pub omega: KForm,
    pub j_omega: QIdeal,
    /// `F*(J(α))`.
    pub j_tilde: QIdeal,
    pub k_omega: QIdeal,
    /// `(J(ω) : J̃(ω))`, supported on the critical values of `F` meeting
    /// the singular set.
    pub residual: QIdeal,
    /// `A_i(F)`, generating the expected `K(ω)`.
    pub a_of_f: Vec<QPoly>,
    pub k_equals_pulled_k: bool,
    pub k_equals_a_of_f: bool,
    pub j_tilde_equals_k: bool,
    pub j_inside_k: bool,
    /// Per `k`: the witness `F*(i_{∂/∂z_k} dα)` satisfies `A_k(F)·dω = ω∧η̃_k`.
    pub witnesses_accepted: Vec<bool>,
    /// Per `k`: the linear membership solver finds a witness itself.
    pub solver_members: Vec<bool>,
}

pub fn pullback_ideals(engine: &Engine, f: &RationalMapLifting, a: &KForm) -> Result<PullbackIdeals> {
    if a.k() != 1 {
        return Err(Error::Context("pullback ideals are defined for 1-forms".into()));
    }
    let omega = f.pullback(a)?;
    let j_omega = singular_ideal(&omega);
    let j_tilde = f.pull_ideal(&singular_ideal(a))?;
    let k_omega = kupka_ideal(engine, &omega)?;
    let residual = engine.quotient(&j_omega, &j_tilde)?;
    let pulled_k = f.pull_ideal(&kupka_ideal(engine, a)?)?;
    let a_of_f: Vec<QPoly> = a.one_form_coefficients().iter().map(|c| f.pull_poly(c)).collect::<Result<_>>()?;
    let a_ideal = QIdeal::new(f.source_vars(), a_of_f.clone());
    let da = a.d();
    let source = f.source_grading()?;
    let mut witnesses_accepted = Vec::new();
    let mut solver_members = Vec::new();
    for (k, h) in a_of_f.iter().enumerate() {
        let witness = f.pullback(&da.contract(&VectorField::coordinate(a.nvars(), k))?)?;
        witnesses_accepted.push(verify_unfolding_witness(&omega, h, &witness));
        solver_members.push(h.is_zero() || unfoldings_ideal_membership(&omega, &source, h)?.is_some());
    }
    Ok(PullbackIdeals {
        k_equals_pulled_k: engine.ideal_equal(&k_omega, &pulled_k)?,
        k_equals_a_of_f: engine.ideal_equal(&k_omega, &a_ideal)?,
        j_tilde_equals_k: engine.ideal_equal(&j_tilde, &k_omega)?,
        j_inside_k: engine.contains(&k_omega, &j_omega)?,
        omega,
        j_omega,
        j_tilde,
        k_omega,
        residual,
        a_of_f,
        witnesses_accepted,
        solver_members,
    })
}

/// `τ = τ₁ + τ₂`, the first-order part of `(F + εG)*(α + εη)`.
#[derive(Clone, Debug)]
pub struct DeformationSplit {
    /// From dual-number arithmetic.
    pub tau: KForm,
    /// `Σ B_i(F) dF_i = F*η`.
    pub tau1: KForm,
    /// `Σ_i Σ_j ∂A_i/∂z_j(F) G_j dF_i + Σ_i A_i(F) dG_i`.
    pub tau2: KForm,
    pub identity_holds: bool,
    /// `F*(Ω_X) ∧ τ₁ = 0`.
    pub tau1_tangent: bool,
}

pub fn deformation_split(f: &RationalMapLifting, g: &[QPoly], a: &KForm, eta: &KForm) -> Result<DeformationSplit> {
    let m = f.components.len();
    let n = f.source_vars();
    if g.len() != m || a.k() != 1 || eta.k() != 1 || a.nvars() != m || eta.nvars() != m {
        return Err(Error::Context("deformation_split needs m perturbations and two 1-forms on the target".into()));
    }
    for (i, (gi, e)) in g.iter().zip(&f.degrees).enumerate() {
        if gi.nvars() != n {
            return Err(Error::Context(format!("G{} lives in the wrong ring", i + 1)));
        }
        if !gi.is_zero() && (!gi.is_standard_homogeneous() || i64::from(gi.total_degree().unwrap_or(0)) != *e) {
            return Err(Error::Degree(format!("G{} must be homogeneous of degree {e}", i + 1)));
        }
    }
    let tg = &f.grading;
    if !eta.is_zero() && eta.degree(tg)? != a.degree(tg)? {
        return Err(Error::Degree("η must have the degree of α".into()));
    }

    // path 1: dual numbers, no derivatives of A
    let images: Vec<QDual> = f.components.iter().zip(g).map(|(fi, gi)| FirstOrderPolynomial::new(fi.clone(), gi.clone())).collect::<Result<_>>()?;
    let a_c = a.one_form_coefficients();
    let e_c = eta.one_form_coefficients();
    let df = f.differentials();
    let dg: Vec<KForm> = g.iter().map(|p| KForm::function(p.clone()).d()).collect();
    let mut tau = KForm::zero(n, 1);
    for i in 0..m {
        // (A_i + εB_i)(F + εG) = A_i(F + εG) + ε·B_i(F)
        let coeff = a_c[i].substitute_first_order(&images)?;
        let eps_part = &coeff.epsilon + &e_c[i].substitute_first_order(&images)?.body;
        tau = &(&tau + &df[i].mul_poly(&eps_part)) + &dg[i].mul_poly(&coeff.body);
    }

    // path 2: the explicit formula
    let tau1 = f.pullback(eta)?;
    let mut tau2 = KForm::zero(n, 1);
    for i in 0..m {
        let mut s = QPoly::zero(n);
        for (j, gj) in g.iter().enumerate() {
            s = &s + &(&f.pull_poly(&a_c[i].partial(j))? * gj);
        }
        tau2 = &(&tau2 + &df[i].mul_poly(&s)) + &dg[i].mul_poly(&f.pull_poly(&a_c[i])?);
    }
    let identity_holds = tau == &tau1 + &tau2;
    let tau1_tangent = f.pullback(&crate::toric::volume_form(tg))?.wedge(&tau1).is_zero();
    Ok(DeformationSplit { tau, tau1, tau2, identity_holds, tau1_tangent })
}

/// `∏_{i ∉ I} F_i`.
fn complement_product(f: &[QPoly], idx: &[usize]) -> QPoly {
    let n = f[0].nvars();
    f.iter().enumerate().filter(|(i, _)| !idx.contains(i)).fold(QPoly::one(n), |acc, (_, p)| &acc * p)
}

/// `ω = Σ_{|I|=q} λ_I F̂_I dF_I`.
///
/// `λ` must descend (`i_ē λ = 0` with `ē` the degrees of the `F_i`) and,
/// for `q ≥ 2`, be totally decomposable.
pub fn logarithmic_builder(lambda: &BTreeMap<Vec<usize>, Rational>, f: &[QPoly], q: usize) -> Result<KForm> {
    let m = f.len();
    if m == 0 || q == 0 || q > m {
        return Err(Error::Argument(format!("logarithmic forms of type q = {q} need at least q functions")));
    }
    if let Some(bad) = lambda.keys().find(|k| k.len() != q || k.iter().any(|i| *i >= m) || k.windows(2).any(|w| w[0] >= w[1])) {
        return Err(Error::Argument(format!("index set {bad:?} is not a sorted q-subset of 0..{m}")));
    }
    let mut e = Vec::with_capacity(m);
    for (i, p) in f.iter().enumerate() {
        if p.is_zero() || !p.is_standard_homogeneous() {
            return Err(Error::Argument(format!("F{} must be nonzero and homogeneous", i + 1)));
        }
        e.push(i64::from(p.total_degree().unwrap_or(0)));
    }
    // descent: contract the model form Σ λ_I ẑ_I dz_I with Σ e_i z_i ∂/∂z_i
    let model = KForm::from_terms(
        m,
        q,
        lambda.iter().map(|(idx, c)| {
            let hat = (0..m).filter(|i| !idx.contains(i)).fold(QPoly::one(m), |acc, i| &acc * &QPoly::var(m, i));
            (idx.clone(), hat.scale(c))
        }),
    )?;
    let euler = VectorField::new((0..m).map(|i| QPoly::var(m, i).scale(&rat(e[i]))).collect());
    if !model.contract(&euler)?.is_zero() {
        return Err(Error::Coefficient(format!("λ does not descend: i_ē λ ≠ 0 for ē = {e:?}")));
    }
    if q >= 2 && !plucker_holds(lambda, m, q) {
        return Err(Error::Coefficient("λ is not totally decomposable".into()));
    }
    let n = f[0].nvars();
    let df: Vec<KForm> = f.iter().map(|p| KForm::function(p.clone()).d()).collect();
    let mut out = KForm::zero(n, q);
    for (idx, c) in lambda {
        let mut t = KForm::function(complement_product(f, idx).scale(c));
        for &i in idx {
            t = t.wedge(&df[i]);
        }
        out = &out + &t;
    }
    if q == 1 && !out.wedge(&out.d()).is_zero() {
        return Err(Error::Coefficient("logarithmic 1-form is not integrable".into()));
    }
    Ok(out)
}

/// The flag of logarithmic subfoliations of `F*(F)` through the weighted
/// presentation `ℙ^{m−1}(ē) ⇢ X`.
#[derive(Clone, Debug)]
pub struct Flag {
    /// Relation basis with `ē/gcd` first and orientation matching the
    /// canonical one.
    pub basis: Vec<Vec<i64>>,
    /// `η_k = i_{R_1} ⋯ i_{R_{k+1}} dz_1∧…∧dz_m`, `k = 0, …, m−q−1`.
    pub etas: Vec<KForm>,
    /// `ω_k = Σ b^k_I F̂_I dF_I`.
    pub omegas: Vec<KForm>,
    /// `ω_k = F*(η_k)` for every `k`.
    pub pullbacks_agree: bool,
}

/// Coordinates of `v` in the rows of `basis`, if integral.
fn lattice_coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let s = basis.len();
    let m = v.len();
    let rows: Vec<crate::linalg::SparseRow<Rational>> =
        (0..m).map(|c| (0..s).filter(|r| basis[*r][c] != 0).map(|r| (r, rat(basis[r][c]))).collect()).collect();
    let rhs: Vec<Rational> = v.iter().map(|x| rat(*x)).collect();
    let x = crate::linalg::solve(s, &rows, &rhs)?;
    x.iter().map(|c| if c.is_integer() { i64::try_from(c.to_integer()).ok() } else { None }).collect()
}

pub fn flag_builder(f: &RationalMapLifting) -> Result<Flag> {
    let g = &f.grading;
    let canonical = g.relation_basis().to_vec();
    let s = canonical.len();
    let m = f.components.len();
    let gcd = f.degrees.iter().fold(0i64, |acc, e| acc.gcd(e));
    if gcd == 0 || f.degrees.iter().any(|e| *e <= 0) {
        return Err(Error::Lattice(format!("ē = {:?} is not a positive relation", f.degrees)));
    }
    let e: Vec<i64> = f.degrees.iter().map(|x| x / gcd).collect();
    let c = lattice_coordinates(&canonical, &e).ok_or_else(|| Error::Lattice(format!("ē = {e:?} is not in the relation lattice")))?;
    // complete the primitive row c to a unimodular matrix U: L·c·R = (1, 0, …)
    let snf = smith_normal_form(&IntMatrix::from_rows(std::slice::from_ref(&c)));
    if snf.diagonal().first().map(|d| d.abs()) != Some(1) {
        return Err(Error::Lattice(format!("ē/gcd has coordinates {c:?}, which do not extend to a basis")));
    }
    let mut u = snf.r_inv.clone();
    let sign = snf.l_inv[(0, 0)] * snf.d[(0, 0)];
    for j in 0..s {
        u[(0, j)] *= sign;
    }
    debug_assert_eq!(u.row(0), c.as_slice());
    if s >= 2 && u.determinant() < 0 {
        for j in 0..s {
            u[(s - 1, j)] = -u[(s - 1, j)];
        }
    } else if s == 1 && u.determinant() < 0 {
        return Err(Error::Lattice("ē is the negative of the relation generator".into()));
    }
    let basis = u.mul(&IntMatrix::from_rows(&canonical)).to_rows();
    let radial: Vec<VectorField> =
        basis.iter().map(|r| VectorField::new((0..m).map(|i| QPoly::var(m, i).scale(&rat(r[i]))).collect())).collect();
    let mut etas = Vec::with_capacity(s);
    for k in 0..s {
        let mut eta = KForm::volume(m);
        for r in radial[..=k].iter().rev() {
            eta = eta.contract(r)?;
        }
        etas.push(eta);
    }
    let mut omegas = Vec::with_capacity(s);
    let mut pullbacks_agree = true;
    for eta in &etas {
        let omega = logarithmic_builder(&flag_coefficients(eta)?, &f.components, eta.k())?;
        pullbacks_agree &= omega == f.pullback(eta)?;
        omegas.push(omega);
    }
    Ok(Flag { basis, etas, omegas, pullbacks_agree })
}

/// Coefficients `b_I` of `η_k`, checked to have the shape `b_I ẑ_I`.
pub fn flag_coefficients(eta: &KForm) -> Result<BTreeMap<Vec<usize>, Rational>> {
    let m = eta.nvars();
    let mut b = BTreeMap::new();
    for (idx, c) in eta.terms() {
        let exps: Vec<u32> = (0..m).map(|i| u32::from(!idx.contains(&i))).collect();
        match c.terms() {
            [(mono, x)] if mono.exps() == exps.as_slice() => {
                b.insert(idx, x.clone());
            }
            _ => return Err(Error::Coefficient(format!("coefficient of dz_{idx:?} is not a multiple of ẑ_I"))),
        }
    }
    Ok(b)
}

/// `F*(Ω_X)` written logarithmically: `Σ_I b_I F̂_I dF_I`.
pub fn pulled_volume_form(f: &RationalMapLifting) -> Result<KForm> {
    let b = volume_coefficients(&f.grading)?;
    logarithmic_builder(&b, &f.components, f.grading.dim())
}

/// `m − 6 + Σ binom(n + e_i, n)`.
pub fn log_component_dimension(n: u32, e: &[u32]) -> Result<i64> {
    if e.len() <= 3 {
        return Err(Error::Argument(format!("the dimension formula needs m > 3 functions, got {}", e.len())));
    }
    let binom = |a: u64, b: u64| -> i64 { (0..b).fold(1u128, |acc, i| acc * u128::from(a - i) / u128::from(i + 1)) as i64 };
    Ok(e.len() as i64 - 6 + e.iter().map(|ei| binom(u64::from(n + ei), u64::from(n))).sum::<i64>())
}

#[cfg(test)]
mod tests;
