//! Graded exterior calculus on the Cox ring.
//!
//! A [`KForm`] is `Σ_I A_I dz_I` with `I` ranging over sorted index sets,
//! stored sparsely as bitmasks. Signs from reordering are computed on the
//! fly by counting transpositions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::toric::{DegreeVector, GradingData, VectorField};
use crate::{QIdeal, QPoly, Rational};

/// A differential `k`-form with polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct KForm {
    nvars: usize,
    k: usize,
    coeffs: BTreeMap<u64, QPoly>,
}

pub(crate) fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub(crate) fn indices_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Number of elements of `mask` strictly below `i`.
fn below(mask: u64, i: usize) -> u32 {
    (mask & ((1u64 << i) - 1)).count_ones()
}

/// Sign of `dz_a ∧ dz_b` relative to `dz_{a∪b}`; `None` if they overlap.
fn wedge_sign(a: u64, b: u64) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    // one transposition for every pair i ∈ a, j ∈ b with i > j
    let odd = indices_of(b).iter().map(|&j| (a >> (j + 1)).count_ones()).sum::<u32>() % 2 == 1;
    Some(odd)
}

impl KForm {
    pub fn zero(nvars: usize, k: usize) -> KForm {
        KForm { nvars, k, coeffs: BTreeMap::new() }
    }

    /// The 0-form `p`.
    pub fn function(p: QPoly) -> KForm {
        let mut f = KForm::zero(p.nvars(), 0);
        f.insert(0, p);
        f
    }

    /// `Σ_i A_i dz_i`.
    pub fn one_form(coeffs: Vec<QPoly>) -> KForm {
        let n = coeffs.len();
        let mut f = KForm::zero(n, 1);
        for (i, a) in coeffs.into_iter().enumerate() {
            assert_eq!(a.nvars(), n, "coefficient ring must have one variable per differential");
            f.insert(1 << i, a);
        }
        f
    }

    pub fn dz(nvars: usize, i: usize) -> KForm {
        let mut f = KForm::zero(nvars, 1);
        f.insert(1 << i, QPoly::one(nvars));
        f
    }

    /// `dz_1 ∧ … ∧ dz_m`.
    pub fn volume(nvars: usize) -> KForm {
        let mut f = KForm::zero(nvars, nvars);
        f.insert((1u64 << nvars) - 1, QPoly::one(nvars));
        f
    }

    /// Build from `(indices, coefficient)` pairs in any order; repeated
    /// indices give zero, unsorted ones pick up the permutation sign.
    pub fn from_terms(nvars: usize, k: usize, terms: impl IntoIterator<Item = (Vec<usize>, QPoly)>) -> Result<KForm> {
        let mut f = KForm::zero(nvars, k);
        for (idx, a) in terms {
            if idx.len() != k {
                return Err(Error::Argument(format!("index set {idx:?} does not have {k} elements")));
            }
            if let Some(i) = idx.iter().find(|&&i| i >= nvars) {
                return Err(Error::Argument(format!("differential dz{} out of range", i + 1)));
            }
            if a.nvars() != nvars {
                return Err(Error::Context("form coefficient lives in a different ring".into()));
            }
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != k {
                continue;
            }
            let inversions = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| idx[i] > idx[j]).count();
            let a = if inversions % 2 == 1 { -a } else { a };
            f.add_to(mask_of(&sorted), a);
        }
        Ok(f)
    }

    fn insert(&mut self, mask: u64, a: QPoly) {
        if !a.is_zero() {
            self.coeffs.insert(mask, a);
        }
    }

    fn add_to(&mut self, mask: u64, a: QPoly) {
        if a.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&mask) {
            Some(b) => &b + &a,
            None => a,
        };
        self.insert(mask, sum);
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Form degree.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `A_I` for an index list in any order (antisymmetric).
    pub fn coefficient(&self, indices: &[usize]) -> QPoly {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != indices.len() {
            return QPoly::zero(self.nvars);
        }
        let inversions = (0..indices.len())
            .flat_map(|i| (i + 1..indices.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| indices[i] > indices[j])
            .count();
        let c = self.coeffs.get(&mask_of(&sorted)).cloned().unwrap_or_else(|| QPoly::zero(self.nvars));
        if inversions % 2 == 1 {
            -c
        } else {
            c
        }
    }

    /// For 1-forms, the coefficient vector `(A_1, …, A_m)`.
    pub fn one_form_coefficients(&self) -> Vec<QPoly> {
        assert_eq!(self.k, 1, "not a 1-form");
        (0..self.nvars).map(|i| self.coefficient(&[i])).collect()
    }

    /// Stored terms in lexicographic order of the index sets.
    pub fn terms(&self) -> Vec<(Vec<usize>, &QPoly)> {
        let mut v: Vec<(Vec<usize>, &QPoly)> = self.coeffs.iter().map(|(m, a)| (indices_of(*m), a)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub(crate) fn masked_terms(&self) -> impl Iterator<Item = (u64, &QPoly)> {
        self.coeffs.iter().map(|(m, a)| (*m, a))
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&QPoly) -> QPoly) -> KForm {
        let mut out = KForm::zero(self.nvars, self.k);
        for (m, a) in &self.coeffs {
            out.insert(*m, f(a));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> KForm {
        self.map_coefficients(|a| a.scale(c))
    }

    pub fn mul_poly(&self, p: &QPoly) -> KForm {
        self.map_coefficients(|a| a * p)
    }

    fn check_same(&self, o: &KForm) {
        assert_eq!(self.nvars, o.nvars, "forms live over different rings");
        assert_eq!(self.k, o.k, "adding forms of different degrees");
    }

    pub fn wedge(&self, o: &KForm) -> KForm {
        assert_eq!(self.nvars, o.nvars, "forms live over different rings");
        let mut out = KForm::zero(self.nvars, self.k + o.k);
        for (ma, a) in &self.coeffs {
            for (mb, b) in &o.coeffs {
                if let Some(odd) = wedge_sign(*ma, *mb) {
                    let p = a * b;
                    out.add_to(ma | mb, if odd { -p } else { p });
                }
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> KForm {
        let mut out = KForm::zero(self.nvars, self.k + 1);
        for (m, a) in &self.coeffs {
            for j in 0..self.nvars {
                if m >> j & 1 == 1 {
                    continue;
                }
                let da = a.partial(j);
                if da.is_zero() {
                    continue;
                }
                // dz_j ∧ dz_I = (−1)^{#I below j} dz_{I∪j}
                out.add_to(m | 1 << j, if below(*m, j) % 2 == 1 { -da } else { da });
            }
        }
        out
    }

    /// Interior product `i_Y`.
    pub fn contract(&self, y: &VectorField) -> Result<KForm> {
        if self.k == 0 {
            return Err(Error::Argument("cannot contract a 0-form".into()));
        }
        if y.nvars() != self.nvars {
            return Err(Error::Context("vector field and form live over different rings".into()));
        }
        let mut out = KForm::zero(self.nvars, self.k - 1);
        for (m, a) in &self.coeffs {
            for i in indices_of(*m) {
                let b = &y.coefficients()[i];
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                out.add_to(m & !(1 << i), if below(*m, i) % 2 == 1 { -p } else { p });
            }
        }
        Ok(out)
    }

    /// `L_Y = i_Y d + d i_Y`.
    pub fn lie_derivative(&self, y: &VectorField) -> Result<KForm> {
        let a = self.d().contract(y)?;
        if self.k == 0 {
            return Ok(a);
        }
        Ok(&a + &self.contract(y)?.d())
    }

    /// The ideal generated by all coefficients.
    pub fn coefficient_ideal(&self) -> QIdeal {
        Ideal::new(self.nvars, self.coeffs.values().cloned().collect())
    }

    /// The grading degree `deg A_I + Σ_{i∈I} deg z_i`, common to all terms,
    /// or a homogeneity error naming the offending coefficient. `None` for
    /// the zero form.
    pub fn degree(&self, g: &GradingData) -> Result<Option<DegreeVector>> {
        if g.nvars() != self.nvars {
            return Err(Error::Context("grading and form live over different rings".into()));
        }
        let mut first: Option<(Vec<usize>, DegreeVector)> = None;
        for (idx, a) in self.terms() {
            let mut d = g.degree_of(a)?;
            for &i in &idx {
                d = d.add(g.var_degree(i));
            }
            match &first {
                None => first = Some((idx, d)),
                Some((i0, d0)) if *d0 != d => {
                    return Err(Error::Homogeneity { first: format!("coefficient of {} (degree {d0})", dz_name(i0)), second: format!("coefficient of {} (degree {d})", dz_name(&idx)) });
                }
                _ => {}
            }
        }
        Ok(first.map(|f| f.1))
    }
}

fn dz_name(idx: &[usize]) -> String {
    if idx.is_empty() {
        return "1".into();
    }
    idx.iter().map(|i| format!("dz{}", i + 1)).collect::<Vec<_>>().join("∧")
}

impl Add<&KForm> for &KForm {
    type Output = KForm;
    fn add(self, o: &KForm) -> KForm {
        self.check_same(o);
        let mut out = self.clone();
        for (m, a) in &o.coeffs {
            out.add_to(*m, a.clone());
        }
        out
    }
}

impl Sub<&KForm> for &KForm {
    type Output = KForm;
    fn sub(self, o: &KForm) -> KForm {
        self + &(-o)
    }
}

impl Neg for &KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        self.map_coefficients(|a| -a)
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().iter().map(|(idx, a)| format!("({a})*{}", dz_name(idx))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `div(Y) = Σ ∂B_i/∂z_i`.
pub fn divergence(y: &VectorField) -> QPoly {
    y.coefficients().iter().enumerate().fold(QPoly::zero(y.nvars()), |acc, (i, b)| &acc + &b.partial(i))
}

/// Free degree `ℓ` of a field on a weighted projective plane (the degree
/// that gives `deg B_i = ℓ + a_i`), with the zero field reported as `None`.
fn plane_field_degree(y: &VectorField, g: &GradingData) -> Result<Option<i64>> {
    if g.free_rank() != 1 {
        return Err(Error::Context(format!("expected a weighted projective plane (free rank 1), got free rank {}", g.free_rank())));
    }
    Ok(y.degree(g)?.map(|d| d.free[0]))
}

/// `W = Y − div(Y)/(ℓ + Σa_i)·R`, which has zero divergence and defines the
/// same foliation as `Y` on a weighted projective plane.
pub fn divergence_normalize(y: &VectorField, g: &GradingData) -> Result<VectorField> {
    let Some(l) = plane_field_degree(y, g)? else { return Ok(y.clone()) };
    let total = l + g.anticanonical().free[0];
    if total == 0 {
        return Err(Error::DegenerateDegree(format!("ℓ + Σ a_i = 0 for ℓ = {l}")));
    }
    let r = &crate::toric::radial_fields(g)[0];
    let f = divergence(y).scale(&Rational::new((-1).into(), total.into()));
    Ok(y.add(&r.mul_poly(&f)))
}

/// Both sides of the divergence identity for `α = i_Y Ω_X` on a weighted
/// projective plane, as `(dα, div(Y)·Ω_X + c·i_Y(dz₀∧dz₁∧dz₂))`, for a
/// given coefficient `c`.
fn divergence_sides(y: &VectorField, g: &GradingData, c: i64) -> Result<(KForm, KForm)> {
    let omega = crate::toric::volume_form(g);
    let alpha = omega.contract(y)?;
    let lhs = alpha.d();
    let vol = KForm::volume(g.nvars());
    let rhs = &omega.mul_poly(&divergence(y)) + &vol.contract(y)?.scale(&Rational::from_integer(c.into()));
    Ok((lhs, rhs))
}

/// Checks `dα = div(Y)·Ω_X + ℓ·i_Y(dz₀∧dz₁∧dz₂)` exactly as commonly
/// stated. On failure the difference `dα − rhs` is returned.
///
/// With `α = i_Y Ω_X`, `Ω_X = i_R(dz₀∧dz₁∧dz₂)` and `deg B_i = ℓ + a_i`,
/// Cartan's formulas give the coefficient `−(ℓ + Σ a_i)` instead (see
/// [`dform_divergence_identity_corrected`]), so this check fails whenever
/// `i_Y(dz₀∧dz₁∧dz₂) ≠ 0` and `ℓ ≠ −(ℓ + Σ a_i)`.
pub fn dform_divergence_identity(y: &VectorField, g: &GradingData) -> Result<std::result::Result<(), KForm>> {
    let Some(l) = plane_field_degree(y, g)? else { return Ok(Ok(())) };
    let (lhs, rhs) = divergence_sides(y, g, l)?;
    Ok(if lhs == rhs { Ok(()) } else { Err(&lhs - &rhs) })
}

/// `dα = div(Y)·Ω_X − (ℓ + Σ a_i)·i_Y(dz₀∧dz₁∧dz₂)`.
///
/// Derivation: `dα = L_Y Ω_X − i_Y dΩ_X`; `dΩ_X = (Σa_i)·vol` and
/// `L_Y i_R vol = i_R L_Y vol + i_{[Y,R]} vol = div(Y)·Ω_X − ℓ·i_Y vol`.
pub fn dform_divergence_identity_corrected(y: &VectorField, g: &GradingData) -> Result<std::result::Result<(), KForm>> {
    let Some(l) = plane_field_degree(y, g)? else { return Ok(Ok(())) };
    let c = -(l + g.anticanonical().free[0]);
    let (lhs, rhs) = divergence_sides(y, g, c)?;
    Ok(if lhs == rhs { Ok(()) } else { Err(&lhs - &rhs) })
}
