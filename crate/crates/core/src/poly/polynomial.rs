use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::field::Field;

/// A sparse multivariate polynomial, terms sorted by descending grevlex.
///
/// The representation is canonical: no zero coefficients, no repeated
/// monomials, fixed order. Structural equality is therefore mathematical
/// equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: Vec<(Monomial, F)>,
}

/// Result of [`Polynomial::mult_along`]. The zero polynomial is divisible by
/// every power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, n: i64) -> Self {
        Self::constant(nvars, F::from_i64(n))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Self::term(Monomial::var(nvars, i), F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            Polynomial { nvars, terms: vec![(m, c)] }
        }
    }

    /// Build from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut v: Vec<(Monomial, F)> = terms.into_iter().collect();
        debug_assert!(v.iter().all(|(m, _)| m.nvars() == nvars));
        v.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial { nvars, terms: combine_sorted(v) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.as_slice() {
            [] => Some(F::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    pub fn leading_coefficient(&self) -> Option<&F> {
        self.terms.first().map(|t| &t.1)
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c)).collect() }
    }

    /// Multiply by `c·m`; grevlex is multiplicative so order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c)).collect(),
        }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    fn check_context(&self, other: &Self, op: &str) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Context(format!("{op}: {} vs {} variables", self.nvars, other.nvars)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_context(other, "add")?;
        Ok(Polynomial { nvars: self.nvars, terms: merge(&self.terms, &other.terms, false) })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_context(other, "sub")?;
        Ok(Polynomial { nvars: self.nvars, terms: merge(&self.terms, &other.terms, true) })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other, "mul")?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return Ok(large.mul_term(m, c));
        }
        let mut all = Vec::with_capacity(small.len() * large.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                all.push((m1.mul(m2), c1.clone() * c2));
            }
        }
        all.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(Polynomial { nvars: self.nvars, terms: combine_sorted(all) })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `∂/∂z_i`.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index {i} out of range");
        let mut terms: Vec<(Monomial, F)> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            terms.push((Monomial::new(&exps), c.clone() * &F::from_i64(e as i64)));
        }
        // lowering one exponent can reorder terms, so re-sort
        Self::from_terms(self.nvars, terms)
    }

    /// Ring homomorphism `z_i ↦ images[i]`.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::Context(format!(
                "substitute: {} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => 0,
        };
        if images.iter().any(|p| p.nvars != target) {
            return Err(Error::Context("substitute: images live in different rings".into()));
        }
        let mut powers: Vec<Vec<Polynomial<F>>> = images.iter().map(|p| vec![Self::one(target), p.clone()]).collect();
        let mut acc = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &[F]) -> Result<F> {
        if point.len() != self.nvars {
            return Err(Error::Context(format!("eval: {} values for {} variables", point.len(), self.nvars)));
        }
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    t = t * x;
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (lm, lc) = d.leading_term().cloned().expect("nonzero");
        let lc_inv = lc.inv();
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = r.leading_term().cloned() {
            if !lm.divides(&m) {
                // with a single divisor, a non-reducible leading term means a
                // nonzero remainder
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = c * &lc_inv;
            r = &r - &d.mul_term(&qm, &qc);
            q.push((qm, qc));
        }
        Some(Self::from_terms(self.nvars, q))
    }

    /// Largest `k` with `f^k | self`.
    pub fn mult_along(&self, f: &Self) -> Result<Multiplicity> {
        if f.is_constant() {
            return Err(Error::Argument("mult_along: f must be non-constant".into()));
        }
        if self.is_zero() {
            return Ok(Multiplicity::Infinite);
        }
        let mut k = 0;
        let mut p = self.clone();
        while let Some(q) = p.div_exact(f) {
            k += 1;
            p = q;
        }
        Ok(Multiplicity::Finite(k))
    }

    /// Relabel variables into a ring with `nvars` variables; variable `i`
    /// becomes `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        Self::from_terms(nvars, self.terms.iter().map(|(m, c)| (m.embed(nvars, map), c.clone())))
    }

    /// Whether every term has the same total degree.
    pub fn is_standard_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Bitmask of the variables that actually occur.
    pub fn support_mask(&self) -> u64 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support_mask())
    }

    pub fn map_coefficients<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Partial map (e.g. reduction modulo a prime); `None` if any coefficient
    /// fails to map.
    pub fn try_map_coefficients<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<Polynomial<G>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), f(c)?));
        }
        Some(Polynomial::from_terms(self.nvars, terms))
    }

    /// Normalize the sign so the leading coefficient is positive (ideal
    /// generators are printed this way).
    pub fn with_positive_lead(&self) -> Self {
        match self.leading_coefficient() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }
}

fn combine_sorted<F: Field>(v: Vec<(Monomial, F)>) -> Vec<(Monomial, F)> {
    let mut out: Vec<(Monomial, F)> = Vec::with_capacity(v.len());
    for (m, c) in v {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => {
                *lc = lc.clone() + c;
            }
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if let Some((_, lc)) = out.last() {
        if lc.is_zero() {
            out.pop();
        }
    }
    out
}

fn merge<F: Field>(a: &[(Monomial, F)], b: &[(Monomial, F)], negate_b: bool) -> Vec<(Monomial, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let nb = |c: &F| if negate_b { -c.clone() } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), nb(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { a[i].1.clone() - &b[j].1 } else { a[i].1.clone() + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), nb(c))));
    out
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Positional default printing (`z1`, `z2`, …); named printing lives in the
/// CLI crate.
impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a, F: Field> $tr<&'a Polynomial<F>> for &'a Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<F: Field> $tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, F: Field> $tr<&'a Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
                (&self).$m(rhs)
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

impl<F: Field + std::hash::Hash> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        self.terms.hash(state);
    }
}
