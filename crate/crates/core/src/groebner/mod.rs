//! Gröbner bases and the ideal algebra built on them.
//!
//! Everything goes through an [`Engine`], which owns the reduction-step
//! budget. The budget is shared by all computations made through one engine,
//! so a long chain of quotients is bounded as a whole.

mod buchberger;
mod ideal;
mod order;

use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

pub use ideal::Ideal;
pub use order::MonomialOrder;

use buchberger::{groebner, reduce, to_order, GPoly};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, Polynomial};

pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

pub(crate) struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn tick(&self) -> Result<()> {
        let used = self.used.fetch_add(1, AtomicOrdering::Relaxed) + 1;
        if used > self.limit {
            return Err(Error::Resource { budget: self.limit });
        }
        Ok(())
    }
}

pub struct Engine {
    budget: Budget,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(DEFAULT_STEP_BUDGET)
    }
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Engine {{ budget: {}, used: {} }}", self.budget.limit, self.steps_used())
    }
}

fn from_gpoly<F: Field>(nvars: usize, g: &GPoly<F>) -> Polynomial<F> {
    Polynomial::from_terms(nvars, g.terms.iter().cloned())
}

fn shift_up<F: Field>(p: &Polynomial<F>, by: usize) -> Polynomial<F> {
    let n = p.nvars();
    let map: Vec<usize> = (0..n).map(|i| i + by).collect();
    p.embed(n + by, &map)
}

/// Drop the first `by` variables, which must not occur.
fn shift_down<F: Field>(p: &Polynomial<F>, by: usize) -> Polynomial<F> {
    let n = p.nvars() - by;
    Polynomial::from_terms(
        n,
        p.terms().iter().map(|(m, c)| {
            debug_assert!(m.exps()[..by].iter().all(|e| *e == 0));
            (Monomial::new(&m.exps()[by..]), c.clone())
        }),
    )
}

impl Engine {
    pub fn new(step_budget: u64) -> Self {
        Engine { budget: Budget { limit: step_budget, used: AtomicU64::new(0) } }
    }

    pub fn step_budget(&self) -> u64 {
        self.budget.limit
    }

    pub fn steps_used(&self) -> u64 {
        self.budget.used.load(AtomicOrdering::Relaxed)
    }

    /// Reduced Gröbner basis in `order`, monic, ascending by leading monomial.
    pub fn groebner_basis<F: Field>(&self, gens: &[Polynomial<F>], order: MonomialOrder) -> Result<Vec<Polynomial<F>>> {
        let Some(n) = gens.first().map(|p| p.nvars()) else { return Ok(Vec::new()) };
        if gens.iter().any(|p| p.nvars() != n) {
            return Err(Error::Context("generators live in different rings".into()));
        }
        if gens.iter().all(|p| p.is_zero()) {
            return Ok(Vec::new());
        }
        let b = groebner(gens, order, &self.budget)?;
        Ok(b.iter().map(|g| from_gpoly(n, g)).collect())
    }

    /// The cached grevlex basis of `ideal`, computing it on first use.
    pub fn basis<'a, F: Field>(&self, ideal: &'a Ideal<F>) -> Result<&'a [Polynomial<F>]> {
        if let Some(b) = ideal.cached_basis() {
            return Ok(b);
        }
        let b = self.groebner_basis(ideal.generators(), MonomialOrder::GrevLex)?;
        Ok(ideal.set_basis(b))
    }

    /// Normal form of `f` with respect to a basis in `order`.
    pub fn normal_form<F: Field>(&self, f: &Polynomial<F>, basis: &[Polynomial<F>], order: MonomialOrder) -> Result<Polynomial<F>> {
        let gs: Vec<GPoly<F>> = basis
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| {
                let mut t = to_order(p, order);
                let inv = t[0].1.inv();
                for (_, c) in t.iter_mut() {
                    *c = c.clone() * &inv;
                }
                GPoly { mask: t[0].0.support_mask(), terms: t, sugar: 0 }
            })
            .collect();
        let refs: Vec<&GPoly<F>> = gs.iter().collect();
        let r = reduce(to_order(f, order), &refs, order, &self.budget)?;
        Ok(Polynomial::from_terms(f.nvars(), r))
    }

    pub fn member<F: Field>(&self, f: &Polynomial<F>, ideal: &Ideal<F>) -> Result<bool> {
        if f.nvars() != ideal.nvars() {
            return Err(Error::Context("member: polynomial and ideal live in different rings".into()));
        }
        if f.is_zero() {
            return Ok(true);
        }
        let b = self.basis(ideal)?;
        Ok(self.normal_form(f, b, MonomialOrder::GrevLex)?.is_zero())
    }

    /// `small ⊆ big`.
    pub fn contains<F: Field>(&self, big: &Ideal<F>, small: &Ideal<F>) -> Result<bool> {
        for g in small.generators() {
            if !self.member(g, big)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn ideal_equal<F: Field>(&self, a: &Ideal<F>, b: &Ideal<F>) -> Result<bool> {
        Ok(self.contains(a, b)? && self.contains(b, a)?)
    }

    pub fn is_unit<F: Field>(&self, ideal: &Ideal<F>) -> Result<bool> {
        let b = self.basis(ideal)?;
        Ok(b.iter().any(|p| p.is_constant() && !p.is_zero()))
    }

    /// `I ∩ J` as the `t`-free part of `t·I + (1−t)·J`.
    pub fn intersect<F: Field>(&self, a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
        let n = a.nvars();
        if b.nvars() != n {
            return Err(Error::Context("intersect: ideals live in different rings".into()));
        }
        if a.is_zero() || b.is_zero() {
            return Ok(Ideal::zero(n));
        }
        if self.is_unit(a)? {
            return Ok(b.clone());
        }
        if self.is_unit(b)? {
            return Ok(a.clone());
        }
        let t = Polynomial::<F>::var(n + 1, 0);
        let one_minus_t = &Polynomial::one(n + 1) - &t;
        let mut gens = Vec::new();
        for f in self.basis(a)? {
            gens.push(&t * &shift_up(f, 1));
        }
        for g in self.basis(b)? {
            gens.push(&one_minus_t * &shift_up(g, 1));
        }
        let basis = self.groebner_basis(&gens, MonomialOrder::Block { split: 1 })?;
        // restricted to t-free elements, the block order is grevlex, so these
        // already form the reduced grevlex basis of the intersection
        let kept: Vec<Polynomial<F>> = basis.iter().filter(|p| p.terms().iter().all(|(m, _)| m.exp(0) == 0)).map(|p| shift_down(p, 1)).collect();
        Ok(Ideal::with_basis(n, kept))
    }

    /// `(I : f)` computed as `(I ∩ ⟨f⟩) / f`.
    pub fn quotient_by<F: Field>(&self, ideal: &Ideal<F>, f: &Polynomial<F>) -> Result<Ideal<F>> {
        let n = ideal.nvars();
        if f.is_zero() {
            return Err(Error::Argument("quotient by the zero polynomial".into()));
        }
        if self.member(f, ideal)? {
            return Ok(Ideal::unit(n));
        }
        let principal = Ideal::with_basis(n, vec![f.monic()]);
        let cap = self.intersect(ideal, &principal)?;
        let mut gens = Vec::with_capacity(cap.generators().len());
        for g in cap.generators() {
            let q = g.div_exact(f).ok_or_else(|| Error::Argument("intersection generator not divisible by f".into()))?;
            gens.push(q);
        }
        Ok(Ideal::new(n, gens))
    }

    /// `(I : J) = ⋂_f (I : f)` over the generators of `J`.
    pub fn quotient<F: Field>(&self, ideal: &Ideal<F>, by: &Ideal<F>) -> Result<Ideal<F>> {
        if by.nvars() != ideal.nvars() {
            return Err(Error::Context("quotient: ideals live in different rings".into()));
        }
        let gens: Vec<&Polynomial<F>> = by.generators().iter().filter(|p| !p.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::Argument("quotient by the zero ideal".into()));
        }
        let mut acc: Option<Ideal<F>> = None;
        for f in gens {
            let q = self.quotient_by(ideal, f)?;
            acc = Some(match acc {
                None => q,
                Some(a) => self.intersect(&a, &q)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// `(I : J^∞)` by iterating the quotient until it stabilizes.
    pub fn saturate<F: Field>(&self, ideal: &Ideal<F>, by: &Ideal<F>) -> Result<Ideal<F>> {
        let mut cur = ideal.clone();
        loop {
            let next = self.quotient(&cur, by)?;
            if self.ideal_equal(&cur, &next)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `(I : J^∞) = ⋂_f elim_t(I + ⟨1 − t·f⟩)`: an independent route kept for
    /// cross-checking [`Engine::saturate`].
    pub fn saturate_rabinowitsch<F: Field>(&self, ideal: &Ideal<F>, by: &Ideal<F>) -> Result<Ideal<F>> {
        let n = ideal.nvars();
        let gens: Vec<&Polynomial<F>> = by.generators().iter().filter(|p| !p.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::Argument("saturation by the zero ideal".into()));
        }
        let mut acc: Option<Ideal<F>> = None;
        for f in gens {
            let t = Polynomial::<F>::var(n + 1, 0);
            let mut ext: Vec<Polynomial<F>> = ideal.generators().iter().map(|g| shift_up(g, 1)).collect();
            ext.push(&Polynomial::one(n + 1) - &(&t * &shift_up(f, 1)));
            let basis = self.groebner_basis(&ext, MonomialOrder::Block { split: 1 })?;
            let kept: Vec<Polynomial<F>> = basis.iter().filter(|p| p.terms().iter().all(|(m, _)| m.exp(0) == 0)).map(|p| shift_down(p, 1)).collect();
            let s = Ideal::with_basis(n, kept);
            acc = Some(match acc {
                None => s,
                Some(a) => self.intersect(&a, &s)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// `I ∩ k[keep]`, returned in the original ring.
    pub fn eliminate<F: Field>(&self, ideal: &Ideal<F>, keep: &[usize]) -> Result<Ideal<F>> {
        let n = ideal.nvars();
        if keep.is_empty() {
            return Err(Error::Argument("eliminate: keep set is empty".into()));
        }
        if keep.iter().any(|&k| k >= n) {
            return Err(Error::Argument("eliminate: variable index out of range".into()));
        }
        let elim: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        if elim.is_empty() {
            return Ok(ideal.clone());
        }
        let mut kept_sorted: Vec<usize> = keep.to_vec();
        kept_sorted.sort_unstable();
        kept_sorted.dedup();
        // new position of each old variable: eliminated block first
        let mut map = vec![0; n];
        for (pos, &v) in elim.iter().chain(kept_sorted.iter()).enumerate() {
            map[v] = pos;
        }
        let mut inverse = vec![0; n];
        for (old, &new) in map.iter().enumerate() {
            inverse[new] = old;
        }
        let gens: Vec<Polynomial<F>> = ideal.generators().iter().map(|g| g.embed(n, &map)).collect();
        let basis = self.groebner_basis(&gens, MonomialOrder::Block { split: elim.len() })?;
        let kept: Vec<Polynomial<F>> = basis
            .iter()
            .filter(|p| p.terms().iter().all(|(m, _)| m.exps()[..elim.len()].iter().all(|e| *e == 0)))
            .map(|p| p.embed(n, &inverse))
            .collect();
        Ok(Ideal::new(n, kept))
    }

    /// Whether some power of `f` lies in `I`: `1 ∈ I + ⟨1 − t·f⟩`.
    pub fn radical_member<F: Field>(&self, f: &Polynomial<F>, ideal: &Ideal<F>) -> Result<bool> {
        let n = ideal.nvars();
        if f.nvars() != n {
            return Err(Error::Context("radical_member: polynomial and ideal live in different rings".into()));
        }
        if f.is_zero() {
            return Ok(true);
        }
        let t = Polynomial::<F>::var(n + 1, 0);
        let mut ext: Vec<Polynomial<F>> = ideal.generators().iter().map(|g| shift_up(g, 1)).collect();
        ext.push(&Polynomial::one(n + 1) - &(&t * &shift_up(f, 1)));
        let b = self.groebner_basis(&ext, MonomialOrder::GrevLex)?;
        Ok(b.iter().any(|p| p.is_constant() && !p.is_zero()))
    }

    /// Krull dimension of the affine vanishing set, from maximal independent
    /// sets of the leading-term ideal; `⟨1⟩` has dimension −1.
    pub fn dimension<F: Field>(&self, ideal: &Ideal<F>) -> Result<i64> {
        let n = ideal.nvars();
        let b = self.basis(ideal)?;
        if b.iter().any(|p| p.is_constant() && !p.is_zero()) {
            return Ok(-1);
        }
        let supports: Vec<u64> = b.iter().map(|p| p.leading_term().unwrap().0.support_mask()).collect();
        assert!(n <= 63, "dimension: too many variables");
        let mut best = 0;
        for s in 0u64..(1u64 << n) {
            let size = s.count_ones();
            if size as i64 <= best {
                continue;
            }
            // independent: no leading monomial supported inside s
            if supports.iter().all(|&m| m & !s != 0) {
                best = size as i64;
            }
        }
        Ok(best)
    }

    pub fn codimension<F: Field>(&self, ideal: &Ideal<F>) -> Result<i64> {
        Ok(ideal.nvars() as i64 - self.dimension(ideal)?)
    }

    /// Test whether a basis is Gröbner: every S-polynomial reduces to zero.
    pub fn is_groebner<F: Field>(&self, basis: &[Polynomial<F>], order: MonomialOrder) -> Result<bool> {
        let gs: Vec<GPoly<F>> = basis
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| {
                let mut t = to_order(p, order);
                let inv = t[0].1.inv();
                for (_, c) in t.iter_mut() {
                    *c = c.clone() * &inv;
                }
                GPoly { mask: t[0].0.support_mask(), terms: t, sugar: 0 }
            })
            .collect();
        let refs: Vec<&GPoly<F>> = gs.iter().collect();
        for i in 0..gs.len() {
            for j in i + 1..gs.len() {
                let l = gs[i].lm().lcm(gs[j].lm());
                let mi = gs[i].lm().quotient_of(&l);
                let mj = gs[j].lm().quotient_of(&l);
                let a: Vec<_> = gs[i].terms.iter().map(|(m, c)| (m.mul(&mi), c.clone())).collect();
                let b: Vec<_> = gs[j].terms.iter().map(|(m, c)| (m.mul(&mj), c.clone())).collect();
                let pa = Polynomial::from_terms(basis[0].nvars(), a);
                let pb = Polynomial::from_terms(basis[0].nvars(), b);
                let s = &pa - &pb;
                let r = reduce(to_order(&s, order), &refs, order, &self.budget)?;
                if !r.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Containment of `I` in the monomial prime generated by `vars`: every
/// monomial of every generator must involve one of them.
pub fn in_monomial_prime<F: Field>(ideal: &Ideal<F>, vars: &[usize]) -> bool {
    let mask = vars.iter().fold(0u64, |m, &v| m | (1 << v));
    ideal.generators().iter().all(|g| g.terms().iter().all(|(m, _)| m.support_mask() & mask != 0))
}

/// The monomial prime `⟨z_v : v ∈ vars⟩`.
pub fn monomial_prime<F: Field>(nvars: usize, vars: &[usize]) -> Ideal<F> {
    Ideal::new(nvars, vars.iter().map(|&v| Polynomial::var(nvars, v)).collect())
}
