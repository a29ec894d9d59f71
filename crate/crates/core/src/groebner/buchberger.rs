//! Buchberger's algorithm with the Gebauer–Möller pair criteria. Pairs are
//! selected by sugar (the normal strategy under pure lex).

use std::cmp::Ordering;

use super::order::MonomialOrder;
use super::Budget;
use crate::error::Result;
use crate::field::Field;
use crate::poly::{Monomial, Polynomial};

pub(crate) type Terms<F> = Vec<(Monomial, F)>;

/// A basis element kept in the engine's order, monic.
#[derive(Clone)]
pub(crate) struct GPoly<F> {
    pub terms: Terms<F>,
    pub mask: u64,
    pub sugar: u32,
}

impl<F: Field> GPoly<F> {
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

pub(crate) fn to_order<F: Field>(p: &Polynomial<F>, order: MonomialOrder) -> Terms<F> {
    let mut t = p.terms().to_vec();
    if order != MonomialOrder::GrevLex {
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    }
    t
}

fn make_monic<F: Field>(t: &mut Terms<F>) {
    if let Some((_, lc)) = t.first() {
        let inv = lc.inv();
        for (_, c) in t.iter_mut() {
            *c = c.clone() * &inv;
        }
    }
}

/// `a − c·m·b`, both sorted descending in `order`.
fn sub_scaled<F: Field>(a: &[(Monomial, F)], b: &[(Monomial, F)], m: &Monomial, c: &F, order: MonomialOrder) -> Terms<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bm: Option<Monomial> = b.first().map(|t| t.0.mul(m));
    while i < a.len() {
        let Some(cur) = bm.as_ref() else { break };
        match order.cmp(&a[i].0, cur) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm.take().unwrap(), -(b[j].1.clone() * c)));
                j += 1;
                bm = b.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let v = a[i].1.clone() - b[j].1.clone() * c;
                if !v.is_zero() {
                    out.push((a[i].0.clone(), v));
                }
                i += 1;
                j += 1;
                bm = b.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    if bm.is_some() {
        for t in &b[j..] {
            out.push((t.0.mul(m), -(t.1.clone() * c)));
        }
    }
    out
}

fn find_reducer<'a, F: Field>(m: &Monomial, reducers: &[&'a GPoly<F>]) -> Option<&'a GPoly<F>> {
    let mask = m.support_mask();
    reducers.iter().copied().find(|g| g.mask & !mask == 0 && g.lm().divides(m))
}

/// Full reduction (leading and tail terms) of `f` by monic `reducers`.
pub(crate) fn reduce<F: Field>(f: Terms<F>, reducers: &[&GPoly<F>], order: MonomialOrder, budget: &Budget) -> Result<Terms<F>> {
    let mut sugar = 0;
    reduce_tracking(f, reducers, order, budget, &mut sugar)
}

/// As [`reduce`], raising `sugar` to `sugar(g) + deg q` for every reduction
/// step by `q·g`, so that it stays an upper bound on the total degree.
fn reduce_tracking<F: Field>(f: Terms<F>, reducers: &[&GPoly<F>], order: MonomialOrder, budget: &Budget, sugar: &mut u32) -> Result<Terms<F>> {
    let mut rem: Terms<F> = Vec::new();
    let mut p = f;
    let mut start = 0;
    while start < p.len() {
        let (m, c) = &p[start];
        match find_reducer(m, reducers) {
            Some(g) => {
                budget.tick()?;
                let q = g.lm().quotient_of(m);
                *sugar = (*sugar).max(g.sugar + q.degree());
                let c = c.clone();
                // the leading terms cancel exactly; skip them
                p = sub_scaled(&p[start + 1..], &g.terms[1..], &q, &c, order);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    Ok(rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn s_polynomial<F: Field>(f: &GPoly<F>, g: &GPoly<F>, lcm: &Monomial, order: MonomialOrder) -> Terms<F> {
    let mf = f.lm().quotient_of(lcm);
    let mg = g.lm().quotient_of(lcm);
    let fa: Terms<F> = f.terms[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    sub_scaled(&fa, &g.terms[1..], &mg, &F::one(), order)
}

/// Reduced Gröbner basis of the nonzero polynomials in `gens`, sorted by
/// ascending leading monomial.
pub(crate) fn groebner<F: Field>(gens: &[Polynomial<F>], order: MonomialOrder, budget: &Budget) -> Result<Vec<GPoly<F>>> {
    let mut input: Vec<(Terms<F>, u32)> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| (to_order(p, order), p.total_degree().unwrap_or(0)))
        .collect();
    if input.iter().any(|(t, _)| t.len() == 1 && t[0].0.is_one()) {
        let one = Monomial::one(gens[0].nvars());
        return Ok(vec![GPoly { terms: vec![(one, F::one())], mask: 0, sugar: 0 }]);
    }
    // process small leading monomials first: fewer redundant pairs
    input.sort_by(|a, b| order.cmp(&a.0[0].0, &b.0[0].0).then(a.0.len().cmp(&b.0.len())));

    let mut g: Vec<GPoly<F>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let add = |mut t: Terms<F>, sugar: u32, g: &mut Vec<GPoly<F>>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>| {
        make_monic(&mut t);
        let h = GPoly { mask: t[0].0.support_mask(), terms: t, sugar };
        let hi = g.len();
        update(g, active, pairs, &h, hi);
        g.push(h);
        active.push(true);
    };

    for (t, mut sugar) in input {
        let reducers: Vec<&GPoly<F>> = g.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let r = reduce_tracking(t, &reducers, order, budget, &mut sugar)?;
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            let one = r[0].0.clone();
            return Ok(vec![GPoly { terms: vec![(one, F::one())], mask: 0, sugar: 0 }]);
        }
        add(r, sugar, &mut g, &mut active, &mut pairs);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                let by_sugar = p.sugar.cmp(&q.sugar);
                let by_lcm = order.cmp(&p.lcm, &q.lcm);
                // pure lex does far better with the normal strategy; the
                // degree-compatible and block orders with sugar first
                let key = if order == MonomialOrder::Lex { by_lcm.then(by_sugar) } else { by_sugar.then(by_lcm) };
                key.then((p.i, p.j).cmp(&(q.i, q.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        budget.tick()?;
        let s = s_polynomial(&g[pair.i], &g[pair.j], &pair.lcm, order);
        let reducers: Vec<&GPoly<F>> = g.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let mut sugar = pair.sugar;
        let r = reduce_tracking(s, &reducers, order, budget, &mut sugar)?;
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            let one = r[0].0.clone();
            return Ok(vec![GPoly { terms: vec![(one, F::one())], mask: 0, sugar: 0 }]);
        }
        add(r, sugar, &mut g, &mut active, &mut pairs);
    }

    // the active set is minimal by construction; inter-reduce the tails
    let mut basis: Vec<GPoly<F>> = g.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for k in 0..basis.len() {
        let others: Vec<&GPoly<F>> = basis.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p).collect();
        let head = basis[k].terms[0].clone();
        let tail = reduce(basis[k].terms[1..].to_vec(), &others, order, budget)?;
        let mut t = vec![head];
        t.extend(tail);
        basis[k].terms = t;
    }
    Ok(basis)
}

/// Gebauer–Möller update for a new element `h` with index `hi`.
fn update<F: Field>(g: &[GPoly<F>], active: &mut [bool], pairs: &mut Vec<Pair>, h: &GPoly<F>, hi: usize) {
    let hlm = h.lm();
    let cand: Vec<(usize, Monomial, bool)> = (0..g.len())
        .filter(|&i| active[i])
        .map(|i| (i, g[i].lm().lcm(hlm), g[i].lm().gcd_is_one(hlm)))
        .collect();

    // chain criterion among the new pairs: drop (i,h) if another new pair's lcm
    // properly divides its lcm; among equal lcms keep one, preferring a coprime
    // representative so the product criterion can discard the whole class
    let mut keep: Vec<(usize, Monomial, bool)> = Vec::new();
    for (idx, (i, l, coprime)) in cand.iter().enumerate() {
        let dominated = cand.iter().enumerate().any(|(jdx, (_, l2, c2))| {
            if jdx == idx || !l2.divides(l) {
                return false;
            }
            if l2 != l {
                return true;
            }
            // equal lcm: keep the first coprime one, else the first one
            (*c2 && !*coprime) || (*c2 == *coprime && jdx < idx)
        });
        if !dominated {
            keep.push((*i, l.clone(), *coprime));
        }
    }

    // old pairs whose lcm is strictly divisible by lm(h) through both sides
    pairs.retain(|p| {
        !(hlm.divides(&p.lcm) && g[p.i].lm().lcm(hlm) != p.lcm && g[p.j].lm().lcm(hlm) != p.lcm)
    });

    for (i, l, coprime) in keep {
        if coprime {
            continue;
        }
        let sugar = (g[i].sugar + g[i].lm().quotient_of(&l).degree()).max(h.sugar + hlm.quotient_of(&l).degree());
        pairs.push(Pair { i, j: hi, lcm: l, sugar });
    }

    for i in 0..g.len() {
        if active[i] && hlm.divides(g[i].lm()) {
            active[i] = false;
        }
    }
}
