use std::fmt;

use num_integer::Integer;

use super::intmat::{hermite_normal_form, smith_normal_form};
use super::{is_nonneg_integer, is_zero_vec, rational, Fan};
use crate::error::{Error, Result};
use crate::poly::Monomial;
use crate::{linalg, QPoly, Rational};

/// An element of `ℤ^s × ∏ ℤ_{o_k}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DegreeVector {
    pub free: Vec<i64>,
    /// Residues in `[0, o_k)`.
    pub torsion: Vec<i64>,
    orders: Vec<i64>,
}

impl DegreeVector {
    pub fn new(free: Vec<i64>, torsion: Vec<i64>, orders: &[i64]) -> Self {
        assert_eq!(torsion.len(), orders.len(), "torsion length must match the torsion orders");
        let torsion = torsion.iter().zip(orders).map(|(t, o)| t.rem_euclid(*o)).collect();
        DegreeVector { free, torsion, orders: orders.to_vec() }
    }

    pub fn zero(free_rank: usize, orders: &[i64]) -> Self {
        DegreeVector { free: vec![0; free_rank], torsion: vec![0; orders.len()], orders: orders.to_vec() }
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.free) && is_zero_vec(&self.torsion)
    }

    pub fn add(&self, o: &DegreeVector) -> DegreeVector {
        debug_assert_eq!(self.orders, o.orders);
        let free = self.free.iter().zip(&o.free).map(|(a, b)| a + b).collect();
        let torsion = self.torsion.iter().zip(&o.torsion).map(|(a, b)| a + b).collect();
        DegreeVector::new(free, torsion, &self.orders)
    }

    pub fn neg(&self) -> DegreeVector {
        DegreeVector::new(self.free.iter().map(|a| -a).collect(), self.torsion.iter().map(|a| -a).collect(), &self.orders)
    }

    pub fn sub(&self, o: &DegreeVector) -> DegreeVector {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> DegreeVector {
        DegreeVector::new(self.free.iter().map(|a| a * k).collect(), self.torsion.iter().map(|a| a * k).collect(), &self.orders)
    }

    /// All components, free part first.
    pub fn components(&self) -> Vec<i64> {
        self.free.iter().chain(&self.torsion).copied().collect()
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components().iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The grading of the Cox ring by `Cl(X) ≅ ℤ^s × H`.
///
/// The isomorphism is fixed as follows: the free coordinates of a divisor
/// `x ∈ ℤ^m` are `A·x`, where the rows of `A` are the relation basis; the
/// torsion coordinates are `t_k · x mod o_k` for the rows `t_k` of
/// `torsion_rows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingData {
    nvars: usize,
    dim: usize,
    relation_basis: Vec<Vec<i64>>,
    torsion_orders: Vec<i64>,
    torsion_rows: Vec<Vec<i64>>,
    degrees: Vec<DegreeVector>,
    positive_relation: Vec<i64>,
}

/// Class group of a simplicial complete fan, with the relation basis in
/// Hermite normal form.
pub fn class_group(fan: &Fan) -> Result<GradingData> {
    let (basis, torsion_orders, torsion_rows) = presentation(fan)?;
    build(fan, hermite_normal_form(&basis), torsion_orders, torsion_rows)
}

/// Class group with a caller-chosen relation basis, which must be a
/// ℤ-basis of the full relation lattice.
pub fn class_group_with_basis(fan: &Fan, basis: Vec<Vec<i64>>) -> Result<GradingData> {
    let (canonical, orders, rows) = presentation(fan)?;
    if basis.len() != canonical.len() || basis.iter().any(|r| r.len() != fan.nrays()) {
        return Err(Error::Lattice(format!("a relation basis needs {} vectors of length {}", canonical.len(), fan.nrays())));
    }
    if hermite_normal_form(&basis) != hermite_normal_form(&canonical) {
        return Err(Error::Lattice("the given vectors do not form a ℤ-basis of the relation lattice".into()));
    }
    build(fan, basis, orders, rows)
}

type Presentation = (Vec<Vec<i64>>, Vec<i64>, Vec<Vec<i64>>);

/// Relation lattice and torsion from the Smith form `L·V·R = D` of the ray
/// matrix: `x ↦ L·x` identifies `Cl(X)` with `⊕ ℤ/d_k ⊕ ℤ^{m−q}`.
fn presentation(fan: &Fan) -> Result<Presentation> {
    let v = fan.ray_matrix();
    let (m, q) = (v.nrows(), v.ncols());
    let snf = smith_normal_form(&v);
    if snf.rank() != q {
        return Err(Error::Fan("rays do not span the ambient space".into()));
    }
    let diag = snf.diagonal();
    let basis: Vec<Vec<i64>> = (q..m).map(|r| snf.l.row(r).to_vec()).collect();
    // split each ℤ/d into its primary parts
    let mut comps: Vec<(i64, i64, Vec<i64>)> = Vec::new();
    for (k, &d) in diag.iter().enumerate() {
        for (p, pe) in prime_powers(d) {
            comps.push((p, pe, snf.l.row(k).iter().map(|x| x.rem_euclid(pe)).collect()));
        }
    }
    comps.sort_by_key(|(p, pe, _)| (*p, *pe));
    let orders = comps.iter().map(|c| c.1).collect();
    let rows = comps
        .into_iter()
        .map(|(p, pe, row)| normalize_torsion_row(row, p, pe, &basis))
        .collect();
    Ok((basis, orders, rows))
}

fn prime_powers(mut d: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= d {
        if d % p == 0 {
            let mut pe = 1;
            while d % p == 0 {
                d /= p;
                pe *= p;
            }
            out.push((p, pe));
        }
        p += 1;
    }
    if d > 1 {
        out.push((d, d));
    }
    out
}

/// Canonical representative of a torsion coordinate `t` (mod `p^e`):
/// shearing `t ↦ t + Σ c_j a^j` by the free coordinates and rescaling by a
/// unit both give isomorphic presentations, so pick the one whose values on
/// the variables vanish most (ranked as a bitmask, last variable most
/// significant), then make the first nonzero value a power of `p`.
fn normalize_torsion_row(t: Vec<i64>, p: i64, pe: i64, basis: &[Vec<i64>]) -> Vec<i64> {
    let s = basis.len();
    let mut best = t.clone();
    let mut best_key = zero_mask(&t);
    let total = (pe as u64).checked_pow(s as u32).filter(|n| *n <= 100_000);
    if let Some(total) = total {
        for idx in 1..total {
            let mut c = idx;
            let mut cand = t.clone();
            for row in basis {
                let cj = (c % pe as u64) as i64;
                c /= pe as u64;
                for (x, a) in cand.iter_mut().zip(row) {
                    *x = (*x + cj * a).rem_euclid(pe);
                }
            }
            let key = zero_mask(&cand);
            if key > best_key {
                best_key = key;
                best = cand;
            }
        }
    }
    if let Some(&first) = best.iter().find(|x| **x != 0) {
        let mut val = 1;
        while first % (val * p) == 0 {
            val *= p;
        }
        let unit = first / val;
        // inverse of the unit modulo p^e
        let inv = mod_inverse(unit.rem_euclid(pe), pe);
        for x in best.iter_mut() {
            *x = (*x * inv).rem_euclid(pe);
        }
    }
    best
}

fn zero_mask(t: &[i64]) -> u64 {
    t.iter().enumerate().filter(|(_, x)| **x == 0).fold(0, |m, (i, _)| m | (1 << i))
}

fn mod_inverse(a: i64, n: i64) -> i64 {
    let e = a.extended_gcd(&n);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(n)
}

fn build(fan: &Fan, relation_basis: Vec<Vec<i64>>, torsion_orders: Vec<i64>, torsion_rows: Vec<Vec<i64>>) -> Result<GradingData> {
    let m = fan.nrays();
    let q = fan.dim();
    for (j, r) in relation_basis.iter().enumerate() {
        for c in 0..q {
            let s: i64 = r.iter().zip(fan.rays()).map(|(a, v)| a * v[c]).sum();
            if s != 0 {
                return Err(Error::Lattice(format!("relation {j} = {r:?} is not a relation among the rays")));
            }
        }
    }
    let degrees = (0..m)
        .map(|i| {
            DegreeVector::new(
                relation_basis.iter().map(|r| r[i]).collect(),
                torsion_rows.iter().map(|t| t[i]).collect(),
                &torsion_orders,
            )
        })
        .collect();
    let g = GradingData {
        nvars: m,
        dim: q,
        relation_basis,
        torsion_orders,
        torsion_rows,
        degrees,
        positive_relation: fan.positive_relation()?,
    };
    // principal divisors div(χ^u) = Σ ⟨u, v_i⟩ D_i must have degree zero
    for c in 0..q {
        let x: Vec<i64> = fan.rays().iter().map(|v| v[c]).collect();
        let d = g.divisor_degree(&x);
        if !d.is_zero() {
            return Err(Error::Lattice(format!("principal divisor of the {c}-th character has degree {d}")));
        }
    }
    Ok(g)
}

impl GradingData {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Dimension `q` of the toric variety.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn free_rank(&self) -> usize {
        self.relation_basis.len()
    }

    pub fn torsion_orders(&self) -> &[i64] {
        &self.torsion_orders
    }

    pub fn relation_basis(&self) -> &[Vec<i64>] {
        &self.relation_basis
    }

    /// `deg z_i` for every variable.
    pub fn degrees(&self) -> &[DegreeVector] {
        &self.degrees
    }

    pub fn var_degree(&self, i: usize) -> &DegreeVector {
        &self.degrees[i]
    }

    /// A relation with all entries positive.
    pub fn positive_relation(&self) -> &[i64] {
        &self.positive_relation
    }

    pub fn zero_degree(&self) -> DegreeVector {
        DegreeVector::zero(self.free_rank(), &self.torsion_orders)
    }

    pub fn degree(&self, free: Vec<i64>, torsion: Vec<i64>) -> Result<DegreeVector> {
        if free.len() != self.free_rank() || torsion.len() != self.torsion_orders.len() {
            return Err(Error::Degree(format!(
                "a degree has {} free and {} torsion components",
                self.free_rank(),
                self.torsion_orders.len()
            )));
        }
        Ok(DegreeVector::new(free, torsion, &self.torsion_orders))
    }

    /// Class of the divisor `Σ x_i D_i`.
    pub fn divisor_degree(&self, x: &[i64]) -> DegreeVector {
        let mut d = self.zero_degree();
        for (i, xi) in x.iter().enumerate() {
            if *xi != 0 {
                d = d.add(&self.degrees[i].scale(*xi));
            }
        }
        d
    }

    pub fn monomial_degree(&self, m: &Monomial) -> DegreeVector {
        let x: Vec<i64> = m.exps().iter().map(|e| *e as i64).collect();
        self.divisor_degree(&x)
    }

    /// `−K_X = Σ_i deg z_i`.
    pub fn anticanonical(&self) -> DegreeVector {
        self.divisor_degree(&vec![1; self.nvars])
    }

    /// The common degree of all monomials of `p`, or a homogeneity error
    /// naming two monomials that disagree.
    pub fn degree_of(&self, p: &QPoly) -> Result<DegreeVector> {
        self.check_ring(p)?;
        let mut terms = p.terms().iter();
        let (m0, _) = terms.next().ok_or_else(|| Error::Argument("the zero polynomial has no degree".into()))?;
        let d0 = self.monomial_degree(m0);
        for (m, _) in terms {
            if self.monomial_degree(m) != d0 {
                return Err(Error::Homogeneity { first: m0.to_string(), second: m.to_string() });
            }
        }
        Ok(d0)
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous(&self, p: &QPoly) -> bool {
        p.is_zero() || self.degree_of(p).is_ok()
    }

    /// Whether `p` is zero or homogeneous of degree `d`.
    pub fn has_degree(&self, p: &QPoly, d: &DegreeVector) -> bool {
        p.is_zero() || self.degree_of(p).map(|e| &e == d).unwrap_or(false)
    }

    fn check_ring(&self, p: &QPoly) -> Result<()> {
        if p.nvars() != self.nvars {
            return Err(Error::Context(format!("polynomial in {} variables, grading on {}", p.nvars(), self.nvars)));
        }
        Ok(())
    }

    /// Every monomial of degree `d`, descending in grevlex.
    ///
    /// Writing the positive relation as `c = wᵀA` over ℚ, every exponent
    /// vector `ν` of degree `d` satisfies `c·ν = w·d_free`, which bounds the
    /// search.
    pub fn monomials_of_degree(&self, d: &DegreeVector) -> Vec<Monomial> {
        let m = self.nvars;
        let s = self.free_rank();
        let c = &self.positive_relation;
        let rows: Vec<Vec<Rational>> = (0..m).map(|i| self.relation_basis.iter().map(|r| rational(r[i])).collect()).collect();
        let rhs: Vec<Rational> = c.iter().map(|x| rational(*x)).collect();
        let w = linalg::solve(s, &linalg::dense_rows(&rows), &rhs).expect("the positive relation lies in the relation lattice");
        let bound: Rational = w.iter().zip(&d.free).map(|(a, b)| a * rational(*b)).sum();
        if !is_nonneg_integer(&bound) {
            return Vec::new();
        }
        let bound = i64::try_from(bound.to_integer()).expect("degree bound fits in i64");
        let mut out = Vec::new();
        let mut exps = vec![0u32; m];
        enumerate(c, 0, bound, &mut exps, &mut |e| {
            let mono = Monomial::new(e);
            if &self.monomial_degree(&mono) == d {
                out.push(mono);
            }
        });
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

fn enumerate(c: &[i64], i: usize, rest: i64, exps: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if i + 1 == c.len() {
        if rest % c[i] == 0 {
            exps[i] = (rest / c[i]) as u32;
            f(exps);
        }
        return;
    }
    let mut k = 0;
    while k * c[i] <= rest {
        exps[i] = k as u32;
        enumerate(c, i + 1, rest - k * c[i], exps, f);
        k += 1;
    }
    exps[i] = 0;
}
