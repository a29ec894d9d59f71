//! Simplicial complete fans and the data attached to them: class groups,
//! gradings of the Cox ring, radial vector fields, volume forms, the
//! irrelevant ideal, de-torsion, and the lifting step for rational maps.

mod fields;
mod grading;
mod intmat;
mod lifting;

pub use fields::{plucker_holds, radial_fields, volume_coefficients, volume_form, VectorField};
pub use grading::{class_group, class_group_with_basis, DegreeVector, GradingData};
pub use intmat::{hermite_normal_form, smith_normal_form, IntMatrix, SmithForm};
pub use lifting::{admissible, completeness_step, detorsion};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::{QIdeal, QPoly, Rational};

/// A simplicial fan given by its rays and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
    surface_order: Option<Vec<usize>>,
}

impl Fan {
    /// Validate and build a fan. Rays must be primitive.
    pub fn new(rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        for (i, v) in rays.iter().enumerate() {
            let g = v.iter().fold(0i64, |g, x| g.gcd(x));
            if g != 1 {
                return Err(Error::Fan(format!("ray {i} = {v:?} is not primitive")));
            }
        }
        Self::from_generators(rays, max_cones)
    }

    /// Like [`Fan::new`] but accepts non-primitive generators. Fake weighted
    /// projective spaces are naturally presented this way: the generators
    /// are what the Smith-form recipe produces, and their non-primitivity is
    /// exactly where the torsion lives.
    pub fn from_generators(rays: Vec<Vec<i64>>, mut max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        let m = rays.len();
        let q = rays.first().map(|r| r.len()).ok_or_else(|| Error::Fan("no rays".into()))?;
        if q == 0 {
            return Err(Error::Fan("rays live in a zero-dimensional lattice".into()));
        }
        if let Some((i, _)) = rays.iter().enumerate().find(|(_, r)| r.len() != q) {
            return Err(Error::Fan(format!("ray {i} has the wrong length (expected {q})")));
        }
        if let Some((i, _)) = rays.iter().enumerate().find(|(_, r)| r.iter().all(|x| *x == 0)) {
            return Err(Error::Fan(format!("ray {i} is zero")));
        }
        if rank(&rays) != q {
            return Err(Error::Fan("rays do not span the ambient space".into()));
        }
        for (c, cone) in max_cones.iter_mut().enumerate() {
            cone.sort_unstable();
            cone.dedup();
            if cone.len() != q {
                return Err(Error::Fan(format!("cone {c} has {} rays; a simplicial maximal cone needs {q}", cone.len())));
            }
            if let Some(i) = cone.iter().find(|&&i| i >= m) {
                return Err(Error::Fan(format!("cone {c} refers to missing ray {i}")));
            }
            let sub: Vec<Vec<i64>> = cone.iter().map(|&i| rays[i].clone()).collect();
            if IntMatrix::from_rows(&sub).determinant() == 0 {
                return Err(Error::Fan(format!("cone {c} has linearly dependent rays")));
            }
        }
        if let Some(i) = (0..m).find(|i| !max_cones.iter().any(|c| c.contains(i))) {
            return Err(Error::Fan(format!("ray {i} lies in no maximal cone")));
        }
        let surface_order = match q {
            1 => {
                if m != 2 || rays[0][0].signum() == rays[1][0].signum() || max_cones.len() != 2 {
                    return Err(Error::Fan("a complete one-dimensional fan has one positive and one negative ray".into()));
                }
                None
            }
            2 => Some(check_surface(&rays, &max_cones)?),
            _ => {
                check_pseudomanifold(q, &max_cones)?;
                None
            }
        };
        Ok(Fan { rays, max_cones, surface_order })
    }

    /// Weighted projective space ℙ(a₀,…,a_n): rays are the images of the
    /// basis vectors in `ℤ^{n+1}/ℤ·a`, all proper subsets of size `n` are
    /// cones.
    pub fn weighted_projective(weights: &[i64]) -> Result<Fan> {
        let n = weights.len().checked_sub(1).filter(|n| *n >= 1).ok_or_else(|| Error::Fan("need at least two weights".into()))?;
        if weights.iter().any(|w| *w <= 0) {
            return Err(Error::Fan("weights must be positive".into()));
        }
        if weights.iter().fold(0i64, |g, w| g.gcd(w)) != 1 {
            return Err(Error::Fan("weights must have gcd 1".into()));
        }
        let col = IntMatrix::from_rows(&weights.iter().map(|w| vec![*w]).collect::<Vec<_>>());
        let s = smith_normal_form(&col);
        // rows 1..=n of L are a ℤ-basis of the dual of ℤ^{n+1}/ℤ·a; their
        // columns are the rays
        let rays: Vec<Vec<i64>> = (0..=n).map(|i| (1..=n).map(|r| s.l[(r, i)]).collect()).collect();
        let cones: Vec<Vec<usize>> = (0..=n).map(|skip| (0..=n).filter(|j| *j != skip).collect()).collect();
        Fan::new(rays, cones)
    }

    /// The fan with generators `V = L⁻¹·D·R⁻¹`, where `D` is the `m × q`
    /// diagonal matrix built from `diag`; this is how fake weighted
    /// projective spaces with prescribed torsion are presented.
    pub fn from_smith_data(l_inv: &IntMatrix, diag: &[i64], r_inv: &IntMatrix, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        let (m, q) = (l_inv.nrows(), r_inv.nrows());
        if diag.len() != q || l_inv.ncols() != m || r_inv.ncols() != q || m < q {
            return Err(Error::Fan("inconsistent Smith data shapes".into()));
        }
        if l_inv.determinant().abs() != 1 || r_inv.determinant().abs() != 1 {
            return Err(Error::Fan("Smith data must use unimodular matrices".into()));
        }
        let mut d = IntMatrix::zeros(m, q);
        for (i, x) in diag.iter().enumerate() {
            d[(i, i)] = *x;
        }
        let v = l_inv.mul(&d).mul(r_inv);
        Fan::from_generators(v.to_rows(), max_cones)
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn nrays(&self) -> usize {
        self.rays.len()
    }

    pub fn dim(&self) -> usize {
        self.rays[0].len()
    }

    /// Counter-clockwise ray order starting at ray 0 (surfaces only).
    pub fn surface_order(&self) -> Option<&[usize]> {
        self.surface_order.as_deref()
    }

    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.rays)
    }

    /// Pairs `(i, j)`, `i < j`, of rays that are not adjacent in the
    /// cyclic order. Their loci `Z_ij = {z_i = z_j = 0}` make up the
    /// irrelevant locus of a surface with more than three rays.
    pub fn non_consecutive_pairs(&self) -> Vec<(usize, usize)> {
        let Some(order) = &self.surface_order else { return Vec::new() };
        let m = order.len();
        if m <= 3 {
            return Vec::new();
        }
        let mut pos = vec![0; m];
        for (p, &r) in order.iter().enumerate() {
            pos[r] = p;
        }
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let d = (pos[i] as i64 - pos[j] as i64).rem_euclid(m as i64);
                if d != 1 && d != m as i64 - 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// One generator `ẑ_σ = ∏_{i∉σ} z_i` per maximal cone.
    pub fn irrelevant_ideal(&self) -> QIdeal {
        let m = self.nrays();
        let gens = self
            .max_cones
            .iter()
            .map(|cone| {
                let exps: Vec<u32> = (0..m).map(|i| u32::from(!cone.contains(&i))).collect();
                QPoly::term(crate::poly::Monomial::new(&exps), Rational::from_integer(1.into()))
            })
            .collect();
        QIdeal::new(m, gens)
    }

    /// Coordinates of `w` on the rays of a maximal cone containing it, or
    /// `None` if no cone does (only possible for incomplete fans).
    pub fn cone_containing(&self, w: &[Rational]) -> Option<(usize, Vec<Rational>)> {
        let q = self.dim();
        for (c, cone) in self.max_cones.iter().enumerate() {
            // unknowns λ_j, equations Σ λ_j v_j[r] = w[r]
            let rows: Vec<Vec<Rational>> = (0..q).map(|r| cone.iter().map(|&j| Rational::from_integer(self.rays[j][r].into())).collect()).collect();
            let Some(lambda) = linalg::solve(q, &linalg::dense_rows(&rows), w) else { continue };
            if lambda.iter().all(|x| !x.is_negative()) {
                return Some((c, lambda));
            }
        }
        None
    }

    /// A relation `Σ c_i v_i = 0` with every `c_i > 0`, assembled from the
    /// cones containing each `−v_k`. It bounds the graded pieces of the Cox
    /// ring.
    pub fn positive_relation(&self) -> Result<Vec<i64>> {
        let m = self.nrays();
        let mut c = vec![0i64; m];
        for k in 0..m {
            let w: Vec<Rational> = self.rays[k].iter().map(|x| Rational::from_integer((-x).into())).collect();
            let (cone, lambda) = self.cone_containing(&w).ok_or_else(|| Error::Fan(format!("the fan is not complete: −v{k} lies in no cone")))?;
            let den = lambda.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
            let den: i64 = i64::try_from(den).map_err(|_| Error::Fan("relation overflow".into()))?;
            c[k] += den;
            for (j, x) in self.max_cones[cone].iter().zip(&lambda) {
                let v = (x * Rational::from_integer(den.into())).to_integer();
                c[*j] += i64::try_from(v).map_err(|_| Error::Fan("relation overflow".into()))?;
            }
        }
        let g = c.iter().fold(0i64, |g, x| g.gcd(x));
        Ok(c.into_iter().map(|x| x / g).collect())
    }
}

fn rank(rows: &[Vec<i64>]) -> usize {
    let r: Vec<Vec<Rational>> = rows.iter().map(|v| v.iter().map(|x| Rational::from_integer((*x).into())).collect()).collect();
    linalg::rank_of(&r)
}

/// Angular comparison helper: half-plane index, then cross product.
fn half(v: &[i64]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

fn cross(a: &[i64], b: &[i64]) -> i128 {
    a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128
}

/// Checks that the cones are exactly the consecutive pairs of a
/// counter-clockwise ordering and that each is strictly convex; returns the
/// ordering rotated to start at ray 0.
fn check_surface(rays: &[Vec<i64>], cones: &[Vec<usize>]) -> Result<Vec<usize>> {
    let m = rays.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        let (va, vb) = (&rays[a], &rays[b]);
        half(va).cmp(&half(vb)).then_with(|| 0.cmp(&cross(va, vb)))
    });
    for w in order.windows(2) {
        if half(&rays[w[0]]) == half(&rays[w[1]]) && cross(&rays[w[0]], &rays[w[1]]) == 0 {
            return Err(Error::Fan(format!("rays {} and {} point in the same direction", w[0], w[1])));
        }
    }
    let start = order.iter().position(|&r| r == 0).unwrap();
    order.rotate_left(start);
    if cones.len() != m {
        return Err(Error::Fan(format!("a complete surface fan with {m} rays has {m} maximal cones, got {}", cones.len())));
    }
    for k in 0..m {
        let (a, b) = (order[k], order[(k + 1) % m]);
        if cross(&rays[a], &rays[b]) <= 0 {
            return Err(Error::Fan(format!("rays {a} and {b} are consecutive but span an angle of at least π; the fan is not complete")));
        }
        let mut pair = vec![a, b];
        pair.sort_unstable();
        if !cones.contains(&pair) {
            return Err(Error::Fan(format!("consecutive rays {a}, {b} do not span a maximal cone")));
        }
    }
    Ok(order)
}

/// Necessary condition for completeness in dimension ≥ 3: every facet of a
/// maximal cone is shared by exactly two maximal cones.
fn check_pseudomanifold(q: usize, cones: &[Vec<usize>]) -> Result<()> {
    let mut facets: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
    for cone in cones {
        for skip in 0..q {
            let f: Vec<usize> = cone.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, r)| *r).collect();
            *facets.entry(f).or_default() += 1;
        }
    }
    if let Some((f, n)) = facets.iter().find(|(_, n)| **n != 2) {
        return Err(Error::Fan(format!("facet {f:?} lies in {n} maximal cones; a complete fan needs exactly 2")));
    }
    Ok(())
}

pub(crate) fn is_nonneg_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_negative()
}

pub(crate) fn rational(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

pub(crate) fn is_zero_vec(v: &[i64]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests;
