use num_integer::Integer;

use super::intmat::{smith_normal_form, IntMatrix};
use super::{is_nonneg_integer, rational, Fan};
use crate::error::{Error, Result};
use crate::poly::Multiplicity;
use crate::{QPoly, Rational};

/// Whether `ℓ` is admissible for the weights: for every `i` there is a `j`
/// with `ℓ + a_j ≡ 0 (mod a_i)`.
pub fn admissible(l: i64, weights: &[i64]) -> Result<bool> {
    if weights.iter().any(|a| *a <= 0) {
        return Err(Error::Argument("weights must be positive".into()));
    }
    for (i, a) in weights.iter().enumerate() {
        for b in &weights[i + 1..] {
            if a.gcd(b) != 1 {
                return Err(Error::Argument(format!("weights {a} and {b} are not coprime")));
            }
        }
    }
    Ok(weights.iter().all(|ai| weights.iter().any(|aj| (l + aj).rem_euclid(*ai) == 0)))
}

/// The torsion-free cover: with `L·V·R = D`, the generators
/// `Ṽ = L⁻¹·[I_q; 0]·R⁻¹` have the same relations and cones as `V` and
/// a torsion-free class group.
pub fn detorsion(fan: &Fan) -> Result<Fan> {
    let v = fan.ray_matrix();
    let (m, q) = (v.nrows(), v.ncols());
    let s = smith_normal_form(&v);
    let mut block = IntMatrix::zeros(m, q);
    for i in 0..q {
        block[(i, i)] = 1;
    }
    let w = s.l_inv.mul(&block).mul(&s.r_inv);
    Fan::from_generators(w.to_rows(), fan.max_cones().to_vec())
}

/// One reduction step towards a complete polynomial lifting.
///
/// With `u_i = mult_f(F_i)` and `w = Σ u_i v_i`, find the smallest cone
/// `τ` containing `w`, write `w = Σ_{j∈τ} u′_j v_j` and return
/// `(f^{u′_i − u_i} F_i)`. Since `u − u′` is a relation, the new tuple
/// defines the same rational map. A fractional `u′` (the cone is not
/// smooth) is an obstruction.
pub fn completeness_step(components: &[QPoly], f: &QPoly, fan: &Fan) -> Result<Vec<QPoly>> {
    if components.len() != fan.nrays() {
        return Err(Error::Argument(format!("{} components for a fan with {} rays", components.len(), fan.nrays())));
    }
    let mut u = Vec::with_capacity(components.len());
    for (i, fi) in components.iter().enumerate() {
        match fi.mult_along(f)? {
            Multiplicity::Finite(k) => u.push(k as i64),
            Multiplicity::Infinite => return Err(Error::Argument(format!("component F{} is zero", i + 1))),
        }
    }
    if u.iter().all(|k| *k == 0) {
        return Ok(components.to_vec());
    }
    let q = fan.dim();
    let w: Vec<Rational> = (0..q).map(|c| rational(u.iter().zip(fan.rays()).map(|(k, v)| k * v[c]).sum())).collect();
    let (cone, lambda) = fan.cone_containing(&w).ok_or_else(|| Error::Fan("fan is not complete".into()))?;
    let rays = &fan.max_cones()[cone];
    let tau: Vec<usize> = rays.iter().zip(&lambda).filter(|(_, x)| **x != rational(0)).map(|(r, _)| *r).collect();
    if let Some(x) = lambda.iter().find(|x| !is_nonneg_integer(x)) {
        return Err(Error::Obstruction {
            cone: tau,
            reason: format!("w = {:?} has the non-integral coordinate {x} on the cone; it is not smooth", w.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        });
    }
    let mut u_new = vec![0i64; components.len()];
    for (r, x) in rays.iter().zip(&lambda) {
        u_new[*r] = i64::try_from(x.to_integer()).map_err(|_| Error::Argument("multiplicity overflow".into()))?;
    }
    Ok(components
        .iter()
        .zip(u.iter().zip(&u_new))
        .map(|(fi, (old, new))| {
            let mut g = fi.clone();
            for _ in 0..old - new.min(old) {
                g = g.div_exact(f).expect("f divides F_i by construction");
            }
            for _ in *old..*new {
                g = &g * f;
            }
            g
        })
        .collect())
}
