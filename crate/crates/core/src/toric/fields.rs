use std::collections::BTreeMap;

use super::grading::{DegreeVector, GradingData};
use super::rational;
use crate::error::{Error, Result};
use crate::forms::KForm;
use crate::poly::Monomial;
use crate::{QPoly, Rational};

/// A derivation `Y = Σ B_i ∂/∂z_i` of the Cox ring.
///
/// Its degree `d` is defined by `deg B_i = d + deg z_i`, so that contracting
/// a form of degree `D` gives a form of degree `D + d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    coeffs: Vec<QPoly>,
}

impl VectorField {
    pub fn new(coeffs: Vec<QPoly>) -> VectorField {
        let n = coeffs.len();
        assert!(coeffs.iter().all(|b| b.nvars() == n), "a vector field needs one coefficient per variable");
        VectorField { coeffs }
    }

    pub fn zero(nvars: usize) -> VectorField {
        VectorField { coeffs: vec![QPoly::zero(nvars); nvars] }
    }

    /// `∂/∂z_i`.
    pub fn coordinate(nvars: usize, i: usize) -> VectorField {
        let mut y = Self::zero(nvars);
        y.coeffs[i] = QPoly::one(nvars);
        y
    }

    pub fn coefficients(&self) -> &[QPoly] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|b| b.is_zero())
    }

    pub fn add(&self, o: &VectorField) -> VectorField {
        VectorField::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &VectorField) -> VectorField {
        VectorField::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField::new(self.coeffs.iter().map(|b| b.scale(c)).collect())
    }

    pub fn mul_poly(&self, p: &QPoly) -> VectorField {
        VectorField::new(self.coeffs.iter().map(|b| b * p).collect())
    }

    /// `Y(p) = Σ B_i ∂p/∂z_i`.
    pub fn apply(&self, p: &QPoly) -> QPoly {
        self.coeffs.iter().enumerate().fold(QPoly::zero(self.nvars()), |acc, (i, b)| &acc + &(b * &p.partial(i)))
    }

    /// `[X, Y]_i = X(Y_i) − Y(X_i)`.
    pub fn bracket(&self, o: &VectorField) -> VectorField {
        VectorField::new((0..self.nvars()).map(|i| &self.apply(&o.coeffs[i]) - &o.apply(&self.coeffs[i])).collect())
    }

    /// The degree `d` with `deg B_i = d + deg z_i` for every nonzero `B_i`;
    /// `None` for the zero field.
    pub fn degree(&self, g: &GradingData) -> Result<Option<DegreeVector>> {
        let mut found: Option<(usize, DegreeVector)> = None;
        for (i, b) in self.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let d = g.degree_of(b)?.sub(g.var_degree(i));
            match &found {
                None => found = Some((i, d)),
                Some((j, d0)) if *d0 != d => {
                    return Err(Error::Homogeneity {
                        first: format!("B{} gives field degree {d0}", j + 1),
                        second: format!("B{} gives field degree {d}", i + 1),
                    });
                }
                _ => {}
            }
        }
        Ok(found.map(|f| f.1))
    }
}

/// `R_j = Σ_i a^j_i z_i ∂/∂z_i`, one per relation basis vector.
pub fn radial_fields(g: &GradingData) -> Vec<VectorField> {
    let m = g.nvars();
    g.relation_basis()
        .iter()
        .map(|r| VectorField::new((0..m).map(|i| QPoly::var(m, i).scale(&rational(r[i]))).collect()))
        .collect()
}

/// `Ω_X = i_{R_1} ⋯ i_{R_s}(dz_1 ∧ … ∧ dz_m)`, the innermost contraction
/// being by `R_s`.
pub fn volume_form(g: &GradingData) -> KForm {
    let mut omega = KForm::volume(g.nvars());
    for r in radial_fields(g).iter().rev() {
        omega = omega.contract(r).expect("contracting a form of positive degree");
    }
    omega
}

/// The constants `b_I` with `Ω_X = Σ_I b_I ẑ_I dz_I`, `ẑ_I = ∏_{i∉I} z_i`,
/// keyed by sorted index sets (only nonzero entries).
pub fn volume_coefficients(g: &GradingData) -> Result<BTreeMap<Vec<usize>, Rational>> {
    let m = g.nvars();
    let omega = volume_form(g);
    let mut b = BTreeMap::new();
    for (idx, a) in omega.terms() {
        let exps: Vec<u32> = (0..m).map(|i| u32::from(!idx.contains(&i))).collect();
        let hat = Monomial::new(&exps);
        match a.terms() {
            [(mono, c)] if *mono == hat => {
                b.insert(idx, c.clone());
            }
            _ => return Err(Error::Coefficient(format!("coefficient of dz_{idx:?} in Ω_X is not a multiple of ẑ_I: {a}"))),
        }
    }
    Ok(b)
}

fn antisym(b: &BTreeMap<Vec<usize>, Rational>, idx: &[usize]) -> Rational {
    let mut sorted = idx.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != idx.len() {
        return rational(0);
    }
    let inv = (0..idx.len()).flat_map(|i| (i + 1..idx.len()).map(move |j| (i, j))).filter(|&(i, j)| idx[i] > idx[j]).count();
    let v = b.get(&sorted).cloned().unwrap_or_else(|| rational(0));
    if inv % 2 == 1 {
        -v
    } else {
        v
    }
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..1 << m).filter(|s| s.count_ones() as usize == k).map(crate::forms::indices_of).collect()
}

/// The Grassmann–Plücker relations for a `q`-vector in `Λ^q ℚ^m`: for every
/// `(q−1)`-set `S` and `(q+1)`-set `T`,
/// `Σ_k (−1)^k b_{S, t_k} b_{T∖t_k} = 0`. They hold iff `b` is totally
/// decomposable.
pub fn plucker_holds(b: &BTreeMap<Vec<usize>, Rational>, m: usize, q: usize) -> bool {
    if q == 0 || q >= m {
        return true;
    }
    for s in subsets(m, q - 1) {
        for t in subsets(m, q + 1) {
            let mut sum = rational(0);
            for k in 0..t.len() {
                let mut left = s.clone();
                left.push(t[k]);
                let right: Vec<usize> = t.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, x)| *x).collect();
                let term = antisym(b, &left) * antisym(b, &right);
                if k % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            if sum != rational(0) {
                return false;
            }
        }
    }
    true
}
