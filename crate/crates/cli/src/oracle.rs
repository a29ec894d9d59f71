//! Reference computations that share no code with the Gröbner engine.
//!
//! Membership of a homogeneous `f` in an ideal with homogeneous generators
//! `g_i` is decided by the linear system `Σ c_i g_i = f` with `c_i` running
//! over all polynomials of degree `deg f − deg g_i`, solved by dense
//! elimination written out here.

use num_traits::Zero;
use torfol::groebner::Engine;
use torfol::poly::Monomial;
use torfol::{QIdeal, QPoly, Rational, Result};

/// All monomials of total degree `d` in `n` variables.
pub fn monomials_of_total_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::new(prefix));
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            go(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    go(n, d, &mut Vec::new(), &mut out);
    out
}

/// Whether `A x = b` has a solution (dense Gaussian elimination).
fn consistent(mut rows: Vec<Vec<Rational>>, ncols: usize) -> bool {
    // the last entry of each row is the right-hand side
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|r| !rows[*r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone() / &pivot[col];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= y.clone() * &factor;
                }
            }
        }
        rank += 1;
    }
    rows[rank..].iter().all(|r| r[ncols].is_zero())
}

fn homogeneous_parts(f: &QPoly) -> Vec<(u32, QPoly)> {
    let mut parts: Vec<(u32, QPoly)> = Vec::new();
    for (m, c) in f.terms() {
        let t = QPoly::term(m.clone(), c.clone());
        match parts.iter_mut().find(|(d, _)| *d == m.degree()) {
            Some((_, p)) => *p = &*p + &t,
            None => parts.push((m.degree(), t)),
        }
    }
    parts
}

/// Bounded-degree cofactor search. The generators must be homogeneous in
/// the standard grading, which makes the degree bound exact.
pub fn cofactor_member(f: &QPoly, generators: &[QPoly]) -> bool {
    assert!(generators.iter().all(|g| g.is_standard_homogeneous()), "oracle needs homogeneous generators");
    let n = f.nvars();
    let gens: Vec<&QPoly> = generators.iter().filter(|g| !g.is_zero()).collect();
    homogeneous_parts(f).into_iter().all(|(d, part)| {
        let mut columns: Vec<QPoly> = Vec::new();
        for g in &gens {
            let dg = g.total_degree().expect("nonzero");
            if dg <= d {
                for m in monomials_of_total_degree(n, d - dg) {
                    columns.push(g.mul_term(&m, &Rational::from_integer(1.into())));
                }
            }
        }
        let targets = monomials_of_total_degree(n, d);
        let rows: Vec<Vec<Rational>> = targets
            .iter()
            .map(|m| {
                let mut row: Vec<Rational> = columns.iter().map(|c| c.coefficient(m)).collect();
                row.push(part.coefficient(m));
                row
            })
            .collect();
        consistent(rows, columns.len())
    })
}

/// `(I : J^∞)` as the fixed point of `I ⊆ (I:J) ⊆ (I:J²) ⊆ …`, each step a
/// single ideal quotient.
pub fn saturation_fixpoint(engine: &Engine, i: &QIdeal, j: &QIdeal) -> Result<QIdeal> {
    let mut current = i.clone();
    loop {
        let next = engine.quotient(&current, j)?;
        if engine.contains(&current, &next)? {
            return Ok(current);
        }
        current = next;
    }
}
