//! Exact sparse linear algebra.
//!
//! Homogeneity pins the degree of every unknown in the unfolding,
//! deformation and membership problems, so they all become finite linear
//! systems over the coefficient field. Those systems are large but very
//! sparse, hence the sparse-row Gauss–Jordan below.

use crate::field::Field;

pub type SparseRow<F> = Vec<(usize, F)>;

/// Reduced row echelon form of a sparse matrix.
#[derive(Clone, Debug)]
pub struct Rref<F> {
    pub ncols: usize,
    /// Pivot rows, each with leading entry 1 at `pivots[k]`, all other pivot
    /// columns eliminated.
    pub rows: Vec<SparseRow<F>>,
    pub pivots: Vec<usize>,
}

fn axpy<F: Field>(row: &[(usize, F)], factor: &F, pivot: &[(usize, F)]) -> SparseRow<F> {
    // row − factor·pivot
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|t| t.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|t| t.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(pivot[j].1.clone() * factor)));
            j += 1;
        } else {
            let v = row[i].1.clone() - pivot[j].1.clone() * factor;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Gauss–Jordan elimination. Rows must be sorted by column with no zeros.
pub fn rref<F: Field>(ncols: usize, rows: Vec<SparseRow<F>>) -> Rref<F> {
    let mut pending: Vec<SparseRow<F>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut done: Vec<SparseRow<F>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    while !pending.is_empty() {
        // choose the row with the smallest leading column, shortest first
        let (best, _) = pending
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| (r[0].0, r.len()))
            .unwrap();
        let mut p = pending.swap_remove(best);
        let col = p[0].0;
        let inv = p[0].1.inv();
        for t in p.iter_mut() {
            t.1 = t.1.clone() * &inv;
        }
        for r in pending.iter_mut() {
            if r[0].0 == col {
                let f = r[0].1.clone();
                *r = axpy(r, &f, &p);
            }
        }
        pending.retain(|r| !r.is_empty());
        for r in done.iter_mut() {
            if let Ok(k) = r.binary_search_by_key(&col, |t| t.0) {
                let f = r[k].1.clone();
                *r = axpy(r, &f, &p);
            }
        }
        done.push(p);
        pivots.push(col);
    }
    Rref { ncols, rows: done, pivots }
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|c| !is_pivot[*c]).collect()
    }

    /// A basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let free = self.free_columns();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.ncols];
                v[f] = F::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if let Ok(k) = row.binary_search_by_key(&f, |t| t.0) {
                        v[p] = -row[k].1.clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Solve `A x = b` with `A` given by sparse rows over `ncols` unknowns.
/// Returns a particular solution (free variables zero) or `None`.
pub fn solve<F: Field>(ncols: usize, rows: &[SparseRow<F>], rhs: &[F]) -> Option<Vec<F>> {
    assert_eq!(rows.len(), rhs.len());
    let aug: Vec<SparseRow<F>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            if !b.is_zero() {
                r.push((ncols, b.clone()));
            }
            r
        })
        .collect();
    let e = rref(ncols + 1, aug);
    if e.pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![F::zero(); ncols];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        if let Some((c, v)) = row.last() {
            if *c == ncols {
                x[p] = v.clone();
            }
        }
    }
    Some(x)
}

/// Dense convenience wrapper.
pub fn dense_rows<F: Field>(m: &[Vec<F>]) -> Vec<SparseRow<F>> {
    m.iter()
        .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect())
        .collect()
}

/// Multiply a sparse matrix by a dense vector.
pub fn apply<F: Field>(rows: &[SparseRow<F>], x: &[F]) -> Vec<F> {
    rows.iter().map(|r| r.iter().fold(F::zero(), |acc, (c, v)| acc + v.clone() * &x[*c])).collect()
}

/// Rank of a set of dense vectors.
pub fn rank_of<F: Field>(vectors: &[Vec<F>]) -> usize {
    let n = vectors.first().map(|v| v.len()).unwrap_or(0);
    rref(n, dense_rows(vectors)).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Rational};
    use num_traits::Zero;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let e = rref(3, dense_rows(&a));
        assert_eq!(e.rank(), 1);
        let k = e.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(apply(&dense_rows(&a), v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = dense_rows(&m(&[&[1, 1], &[1, -1]]));
        let x = solve(2, &a, &[rat(3), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        let b = dense_rows(&m(&[&[1, 1], &[2, 2]]));
        assert!(solve(2, &b, &[rat(1), rat(3)]).is_none());
    }
}
