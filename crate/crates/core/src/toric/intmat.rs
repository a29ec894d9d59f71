//! Small dense integer matrices: Smith and Hermite normal forms.

use std::fmt;

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged integer matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.iter().flatten().copied().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "matrix dimension mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    out[(i, j)] += a * o[(k, j)];
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) {
        for c in 0..self.cols {
            let v = self[(src, c)];
            self[(dst, c)] += k * v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) {
        for r in 0..self.rows {
            let v = self[(r, src)];
            self[(r, dst)] += k * v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            self[(r, c)] = -self[(r, c)];
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            self[(r, c)] = -self[(r, c)];
        }
    }

    /// Determinant of a square matrix (Bareiss, exact in `i128`).
    pub fn determinant(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<i128>> = (0..n).map(|r| self.row(r).iter().map(|&v| v as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        if n == 0 {
            return 1;
        }
        (sign * a[n - 1][n - 1]) as i64
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (r, c): (usize, usize)) -> &i64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i64 {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

/// `L·V·R = D` with `L`, `R` unimodular and `D` diagonal, `d₁ | d₂ | …`.
/// The inverses are tracked alongside so nothing has to be inverted later.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub l: IntMatrix,
    pub d: IntMatrix,
    pub r: IntMatrix,
    pub l_inv: IntMatrix,
    pub r_inv: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.nrows().min(self.d.ncols())).map(|i| self.d[(i, i)]).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| **d != 0).count()
    }
}

pub fn smith_normal_form(v: &IntMatrix) -> SmithForm {
    let (m, n) = (v.nrows(), v.ncols());
    let mut a = v.clone();
    let mut l = IntMatrix::identity(m);
    let mut l_inv = IntMatrix::identity(m);
    let mut r = IntMatrix::identity(n);
    let mut r_inv = IntMatrix::identity(n);

    // Row operation E applied as A ← E·A, L ← E·L, L⁻¹ ← L⁻¹·E⁻¹; column
    // operations mirror this on the right.
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[(i, j)] != 0 && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { l, d: a, r, l_inv, r_inv };
            };
            a.swap_rows(t, pi);
            l.swap_rows(t, pi);
            l_inv.swap_cols(t, pi);
            a.swap_cols(t, pj);
            r.swap_cols(t, pj);
            r_inv.swap_rows(t, pj);

            let mut dirty = false;
            for i in t + 1..m {
                let q = a[(i, t)] / a[(t, t)];
                if q != 0 {
                    a.add_row(i, t, -q);
                    l.add_row(i, t, -q);
                    l_inv.add_col(t, i, q);
                }
                dirty |= a[(i, t)] != 0;
            }
            for j in t + 1..n {
                let q = a[(t, j)] / a[(t, t)];
                if q != 0 {
                    a.add_col(j, t, -q);
                    r.add_col(j, t, -q);
                    r_inv.add_row(t, j, q);
                }
                dirty |= a[(t, j)] != 0;
            }
            if dirty {
                continue;
            }
            let p = a[(t, t)];
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[(i, j)] % p != 0));
            if let Some(i) = bad {
                a.add_row(t, i, 1);
                l.add_row(t, i, 1);
                l_inv.add_col(i, t, -1);
                continue;
            }
            break;
        }
        if a[(t, t)] < 0 {
            a.negate_row(t);
            l.negate_row(t);
            l_inv.negate_col(t);
        }
    }
    SmithForm { l, d: a, r, l_inv, r_inv }
}

/// Row-style Hermite normal form of the lattice spanned by the rows:
/// echelon, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are dropped.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut a = IntMatrix::from_rows(rows);
    let (m, n) = (a.nrows(), a.ncols());
    let mut prow = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if prow == m {
            break;
        }
        // Euclid down the column until a single nonzero entry remains
        loop {
            let nz: Vec<usize> = (prow..m).filter(|&i| a[(i, c)] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let &best = nz.iter().min_by_key(|&&i| a[(i, c)].abs()).unwrap();
            a.swap_rows(prow, best);
            let mut done = true;
            for i in prow + 1..m {
                let q = a[(i, c)] / a[(prow, c)];
                if q != 0 {
                    a.add_row(i, prow, -q);
                }
                if a[(i, c)] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(prow, c)] == 0 {
            continue;
        }
        if a[(prow, c)] < 0 {
            a.negate_row(prow);
        }
        let p = a[(prow, c)];
        for i in 0..prow {
            let q = a[(i, c)].div_euclid(p);
            if q != 0 {
                a.add_row(i, prow, -q);
            }
        }
        pivots.push(c);
        prow += 1;
    }
    (0..prow).map(|r| a.row(r).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(v: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(v);
        assert_eq!(s.l.mul(v).mul(&s.r), s.d);
        assert_eq!(s.l.mul(&s.l_inv), IntMatrix::identity(v.nrows()));
        assert_eq!(s.r.mul(&s.r_inv), IntMatrix::identity(v.ncols()));
        let d = s.diagonal();
        for i in 0..s.d.nrows() {
            for j in 0..s.d.ncols() {
                if i != j {
                    assert_eq!(s.d[(i, j)], 0);
                }
            }
        }
        for w in d.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0, "divisibility chain {d:?}");
            }
        }
        s
    }

    #[test]
    fn projective_plane_rays() {
        let v = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1], vec![-1, -1]]);
        let s = check(&v);
        assert_eq!(s.diagonal(), vec![1, 1]);
        assert_eq!(s.d.row(2), &[0, 0]);
    }

    #[test]
    fn scalar() {
        let s = check(&IntMatrix::from_rows(&[vec![2]]));
        assert_eq!(s.diagonal(), vec![2]);
    }

    #[test]
    fn needs_divisibility_fix() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), vec![1, 6]);
    }

    #[test]
    fn random_reconstruction() {
        // deterministic pseudo-random 4×2 matrices
        let mut x: i64 = 12345;
        for _ in 0..200 {
            let mut rows = Vec::new();
            for _ in 0..4 {
                let mut r = Vec::new();
                for _ in 0..2 {
                    x = (x * 1103515245 + 12345) % 2147483648;
                    r.push(x % 13 - 6);
                }
                rows.push(r);
            }
            let v = IntMatrix::from_rows(&rows);
            let s = check(&v);
            assert_eq!(s.l_inv.mul(&s.d).mul(&s.r_inv), v);
        }
    }

    #[test]
    fn hermite_of_relations() {
        let h = hermite_normal_form(&[vec![1, -2, 1, 0], vec![0, 1, 0, 1]]);
        assert_eq!(h, vec![vec![1, 0, 1, 2], vec![0, 1, 0, 1]]);
        let h = hermite_normal_form(&[vec![-2, -6, -10]]);
        assert_eq!(h, vec![vec![2, 6, 10]]);
    }

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]).determinant(), -2);
        assert_eq!(IntMatrix::from_rows(&[vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 1]]).determinant(), 5);
    }
}
