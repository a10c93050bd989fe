//! Exact dense linear algebra over [`Scalar`]: the substrate for intertwiner
//! spaces, null spaces, ranks, and Kronecker products.
//!
//! Elimination uses plain Gaussian reduction with deterministic pivoting
//! (leftmost nonzero column, first available row), so every derived basis —
//! and everything built on top of one — is reproducible across runs.

use std::fmt;

use crate::scalar::{Ctx, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn zeros(ctx: &Ctx, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &Ctx, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ctx, n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one(ctx);
        }
        m
    }

    pub fn from_rows(ctx: &Ctx, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            entries.extend(row);
        }
        let _ = ctx;
        Matrix { rows: r, cols: c, entries }
    }

    pub fn from_fn(ctx: &Ctx, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Matrix {
        let mut m = Matrix::zeros(ctx, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Integer convenience constructor, mostly for tests and built-in tables.
    pub fn from_i64(ctx: &Ctx, data: &[&[i64]]) -> Matrix {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        Matrix::from_fn(ctx, rows, cols, |i, j| Scalar::from_int(ctx, data[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &Ctx {
        self.entries
            .first()
            .map(|s| s.ctx())
            .expect("empty matrix has no context")
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        self.entries.iter().enumerate().all(|(k, e)| {
            if k / self.cols == k % self.cols {
                e.is_one()
            } else {
                e.is_zero()
            }
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.ctx(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mul(s)).collect(),
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul");
        let ctx = self.ctx();
        let mut out = Matrix::zeros(ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let ctx = self.ctx();
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(ctx);
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc.add(&self[(i, j)].mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product: block structure `A[i,j]·B`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let ctx = self.ctx();
        let mut out = Matrix::zeros(ctx, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * other.rows + k, j * other.cols + l)] = a.mul(b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form with the pivot columns, deterministic.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].mul(&inv);
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let t = m[(r, j)].mul(&f);
                        m[(i, j)] = m[(i, j)].sub(&t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical null-space basis: one vector per free column, derived from
    /// the rref rows and rescaled so the first nonzero coordinate is 1,
    /// ordered by free column index.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let ctx = self.ctx();
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(ctx); self.cols];
            v[free] = Scalar::one(ctx);
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = r[(prow, free)].neg();
            }
            // first nonzero coordinate scaled to 1
            if let Some(first) = v.iter().position(|x| !x.is_zero()) {
                let inv = v[first].inv();
                for x in v.iter_mut() {
                    *x = x.mul(&inv);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of A·x = b, or None when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len());
        let ctx = self.ctx();
        let mut aug = Matrix::zeros(ctx, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // a pivot in the augmented column
        }
        let mut x = vec![Scalar::zero(ctx); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let ctx = self.ctx();
        let n = self.rows;
        let mut aug = Matrix::zeros(ctx, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one(ctx);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = Matrix::zeros(ctx, n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// If the matrix is λ·I, returns λ.
    pub fn as_scalar_multiple_of_identity(&self) -> Option<Scalar> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let lambda = self[(0, 0)].clone();
        let zero = Scalar::zero(self.ctx());
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { &lambda } else { &zero };
                if self[(i, j)] != *want {
                    return None;
                }
            }
        }
        Some(lambda)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        let c = self.cols;
        &mut self.entries[i * c + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row space of a list of vectors in canonical (rref, zero rows dropped) form.
pub fn row_space_basis(ctx: &Ctx, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(ctx, vectors.to_vec());
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Tests whether `v` lies in the span of `basis` (basis need not be reduced).
pub fn in_span(ctx: &Ctx, basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let mut rows = basis.to_vec();
    let before = row_space_basis(ctx, &rows).len();
    rows.push(v.to_vec());
    row_space_basis(ctx, &rows).len() == before
}
