//! Dense matrices and Gaussian elimination over any [`FiniteField`].

use serde::{Deserialize, Serialize};

use crate::field::FiniteField;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Copy> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<E>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, |c| c.len());
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for col in columns {
                data.push(col[r]);
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> E {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn as_slice(&self) -> &[E] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c));
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Reflection across the antidiagonal: `B[i][j] = A[n-1-j][n-1-i]` (square only).
    pub fn antitranspose(&self) -> Self {
        assert_eq!(self.rows, self.cols, "antitranspose needs a square matrix");
        let n = self.rows;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.get(n - 1 - j, n - 1 - i));
            }
        }
        Matrix { rows: n, cols: n, data }
    }

    /// Sub-block of `rows × cols` starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in r0..r0 + rows {
            data.extend_from_slice(&self.data[r * self.cols + c0..r * self.cols + c0 + cols]);
        }
        Matrix { rows, cols, data }
    }
}

pub fn zeros<F: FiniteField>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, f.zero())
}

pub fn identity<F: FiniteField>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zeros(f, n, n);
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn is_zero<F: FiniteField>(f: &F, m: &Matrix<F::Elem>) -> bool {
    m.data.iter().all(|&x| f.is_zero(x))
}

pub fn mat_mul<F: FiniteField>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch");
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let v = f.mul_add(out.get(i, j), x, b.get(k, j));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub fn mat_vec<F: FiniteField>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len(), "dimension mismatch");
    (0..a.rows)
        .map(|i| a.row(i).iter().zip(v).fold(f.zero(), |acc, (&x, &y)| f.mul_add(acc, x, y)))
        .collect()
}

pub fn add<F: FiniteField>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    let data = a.data.iter().zip(&b.data).map(|(&x, &y)| f.add(x, y)).collect();
    Matrix { rows: a.rows, cols: a.cols, data }
}

pub fn scale<F: FiniteField>(f: &F, c: F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let data = a.data.iter().map(|&x| f.mul(c, x)).collect();
    Matrix { rows: a.rows, cols: a.cols, data }
}

/// In-place reduced row echelon form on a row-major buffer. Pivots are taken
/// left to right; the pivot row is the first row at or below the current one
/// with a nonzero entry, and pivots are scaled to one. Returns the pivot columns.
pub fn rref_in_place<F: FiniteField>(f: &F, data: &mut [F::Elem], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(sel) = (r..rows).find(|&i| !f.is_zero(data[i * cols + c])) else {
            continue;
        };
        if sel != r {
            for k in 0..cols {
                data.swap(sel * cols + k, r * cols + k);
            }
        }
        let inv = f.inv(data[r * cols + c]).expect("nonzero pivot");
        for k in c..cols {
            data[r * cols + k] = f.mul(data[r * cols + k], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c];
            if f.is_zero(factor) {
                continue;
            }
            let neg = f.neg(factor);
            for k in c..cols {
                data[i * cols + k] = f.mul_add(data[i * cols + k], neg, data[r * cols + k]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by forward elimination only; destroys `data`.
pub fn rank_in_place<F: FiniteField>(f: &F, data: &mut [F::Elem], rows: usize, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(sel) = (r..rows).find(|&i| !f.is_zero(data[i * cols + c])) else {
            continue;
        };
        if sel != r {
            for k in c..cols {
                data.swap(sel * cols + k, r * cols + k);
            }
        }
        let inv = f.inv(data[r * cols + c]).expect("nonzero pivot");
        for i in r + 1..rows {
            let factor = data[i * cols + c];
            if f.is_zero(factor) {
                continue;
            }
            let m = f.neg(f.mul(factor, inv));
            for k in c..cols {
                data[i * cols + k] = f.mul_add(data[i * cols + k], m, data[r * cols + k]);
            }
        }
        r += 1;
    }
    r
}

/// Reduced row echelon form of `m` with its pivot columns.
pub fn rref<F: FiniteField>(f: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut out = m.clone();
    let pivots = rref_in_place(f, &mut out.data, out.rows, out.cols);
    (out, pivots)
}

pub fn rank<F: FiniteField>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut data = m.data.clone();
    rank_in_place(f, &mut data, m.rows, m.cols)
}

/// Nonzero rows of the RREF: a canonical basis of the row space.
pub fn row_space_basis<F: FiniteField>(f: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let (r, pivots) = rref(f, m);
    r.block(0, 0, pivots.len(), m.cols)
}

/// Basis of `{x : m·x = 0}`, one vector per row, ordered by free column.
pub fn nullspace<F: FiniteField>(f: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let (r, pivots) = rref(f, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = zeros(f, free.len(), m.cols);
    for (k, &fc) in free.iter().enumerate() {
        out.set(k, fc, f.one());
        for (row, &pc) in pivots.iter().enumerate() {
            out.set(k, pc, f.neg(r.get(row, fc)));
        }
    }
    out
}

pub fn inverse<F: FiniteField>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert_eq!(m.rows, m.cols, "inverse needs a square matrix");
    let n = m.rows;
    let mut aug = zeros(f, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j));
        }
        aug.set(i, n + i, f.one());
    }
    let pivots = rref_in_place(f, &mut aug.data, n, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.block(0, n, n, n))
}

/// True when `v` lies in the row space of `m`.
pub fn in_row_space<F: FiniteField>(f: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> bool {
    let base = rank(f, m);
    let mut rows = m.to_rows();
    rows.push(v.to_vec());
    let ext = if m.rows == 0 { Matrix::from_rows(vec![v.to_vec()]) } else { Matrix::from_rows(rows) };
    rank(f, &ext) == base
}
