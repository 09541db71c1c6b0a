//! Dense matrices of field-element encodings and Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u16>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u16>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows<R: AsRef<[u16]>>(rows: &[R]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {cols}",
                    i + 1,
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u16] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u16 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u16) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u16] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u16] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u16> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u16>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }

    /// The matrix formed by the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Column indices with at least one nonzero entry in the given rows.
    pub fn nonzero_columns(&self, rows: std::ops::Range<usize>) -> Vec<usize> {
        (0..self.cols)
            .filter(|&c| rows.clone().any(|r| self.get(r, c) != 0))
            .collect()
    }

    /// `self · v`.
    pub fn mul_vec(&self, field: &Field, v: &[u16]) -> Vec<u16> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows).map(|r| dot(field, self.row(r), v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }
}

pub fn dot(field: &Field, a: &[u16], b: &[u16]) -> u16 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// `dst += factor · src`, entry-wise.
pub fn axpy(field: &Field, dst: &mut [u16], factor: u16, src: &[u16]) {
    if factor == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = field.add(*d, field.mul(factor, s));
        }
    }
}

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows of the reduced form; each pivot entry is 1 and is the
    /// only nonzero in its column.
    pub basis: Matrix,
    /// Pivot column of each basis row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss-Jordan elimination over `field`.
pub fn rref(field: &Field, m: &Matrix) -> Echelon {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(pr) = (row..a.rows).find(|&r| a.get(r, col) != 0) else {
            continue;
        };
        if pr != row {
            for c in 0..a.cols {
                a.data.swap(pr * a.cols + c, row * a.cols + c);
            }
        }
        let inv = field.inv(a.get(row, col)).expect("pivot is nonzero");
        for v in a.row_mut(row) {
            *v = field.mul(*v, inv);
        }
        let pivot_row = a.row(row).to_vec();
        for r in 0..a.rows {
            if r != row {
                let f = a.get(r, col);
                if f != 0 {
                    axpy(field, a.row_mut(r), field.neg(f), &pivot_row);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let basis = a.submatrix(0..row, 0..a.cols);
    Echelon { basis, pivots }
}

pub fn rank(field: &Field, m: &Matrix) -> usize {
    rref(field, m).rank()
}

/// Basis (as rows) of `{x : m · x = 0}`.
pub fn nullspace(field: &Field, m: &Matrix) -> Matrix {
    let e = rref(field, m);
    let n = m.cols;
    let free: Vec<usize> = (0..n).filter(|c| !e.pivots.contains(c)).collect();
    let mut out = Matrix::zeros(free.len(), n);
    for (i, &f) in free.iter().enumerate() {
        out.set(i, f, 1);
        for (r, &pc) in e.pivots.iter().enumerate() {
            out.set(i, pc, field.neg(e.basis.get(r, f)));
        }
    }
    out
}

/// Solves `Σ x_j · cols[j] = target` for column vectors given as rows of
/// `cols`. Returns one solution if any exists.
pub fn solve_combination(field: &Field, cols: &[Vec<u16>], target: &[u16]) -> Option<Vec<u16>> {
    let len = target.len();
    let k = cols.len();
    // augmented system: len equations, k unknowns
    let mut a = Matrix::zeros(len, k + 1);
    for (j, c) in cols.iter().enumerate() {
        for (r, &v) in c.iter().enumerate() {
            a.set(r, j, v);
        }
    }
    for (r, &v) in target.iter().enumerate() {
        a.set(r, k, v);
    }
    let e = rref(field, &a);
    if e.pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![0u16; k];
    for (r, &pc) in e.pivots.iter().enumerate() {
        x[pc] = e.basis.get(r, k);
    }
    Some(x)
}
