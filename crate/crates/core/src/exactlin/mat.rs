use std::fmt;

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`Field`].
///
/// Arithmetic operators assert on shape mismatches; callers that accept
/// user-supplied shapes check them first and report [`Error::DimensionMismatch`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rref: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        Mat::from_fn(field, n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    /// `c` times the identity.
    pub fn scalar(field: Field, n: usize, c: i64) -> Mat {
        Mat::identity(field, n).scale(&field.from_i64(c))
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                debug_assert!(field.contains(&v));
                data.push(v);
            }
        }
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Row-major integer entries, reduced into the field.
    pub fn from_i64s(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Mat {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Mat::from_fn(field, rows, cols, |i, j| field.from_i64(entries[i * cols + j]))
    }

    pub fn from_scalars(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::dims("from_scalars", rows * cols, data.len()));
        }
        if let Some(bad) = data.iter().find(|s| !field.contains(s)) {
            return Err(Error::FieldMismatch(field.to_string(), format!("{bad:?}")));
        }
        Ok(Mat {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Column vector.
    pub fn column_vector(field: Field, v: Vec<Scalar>) -> Mat {
        let n = v.len();
        Mat::from_scalars(field, n, 1, v).expect("column vector")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        debug_assert!(self.field.contains(&v));
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        let z = self.field.zero();
        self.data.iter().all(|x| *x == z)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape(), "add: shape");
        let f = self.field;
        Mat::from_fn(f, self.rows, self.cols, |i, j| f.add(self.get(i, j), other.get(i, j)))
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape(), "sub: shape");
        let f = self.field;
        Mat::from_fn(f, self.rows, self.cols, |i, j| f.sub(self.get(i, j), other.get(i, j)))
    }

    pub fn neg(&self) -> Mat {
        let f = self.field;
        Mat::from_fn(f, self.rows, self.cols, |i, j| f.neg(self.get(i, j)))
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let f = self.field;
        Mat::from_fn(f, self.rows, self.cols, |i, j| f.mul(c, self.get(i, j)))
    }

    pub fn scale_i64(&self, c: i64) -> Mat {
        self.scale(&self.field.from_i64(c))
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.field, other.field, "mul: field");
        assert_eq!(
            self.cols, other.rows,
            "mul: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        let zero = f.zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if *a == zero {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if *b == zero {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack: rows");
        let c = self.cols;
        Mat::from_fn(self.field, self.rows, c + other.cols, |i, j| {
            if j < c {
                self.get(i, j).clone()
            } else {
                other.get(i, j - c).clone()
            }
        })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack: cols");
        let r = self.rows;
        Mat::from_fn(self.field, r + other.rows, self.cols, |i, j| {
            if i < r {
                self.get(i, j).clone()
            } else {
                other.get(i - r, j).clone()
            }
        })
    }

    pub fn block_diag(&self, other: &Mat) -> Mat {
        let f = self.field;
        let top = self.hstack(&Mat::zeros(f, self.rows, other.cols));
        let bottom = Mat::zeros(f, other.rows, self.cols).hstack(other);
        top.vstack(&bottom)
    }

    /// `[[a, b], [c, d]]`.
    pub fn block(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Mat {
        a.hstack(b).vstack(&c.hstack(d))
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        assert!(rows.end <= self.rows && cols.end <= self.cols, "submatrix range");
        Mat::from_fn(self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows.start + i, cols.start + j).clone()
        })
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn column(&self, j: usize) -> Mat {
        self.select_columns(&[j])
    }

    /// Reduced row echelon form: leftmost pivot, first nonzero row below the
    /// current one is swapped up.
    pub fn rref(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| *m.get(i, c) != f.zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(&inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor == f.zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Columns form a basis of the kernel, one per free column in increasing
    /// order.
    pub fn kernel_basis(&self) -> Mat {
        let f = self.field;
        let Echelon { rref, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(f, self.cols, free.len());
        for (col, &fc) in free.iter().enumerate() {
            k.set(fc, col, f.one());
            for (row, &pc) in pivots.iter().enumerate() {
                k.set(pc, col, f.neg(rref.get(row, fc)));
            }
        }
        k
    }

    /// Basis of the column space: the pivot columns of `self`.
    pub fn column_space(&self) -> Mat {
        let piv = self.rref().pivots;
        self.select_columns(&piv)
    }

    /// Particular solution of `self * X = b` with free variables set to 0.
    pub fn solve(&self, b: &Mat) -> Result<Mat> {
        if self.field != b.field {
            return Err(Error::FieldMismatch(self.field.to_string(), b.field.to_string()));
        }
        if self.rows != b.rows {
            return Err(Error::dims("solve", self.rows, b.rows));
        }
        let f = self.field;
        let aug = self.hstack(b);
        let Echelon { rref, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = Mat::zeros(f, self.cols, b.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, rref.get(row, self.cols + j).clone());
            }
        }
        Ok(x)
    }

    /// Standard basis vectors completing the independent columns of `self`
    /// to a basis of the ambient space: those at the non-pivot positions of
    /// the echelon form of `self^T`.
    pub fn complement(&self) -> Result<Mat> {
        let f = self.field;
        let n = self.rows;
        let Echelon { pivots, .. } = self.transpose().rref();
        if pivots.len() != self.cols {
            return Err(Error::DependentColumns);
        }
        let rest: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        Ok(Mat::identity(f, n).select_columns(&rest))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let Echelon { rref, pivots } = self.hstack(&Mat::identity(self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(rref.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NotSquare("det"));
        }
        let f = self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| *m.get(i, c) != f.zero()) else {
                return Ok(f.zero());
            };
            if p != c {
                m.swap_rows(c, p);
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("nonzero pivot");
            for i in c + 1..m.rows {
                let factor = f.mul(m.get(i, c), &inv);
                if factor == f.zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
