//! Dense matrices over an exact field: products, rank, kernels.

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldValue};

/// A dense `rows × cols` matrix with entries in a single field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldDescriptor,
    entries: Vec<FieldValue>, // row-major
}

impl Matrix {
    pub fn zeros(field: FieldDescriptor, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![FieldValue::zero(&field); rows * cols],
        }
    }

    pub fn identity(field: FieldDescriptor, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            *m.get_mut(i, i) = FieldValue::one(&field);
        }
        m
    }

    pub fn from_fn(
        field: FieldDescriptor,
        rows: usize,
        cols: usize,
        mut entry: impl FnMut(usize, usize) -> FieldValue,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(entry(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<FieldValue>>) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(Error::EmptySet);
        }
        let ncols = rows[0].len();
        let field = rows
            .iter()
            .flatten()
            .next()
            .map(|v| v.descriptor())
            .ok_or(Error::EmptySet)?;
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    got: row.len(),
                });
            }
            for v in row {
                if v.descriptor() != field {
                    return Err(Error::MixedFields);
                }
                entries.push(v.clone());
            }
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            field,
            entries,
        })
    }

    pub fn from_cols(cols: Vec<Vec<FieldValue>>) -> Result<Self> {
        Ok(Matrix::from_rows(cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldValue {
        &self.entries[r * self.cols + c]
    }

    fn get_mut(&mut self, r: usize, c: usize) -> &mut FieldValue {
        &mut self.entries[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<FieldValue> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldValue::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        Ok(Matrix::from_fn(self.field, self.rows, other.cols, |r, c| {
            let mut acc = FieldValue::zero(&self.field);
            for k in 0..self.cols {
                acc = &acc + &(self.get(r, k) * other.get(k, c));
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[FieldValue]) -> Result<Vec<FieldValue>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = FieldValue::zero(&self.field);
            for (c, entry) in v.iter().enumerate() {
                acc = acc.try_add(&self.get(r, c).try_mul(entry)?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: other.rows,
            });
        }
        Ok(Matrix::from_fn(
            self.field,
            self.rows,
            self.cols + other.cols,
            |r, c| {
                if c < self.cols {
                    self.get(r, c).clone()
                } else {
                    other.get(r, c - self.cols).clone()
                }
            },
        ))
    }

    /// Reduced row echelon form, returned with the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            for k in 0..m.cols {
                m.entries.swap(r * m.cols + k, pr * m.cols + k);
            }
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for k in 0..m.cols {
                *m.get_mut(r, k) = m.get(r, k) * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let factor = m.get(i, c).clone();
                    for k in 0..m.cols {
                        *m.get_mut(i, k) = m.get(i, k) - &(&factor * m.get(r, k));
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

    /// A basis of the right kernel `{v : Mv = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldValue>> {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![FieldValue::zero(&self.field); self.cols];
            v[fc] = FieldValue::one(&self.field);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = rref.get(row, fc).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Whether the column spans of two matrices with equal row count agree.
    pub fn same_column_span(&self, other: &Matrix) -> Result<bool> {
        let stacked = self.hstack(other)?;
        let r = self.rank();
        Ok(r == other.rank() && r == stacked.rank())
    }
}
