//! Dense matrices over a finite field with exact Gaussian elimination.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{ElementStyle, FieldCtx, Gf};

#[derive(Clone)]
pub struct Matrix {
    field: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    data: Vec<Gf>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{self}", self.rows, self.cols)
    }
}

fn dim_err<T>(msg: String) -> Result<T> {
    Err(Error::DimensionMismatch(msg))
}

impl Matrix {
    pub fn zero(field: &Arc<FieldCtx>, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Arc<FieldCtx>, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from equal-length rows; `cols` is needed for zero rows.
    pub fn from_rows(field: &Arc<FieldCtx>, cols: usize, rows: &[Vec<Gf>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return dim_err(format!("row of length {} in a matrix with {cols} columns", r.len()));
            }
            if r.iter().any(|c| c.field_id() != field.id()) {
                return Err(Error::FieldMismatch);
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data })
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Gf {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Gf) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Gf] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Gf>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field.id() == other.field.id() {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return dim_err(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let data = self.data.iter().zip(&other.data).map(|(&x, &y)| self.field.add(x, y)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return dim_err(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let f = &self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let x = self.get(i, l);
                if x.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(x, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Gf]) -> Result<Vec<Gf>> {
        let m = Matrix::from_rows(&self.field, v.len(), &[v.to_vec()])?;
        Ok(m.mul(self)?.data)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return dim_err(format!("stacking {} and {} columns", self.cols, other.cols));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { data, rows: self.rows + other.rows, ..self.clone() })
    }

    /// Reduced row echelon form and pivot columns. Pivots are chosen as the
    /// leftmost column with a nonzero entry, taking the first such row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, col)).expect("pivot is nonzero");
            for j in col..m.cols {
                let v = f.mul(inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, col);
                if i == r || factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the row space in reduced echelon form.
    pub fn row_basis(&self) -> Matrix {
        let (m, pivots) = self.rref();
        let rows: Vec<Vec<Gf>> = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Matrix::from_rows(&self.field, self.cols, &rows).expect("same shape")
    }

    pub fn row_space_equal(&self, other: &Matrix) -> bool {
        self.cols == other.cols && self.row_basis() == other.row_basis()
    }

    /// Whether the row space of `other` lies in the row space of `self`.
    pub fn row_space_contains(&self, other: &Matrix) -> Result<bool> {
        Ok(self.stack(other)?.rank() == self.rank())
    }

    /// Rows spanning `{v : self · v^T = 0}`.
    pub fn right_kernel(&self) -> Matrix {
        let f = &self.field;
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let rows: Vec<Vec<Gf>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect();
        Matrix::from_rows(f, self.cols, &rows).expect("same shape")
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return dim_err(format!("inverse of a {}x{} matrix", self.rows, self.cols));
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, f.one());
        }
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::InvalidArgument("matrix is singular".into()));
        }
        let mut inv = Matrix::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, m.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// Entries rendered as strings, row by row.
    pub fn to_strings(&self, style: ElementStyle) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&c| self.field.format(c, style)).collect())
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings(ElementStyle::Power);
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}
