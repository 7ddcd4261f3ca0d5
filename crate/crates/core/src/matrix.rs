//! Dense matrices over a single finite field.
//!
//! Elimination always takes the first nonzero entry in column order as the
//! pivot, so echelon forms, null-space bases and rank profiles are
//! reproducible.

use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{Field, FieldElement};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Outcome of solving `M x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<FieldElement>),
    /// Consistent, with a solution space of dimension `nullity > 0`.
    Underdetermined {
        particular: Vec<FieldElement>,
        nullity: usize,
    },
    Inconsistent,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|&a| !field.contains(a)) {
            return Err(Error::params(format!("matrix entry outside {field}")));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        mut entry: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(entry(i, j));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from integer-encoded rows. An empty row list gives a
    /// `0 x cols` matrix only through [`Matrix::zeros`]; here it yields `0 x 0`.
    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::dims("ragged rows"));
        }
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            for &v in row {
                data.push(field.element(v as u64)?);
            }
        }
        Matrix::new(field, rows.len(), cols, data)
    }

    pub fn from_row_vectors(field: &Field, cols: usize, rows: &[Vec<FieldElement>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::dims("row length differs from column count"));
        }
        Matrix::new(field, rows.len(), cols, rows.concat())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_u32_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|a| a.value()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix, `v M`.
    pub fn vec_mul(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.rows {
            return Err(Error::dims(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(c, g));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector, `M x`.
    pub fn mul_vec(&self, x: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if x.len() != self.cols {
            return Err(Error::dims(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn scale(&self, c: FieldElement) -> Matrix {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::dims("hstack needs equal row counts"));
        }
        Ok(Matrix::from_fn(
            &self.field,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j)
                } else {
                    other.get(i, j - self.cols)
                }
            },
        ))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::dims("vstack needs equal column counts"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// `[[self, 0], [0, other]]`.
    pub fn block_diag(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        Ok(Matrix::from_fn(
            &self.field,
            self.rows + other.rows,
            self.cols + other.cols,
            |i, j| match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j),
                (false, false) => other.get(i - self.rows, j - self.cols),
                _ => FieldElement::ZERO,
            },
        ))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Result<Matrix> {
        if let Some(&bad) = cols.iter().find(|&&j| j >= self.cols) {
            return Err(Error::dims(format!("column {bad} out of range")));
        }
        Ok(Matrix::from_fn(&self.field, self.rows, cols.len(), |i, j| {
            self.get(i, cols[j])
        }))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Result<Matrix> {
        if let Some(&bad) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(Error::dims(format!("row {bad} out of range")));
        }
        Ok(Matrix::from_fn(&self.field, rows.len(), self.cols, |i, j| {
            self.get(rows[i], j)
        }))
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Echelon {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(src) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, src);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                m.eliminate(i, r, factor, c);
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    /// `row[target] -= factor * row[source]`, from column `from` on.
    fn eliminate(&mut self, target: usize, source: usize, factor: FieldElement, from: usize) {
        let f = self.field.clone();
        for j in from..self.cols {
            let s = self.get(source, j);
            if s.is_zero() {
                continue;
            }
            let v = f.sub(self.get(target, j), f.mul(factor, s));
            self.set(target, j, v);
        }
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
        self.rref().rank()
    }

    /// Nonzero rows of the reduced echelon form: a canonical basis of the
    /// row space.
    pub fn row_basis(&self) -> Matrix {
        let ech = self.rref();
        let r = ech.rank();
        let mut m = ech.matrix;
        m.data.truncate(r * m.cols);
        m.rows = r;
        m
    }

    /// Rows form a basis of `{x : M x^T = 0}`; one row per free column, free
    /// columns taken in ascending order.
    pub fn nullspace_basis(&self) -> Matrix {
        let f = &self.field;
        let ech = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, FieldElement::ONE);
            for (i, &pc) in ech.pivots.iter().enumerate() {
                out.set(k, pc, f.neg(ech.matrix.get(i, fc)));
            }
        }
        out
    }

    pub fn det(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = self.field.clone();
        let mut m = self.clone();
        let mut det = FieldElement::ONE;
        for c in 0..m.cols {
            let Some(src) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(FieldElement::ZERO);
            };
            if src != c {
                m.swap_rows(c, src);
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("pivot is nonzero");
            for i in c + 1..m.rows {
                let factor = f.mul(m.get(i, c), inv);
                if !factor.is_zero() {
                    m.eliminate(i, c, factor, c);
                }
            }
        }
        Ok(det)
    }

    /// Solves `M x = b`.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Solution> {
        if b.len() != self.rows {
            return Err(Error::dims(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = Matrix::new(&self.field, self.rows, 1, b.to_vec())?;
        let ech = self.hstack(&rhs)?.rref();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut x = vec![FieldElement::ZERO; self.cols];
        for (i, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = ech.matrix.get(i, self.cols);
        }
        let nullity = self.cols - ech.rank();
        Ok(if nullity == 0 {
            Solution::Unique(x)
        } else {
            Solution::Underdetermined {
                particular: x,
                nullity,
            }
        })
    }

    /// True iff `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[FieldElement]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::dims("vector length differs from column count"));
        }
        let row = Matrix::new(&self.field, 1, self.cols, v.to_vec())?;
        Ok(self.vstack(&row)?.rank() == self.rank())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|a| a.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
