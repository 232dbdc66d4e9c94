//! Dense matrices over a [`Field`] with exact rank, kernel, solve and
//! determinant. Over `Q` rank and determinant use fraction-free (Bareiss)
//! elimination on integer rows; elsewhere plain Gaussian elimination.
//! Pivots are always the first nonzero entry in column order.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Field, FieldElement};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Row-major construction; every row must have `cols` entries.
    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            if row.iter().any(|e| e.field() != field) {
                return Err(Error::DimensionMismatch(format!("row {i} mixes fields")));
            }
            entries.extend(row);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: n,
            cols,
            entries,
        })
    }

    pub fn from_i64s(field: &Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, data).expect("ragged integer matrix")
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

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Rows of entry literals.
    pub fn to_json(&self) -> serde_json::Value {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(FieldElement::to_json)
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn add(&self, o: &Matrix) -> Result<Matrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = out.get(i, j) + &(a * o.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        if self.field.is_finite() {
            self.rref().1.len()
        } else {
            bareiss(&self.integer_rows()).0
        }
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        if self.rows == 0 {
            return Ok(self.field.one());
        }
        if !self.field.is_finite() {
            // scale rows to integers, take the Bareiss determinant, undo the scaling
            let mut scale = BigRational::one();
            let int_rows: Vec<Vec<BigInt>> = (0..self.rows)
                .map(|i| {
                    let (row, den) = integer_row(self.row(i));
                    scale *= BigRational::from(den);
                    row
                })
                .collect();
            let (rank, det) = bareiss(&int_rows);
            if rank < self.rows {
                return Ok(self.field.zero());
            }
            return self.field.from_rational(&(BigRational::from(det) / scale));
        }
        let mut a = self.row_vecs();
        let n = self.rows;
        let mut det = self.field.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(self.field.zero());
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det = &det * &p;
            let pinv = p.inv().unwrap();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] * &pinv;
                for c in col..n {
                    let v = &a[r][c] - &(&factor * &a[col][c]);
                    a[r][c] = v;
                }
            }
        }
        Ok(det)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.row_vecs();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(piv, r);
            let inv = a[r][col].inv().unwrap();
            for c in col..self.cols {
                a[r][c] = &a[r][c] * &inv;
            }
            for i in 0..self.rows {
                if i == r || a[i][col].is_zero() {
                    continue;
                }
                let factor = a[i][col].clone();
                for c in col..self.cols {
                    let v = &a[i][c] - &(&factor * &a[r][c]);
                    a[i][c] = v;
                }
            }
            pivots.push(col);
            r += 1;
        }
        let m = Matrix::from_rows(&self.field, self.cols, a).unwrap();
        (m, pivots)
    }

    /// Basis of the right kernel `{v : M v = 0}`; one vector per free column,
    /// with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(i, free);
            }
            out.push(v);
        }
        out
    }

    /// Some `x` with `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let augmented: Vec<Vec<FieldElement>> = (0..self.rows)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect();
        let aug = Matrix::from_rows(&self.field, self.cols + 1, augmented)?;
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| integer_row(self.row(i)).0).collect()
    }
}

/// Clears denominators of a rational row; returns the integer row and the
/// positive multiplier used.
fn integer_row(row: &[FieldElement]) -> (Vec<BigInt>, BigInt) {
    let den = row.iter().fold(BigInt::one(), |acc, e| {
        acc.lcm(e.as_rational().expect("rational entry").denom())
    });
    let ints = row
        .iter()
        .map(|e| {
            let r = e.as_rational().unwrap();
            r.numer() * (&den / r.denom())
        })
        .collect();
    (ints, den)
}

/// Fraction-free elimination. Returns the rank and, for square full-rank
/// input, the determinant.
fn bareiss(rows: &[Vec<BigInt>]) -> (usize, BigInt) {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    let mut a = rows.to_vec();
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    let mut r = 0;
    for col in 0..m {
        if r == n {
            break;
        }
        let Some(piv) = (r..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if piv != r {
            a.swap(piv, r);
            sign = -sign;
        }
        for i in r + 1..n {
            for c in col + 1..m {
                let v = (&a[r][col] * &a[i][c] - &a[i][col] * &a[r][c]) / &prev;
                a[i][c] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    let det = if r == n && n == m {
        prev * sign
    } else {
        BigInt::zero()
    };
    (r, det)
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
