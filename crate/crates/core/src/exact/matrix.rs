//! Dense matrices over the rationals.

use super::rational::{int, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("ragged rows: row {row} has length {len}, expected {expected}")]
    Ragged {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Row-major dense matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.data[i * size + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is only consulted when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self, MatrixError> {
        let width = rows.first().map_or(cols, Vec::len);
        let height = rows.len();
        let mut data = Vec::with_capacity(height * width);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != width {
                return Err(MatrixError::Ragged {
                    row: i,
                    len: row.len(),
                    expected: width,
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: height,
            cols: width,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let converted = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(converted, 0)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|r| super::rational::dot(self.row(r), v))
            .collect()
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn hstack(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.rows != other.rows {
            return Err(MatrixError::Shape(format!(
                "hstack of {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Self {
            rows: self.rows,
            cols,
            data,
        })
    }

    pub fn select_columns(&self, columns: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * columns.len());
        for r in 0..self.rows {
            for &c in columns {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.rows,
            cols: columns.len(),
            data,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Self {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = m.get(lead, col).recip();
            for c in col..m.cols {
                let v = m.get(lead, c) * &inv;
                m.set(lead, c, v);
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let sub = m.get(lead, c);
                    if sub.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c) - &factor * sub;
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Rank over the rationals by forward Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let pivot = m.get(rank, col).clone();
            for r in rank + 1..m.rows {
                let entry = m.get(r, col);
                if entry.is_zero() {
                    continue;
                }
                let factor = entry / &pivot;
                for c in col..m.cols {
                    let sub = m.get(rank, c);
                    if sub.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c) - &factor * sub;
                    m.set(r, c, v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right kernel, returned as the columns of a
    /// `cols x (cols - rank)` matrix.
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, Rational::one());
            for (i, &p) in pivots.iter().enumerate() {
                let v = -r.get(i, f).clone();
                basis.set(p, k, v);
            }
        }
        basis
    }

    /// Solves `self * x = rhs`; returns one solution or `None` when inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length must match rows");
        let mut aug = self.clone();
        let rhs_col = RationalMatrix {
            rows: self.rows,
            cols: 1,
            data: rhs.to_vec(),
        };
        aug = aug.hstack(&rhs_col).expect("row counts match");
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Multiplies each row by the lcm of its denominators, giving an integer matrix
    /// with the same row space.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = super::rational::common_denominator(row.iter());
                row.iter()
                    .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
                    .collect()
            })
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.is_integer())
    }

    pub fn max_abs(&self) -> Rational {
        self.data
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn m(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn identity_rank_and_kernel() {
        let id = RationalMatrix::identity(3);
        assert_eq!(id.rank(), 3);
        assert_eq!(id.nullspace().cols(), 0);
    }

    #[test]
    fn kernel_of_ones_row() {
        let k = m(&[vec![1, 1]]).nullspace();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![int(-1), int(1)]);
    }

    #[test]
    fn boundary_of_triangle_has_one_cycle() {
        // vertices a,b,c; edges ab, ac, bc
        let d1 = m(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        assert_eq!(d1.nullspace().cols(), 1);
        assert_eq!(d1.rank(), 2);
    }

    #[test]
    fn entry_count_checked() {
        assert!(RationalMatrix::new(2, 2, vec![int(1)]).is_err());
        assert!(RationalMatrix::from_rows(vec![vec![int(1)], vec![]], 0).is_err());
    }

    #[test]
    fn solve_and_inconsistent() {
        let a = m(&[vec![1, 2], vec![3, 4]]);
        let x = a.solve(&[int(5), int(6)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![int(5), int(6)]);
        let singular = m(&[vec![1, 1], vec![2, 2]]);
        assert!(singular.solve(&[int(1), int(3)]).is_none());
        assert_eq!(singular.solve(&[int(1), int(2)]).unwrap().len(), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let a = RationalMatrix::from_rows(
            vec![vec![rat(1, 2), rat(1, 3)], vec![rat(3, 2), int(1)]],
            0,
        )
        .unwrap();
        assert_eq!(a.rank(), 1);
        assert_eq!(a.integer_rows()[0], vec![BigInt::from(3), BigInt::from(2)]);
    }
}
