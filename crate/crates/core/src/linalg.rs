//! Exact linear algebra over the rationals: row reduction, null spaces, and
//! linear solves.
//!
//! Pivoting always takes the first nonzero entry in column order, so every
//! result here is reproducible bit-for-bit across runs.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::rational::{primitive_integer_vector, Rational};

/// Dense rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
}

/// Solution set of `M x = b`: `particular + span(nullspace)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Vec<Rational>,
    pub nullspace: Vec<Vec<Rational>>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Self { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_poly(m: &PolyMatrix) -> Result<Self> {
        Self::from_rows(m.to_rationals()?).map(|mut q| {
            q.cols = m.cols();
            q
        })
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

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rref(&self) -> RowEchelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead_row = 0;
        for col in 0..m.cols {
            if lead_row == m.rows {
                break;
            }
            let Some(pivot_row) = (lead_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(lead_row, pivot_row);
            let inv = Rational::one() / m.get(lead_row, col);
            for c in col..m.cols {
                let v = m.get(lead_row, c) * &inv;
                m.set(lead_row, c, v);
            }
            for r in 0..m.rows {
                if r == lead_row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let sub = m.get(lead_row, c);
                    if sub.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c) - &factor * sub;
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            lead_row += 1;
        }
        RowEchelon { matrix: m, pivots }
    }

    /// Determinant by exact Gaussian elimination.
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..m.cols {
            let Some(pivot_row) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(Rational::zero());
            };
            if pivot_row != col {
                m.swap_rows(col, pivot_row);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..m.rows {
                let factor = m.get(r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space, each vector primitive integral with
    /// positive first nonzero entry. Empty iff the matrix has full column rank.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let RowEchelon { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, f).clone();
                }
                primitive_integer_vector(&v)
            })
            .collect()
    }

    /// Solves `self * x = rhs`, setting free variables to zero in the particular solution.
    pub fn solve(&self, rhs: &[Rational]) -> Result<LinearSolution> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let mut augmented = QMatrix::zeros(self.rows, self.cols + 1);
        for (r, b) in rhs.iter().enumerate() {
            for c in 0..self.cols {
                augmented.set(r, c, self.get(r, c).clone());
            }
            augmented.set(r, self.cols, b.clone());
        }
        let RowEchelon { matrix, pivots } = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut particular = vec![Rational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            particular[p] = matrix.get(r, self.cols).clone();
        }
        Ok(LinearSolution { particular, nullspace: self.kernel_basis() })
    }
}

/// Right null space of a matrix with constant entries.
pub fn kernel_basis(m: &PolyMatrix) -> Result<Vec<Vec<Rational>>> {
    Ok(QMatrix::from_poly(m)?.kernel_basis())
}

/// Exact solution set of `m * x = rhs` for a matrix with constant entries.
pub fn solve_linear(m: &PolyMatrix, rhs: &[Rational]) -> Result<LinearSolution> {
    QMatrix::from_poly(m)?.solve(rhs)
}
