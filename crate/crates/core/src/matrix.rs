//! Dense matrices with polynomial entries.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::MultiPoly;
use crate::rational::Rational;

/// Largest square size accepted by [`PolyMatrix::determinant`].
pub const MAX_DET_SIZE: usize = 8;
/// Largest square size accepted by [`PolyMatrix::permanent`].
pub const MAX_PERM_SIZE: usize = 12;

/// Row-major matrix of [`MultiPoly`] entries. Rational matrices are the constant case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<MultiPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| MultiPoly::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { MultiPoly::one() } else { MultiPoly::zero() })
    }

    /// Builds a rational matrix; panics on ragged input.
    pub fn from_rationals(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self::from_fn(rows.len(), cols, |r, c| MultiPoly::constant(rows[r][c].clone()))
    }

    pub fn from_ints<const C: usize>(rows: &[[i64; C]]) -> Self {
        Self::from_fn(rows.len(), C, |r, c| MultiPoly::int(rows[r][c]))
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

    pub fn get(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: MultiPoly) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[MultiPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn transpose(&self) -> PolyMatrix {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        Self::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e.scale(c)).collect() }
    }

    pub fn mul_vec(&self, v: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn mul_rational_vec(&self, v: &[Rational]) -> Result<Vec<MultiPoly>> {
        let v: Vec<MultiPoly> = v.iter().cloned().map(MultiPoly::constant).collect();
        self.mul_vec(&v)
    }

    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_constant)
    }

    pub fn to_rationals(&self) -> Result<Vec<Vec<Rational>>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|e| e.as_constant().ok_or(Error::NotRational)).collect())
            .collect()
    }

    /// Exact determinant. Constant matrices of any size use Gaussian
    /// elimination over the rationals; polynomial matrices up to
    /// [`MAX_DET_SIZE`] use Laplace expansion with memoized minors.
    ///
    /// `minors[mask]` holds the determinant of the bottom `popcount(mask)` rows
    /// restricted to the columns in `mask`; each mask is expanded along its top row.
    pub fn determinant(&self) -> Result<MultiPoly> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        if self.is_rational() {
            return QMatrix::from_poly(self)?.determinant().map(MultiPoly::constant);
        }
        let n = self.rows;
        if n > MAX_DET_SIZE {
            return Err(Error::TooLarge { size: n, limit: MAX_DET_SIZE });
        }
        let mut minors: Vec<MultiPoly> = Vec::with_capacity(1 << n);
        minors.push(MultiPoly::one());
        for mask in 1usize..(1 << n) {
            let row = n - mask.count_ones() as usize;
            let mut acc = MultiPoly::zero();
            let mut position = 0;
            for col in 0..n {
                if mask & (1 << col) == 0 {
                    continue;
                }
                let entry = self.get(row, col);
                let minor = &minors[mask & !(1 << col)];
                if !entry.is_zero() && !minor.is_zero() {
                    let term = entry * minor;
                    acc = if position % 2 == 0 { acc + term } else { acc - term };
                }
                position += 1;
            }
            minors.push(acc);
        }
        Ok(minors.pop().expect("at least one mask"))
    }

    /// Exact permanent by Ryser's inclusion-exclusion formula with Gray-code row sums.
    pub fn permanent(&self) -> Result<MultiPoly> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n > MAX_PERM_SIZE {
            return Err(Error::TooLarge { size: n, limit: MAX_PERM_SIZE });
        }
        if let Ok(q) = self.to_rationals() {
            return Ok(MultiPoly::constant(ryser(&q)));
        }
        let rows: Vec<Vec<MultiPoly>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        Ok(ryser(&rows))
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

trait RingElem: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl RingElem for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl RingElem for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

fn ryser<T: RingElem>(a: &[Vec<T>]) -> T {
    let n = a.len();
    if n == 0 {
        return T::one();
    }
    let mut row_sums = vec![T::zero(); n];
    let mut total = T::zero();
    for step in 1usize..(1 << n) {
        let col = step.trailing_zeros() as usize;
        let gray = step ^ (step >> 1);
        let adding = gray & (1 << col) != 0;
        for (r, sum) in row_sums.iter_mut().enumerate() {
            *sum = if adding { sum.add(&a[r][col]) } else { sum.sub(&a[r][col]) };
        }
        if row_sums.iter().any(RingElem::is_zero_elem) {
            continue;
        }
        let prod = row_sums[1..].iter().fold(row_sums[0].clone(), |acc, s| acc.mul(s));
        // sign (-1)^(n - |S|)
        if (n - gray.count_ones() as usize).is_multiple_of(2) {
            total = total.add(&prod);
        } else {
            total = total.add(&prod.neg());
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarRef;
    use crate::rational::int;

    fn v(i: u16) -> MultiPoly {
        MultiPoly::var(VarRef::x(i))
    }

    #[test]
    fn identity_determinant() {
        assert_eq!(PolyMatrix::identity(3).determinant().unwrap(), MultiPoly::one());
    }

    #[test]
    fn symbolic_two_by_two() {
        let m = PolyMatrix::new(2, 2, vec![v(0), v(1), v(2), v(3)]).unwrap();
        assert_eq!(m.determinant().unwrap(), &v(0) * &v(3) - &v(1) * &v(2));
    }

    #[test]
    fn non_square_rejected() {
        let m = PolyMatrix::zeros(2, 3);
        assert_eq!(m.determinant(), Err(Error::NonSquare { rows: 2, cols: 3 }));
        assert_eq!(m.permanent(), Err(Error::NonSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn size_limits() {
        let mut symbolic = PolyMatrix::identity(9);
        symbolic.set(2, 3, v(0));
        assert!(matches!(symbolic.determinant(), Err(Error::TooLarge { .. })));
        assert_eq!(PolyMatrix::identity(12).determinant().unwrap().as_constant(), Some(int(1)));
        assert!(matches!(PolyMatrix::identity(13).permanent(), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn small_permanents() {
        let ones2 = PolyMatrix::from_ints(&[[1, 1], [1, 1]]);
        assert_eq!(ones2.permanent().unwrap().as_constant(), Some(int(2)));
        let ones3 = PolyMatrix::from_ints(&[[1, 1, 1], [1, 1, 1], [1, 1, 1]]);
        assert_eq!(ones3.permanent().unwrap().as_constant(), Some(int(6)));
        let m = PolyMatrix::new(2, 2, vec![v(0), v(1), v(2), v(3)]).unwrap();
        assert_eq!(m.permanent().unwrap(), &v(0) * &v(3) + &v(1) * &v(2));
    }

    #[test]
    fn permanent_of_identity_and_zero_row() {
        assert_eq!(PolyMatrix::identity(5).permanent().unwrap(), MultiPoly::one());
        let m = PolyMatrix::from_ints(&[[1, 2, 3], [0, 0, 0], [4, 5, 6]]);
        assert!(m.permanent().unwrap().is_zero());
    }

    #[test]
    fn symmetric_check() {
        assert!(PolyMatrix::from_ints(&[[1, 2], [2, 5]]).is_symmetric());
        assert!(!PolyMatrix::from_ints(&[[1, 2], [3, 5]]).is_symmetric());
    }
}
