//! Derivative matrices of a bilinear system and their maximal minors.
//!
//! For the `x` variant, row `(k, l)` holds the coefficients of `y_0..y_m` in
//! `∂F_k/∂x_l`, i.e. `a^(k)_{l,0..m}`. The `y` variant is the same with the
//! roles of the groups swapped. If the maximal minors of one variant vanish,
//! its kernel vector `u` gives a point where every `F_k` vanishes for all
//! values of the other group, so the discriminant vanishes.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::Rng;

use crate::bilinear::{disc_p11, BilinearSystem};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::matrix::PolyMatrix;
use crate::poly::{Monomial, MultiPoly};
use crate::rational::Rational;
use crate::sampling::random_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivGroup {
    X,
    Y,
}

impl std::str::FromStr for DerivGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(Self::X),
            "y" | "Y" => Ok(Self::Y),
            _ => Err(Error::InvalidInput(format!("unknown group {s:?}, expected x or y"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeMatrix {
    pub group: DerivGroup,
    pub matrix: PolyMatrix,
    /// `(k, l)` for each row: equation `k`, derivative variable index `l`.
    pub row_index: Vec<(usize, usize)>,
}

impl DerivativeMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn row_of(&self, k: usize, l: usize) -> Option<usize> {
        self.row_index.iter().position(|&e| e == (k, l))
    }

    pub fn maximal_minors(&self) -> Result<Vec<MultiPoly>> {
        maximal_minors(&self.matrix)
    }
}

pub fn derivative_matrix(sys: &BilinearSystem, group: DerivGroup) -> DerivativeMatrix {
    let (n, m) = (sys.n(), sys.m());
    let (derivs, cols) = match group {
        DerivGroup::X => (n + 1, m + 1),
        DerivGroup::Y => (m + 1, n + 1),
    };
    let row_index: Vec<(usize, usize)> =
        (0..sys.num_equations()).flat_map(|k| (0..derivs).map(move |l| (k, l))).collect();
    let matrix = PolyMatrix::from_fn(row_index.len(), cols, |r, c| {
        let (k, l) = row_index[r];
        match group {
            DerivGroup::X => sys.coeff(k, l, c).clone(),
            DerivGroup::Y => sys.coeff(k, c, l).clone(),
        }
    });
    DerivativeMatrix { group, matrix, row_index }
}

/// All `size`-element subsets of `0..n` in lexicographic order.
pub fn row_subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    let mut current: Vec<usize> = (0..size).collect();
    loop {
        out.push(current.clone());
        let Some(i) = (0..size).rev().find(|&i| current[i] < n - size + i) else {
            return out;
        };
        current[i] += 1;
        for j in i + 1..size {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// Determinants of all maximal square submatrices, by lexicographic row subset.
pub fn maximal_minors(m: &PolyMatrix) -> Result<Vec<MultiPoly>> {
    if m.rows() < m.cols() {
        return Err(Error::WrongShape(format!(
            "maximal minors need rows >= cols, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let cols: Vec<usize> = (0..m.cols()).collect();
    row_subsets(m.rows(), m.cols()).iter().map(|rows| m.submatrix(rows, &cols).determinant()).collect()
}

/// Maximum number of draws before [`rank_deficient_sample`] gives up.
pub const MAX_SAMPLE_ATTEMPTS: usize = 100;

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Draws a system whose `group` derivative matrix has `u` in its kernel:
/// each row is a random rational vector minus its projection onto `u`.
pub fn rank_deficient_sample<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    group: DerivGroup,
    u: &[Rational],
    rng: &mut R,
) -> Result<BilinearSystem> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("n and m must be positive".into()));
    }
    let (derivs, cols) = match group {
        DerivGroup::X => (n + 1, m + 1),
        DerivGroup::Y => (m + 1, n + 1),
    };
    if u.len() != cols {
        return Err(Error::DimensionMismatch(format!(
            "kernel vector has length {}, expected {cols}",
            u.len()
        )));
    }
    let uu = dot(u, u);
    if uu.is_zero() {
        return Err(Error::InvalidInput("kernel vector must be nonzero".into()));
    }
    for _ in 0..MAX_SAMPLE_ATTEMPTS {
        let rows: Vec<Vec<Rational>> = (0..(n + m) * derivs)
            .map(|_| {
                let r: Vec<Rational> = (0..cols).map(|_| random_rational(rng)).collect();
                let t = dot(&r, u) / &uu;
                r.iter().zip(u).map(|(ri, ui)| ri - &t * ui).collect()
            })
            .collect();
        let sys = BilinearSystem::from_fn(n, m, |k, i, j| {
            let (l, c) = match group {
                DerivGroup::X => (i, j),
                DerivGroup::Y => (j, i),
            };
            MultiPoly::constant(rows[k * derivs + l][c].clone())
        });
        if !sys.has_zero_equation() {
            return Ok(sys);
        }
    }
    Err(Error::DegenerateSample { attempts: MAX_SAMPLE_ATTEMPTS })
}

/// An expression of the `n = m = 1` discriminant in the product of the two
/// minor ideals: `Δ = Σ c_ij M_i N_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductIdealCertificate {
    /// `c_ij` for every pair `(i, j)`, zero-based, including zeros.
    pub coefficients: BTreeMap<(usize, usize), Rational>,
    /// `Δ - Σ c_ij M_i N_j`.
    pub residual: MultiPoly,
    /// Maximal minors of the `x` derivative matrix.
    pub x_minors: Vec<MultiPoly>,
    /// Maximal minors of the `y` derivative matrix.
    pub y_minors: Vec<MultiPoly>,
    /// The discriminant being certified.
    pub discriminant: MultiPoly,
    /// Dimension of the family of certificates.
    pub nullity: usize,
}

impl ProductIdealCertificate {
    pub fn nonzero_coefficients(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.coefficients.iter().filter(|(_, c)| !c.is_zero())
    }
}

/// Solves for the coefficients `c_ij` over the monomial basis of the fully
/// symbolic `n = m = 1` system. Free parameters of the solution family are
/// set to zero.
pub fn product_ideal_certificate() -> Result<ProductIdealCertificate> {
    let sys = BilinearSystem::symbolic(1, 1);
    let discriminant = disc_p11(&sys)?;
    let x_minors = derivative_matrix(&sys, DerivGroup::X).maximal_minors()?;
    let y_minors = derivative_matrix(&sys, DerivGroup::Y).maximal_minors()?;
    let pairs: Vec<(usize, usize)> =
        (0..x_minors.len()).flat_map(|i| (0..y_minors.len()).map(move |j| (i, j))).collect();
    let products: Vec<MultiPoly> = pairs.iter().map(|&(i, j)| &x_minors[i] * &y_minors[j]).collect();

    let basis: Vec<Monomial> = products
        .iter()
        .chain(std::iter::once(&discriminant))
        .flat_map(|p| p.terms().map(|(mono, _)| mono.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rows: Vec<Vec<Rational>> =
        basis.iter().map(|mono| products.iter().map(|p| p.coefficient(mono)).collect()).collect();
    let rhs: Vec<Rational> = basis.iter().map(|mono| discriminant.coefficient(mono)).collect();
    let solution = match QMatrix::from_rows(rows)?.solve(&rhs) {
        Err(Error::Inconsistent) => return Err(Error::NoCertificate),
        other => other?,
    };

    let combination: MultiPoly = products.iter().zip(&solution.particular).map(|(p, c)| p.scale(c)).sum();
    let residual = &discriminant - &combination;
    let coefficients = pairs.into_iter().zip(solution.particular).collect();
    Ok(ProductIdealCertificate {
        coefficients,
        residual,
        x_minors,
        y_minors,
        discriminant,
        nullity: solution.nullspace.len(),
    })
}
