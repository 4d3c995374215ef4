//! Binary forms and their discriminants.
//!
//! A binary form of degree `d` is `sum_i c_i x1^i x0^(d-i)`. Its
//! discriminant is computed in an affine chart through the Sylvester
//! resultant of the dehomogenized polynomial and its derivative:
//!
//! ```text
//! disc(q) = (-1)^(d(d-1)/2) * Res(f, f') / lc(f)
//! ```
//!
//! which reduces to `c_1^2 - 4 c_0 c_2` for quadratics.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{Group, Monomial, MultiPoly, VarRef};
use crate::rational::{int, Rational};

/// Coefficients `c_0..c_d`, where `c_i` multiplies `x1^i x0^(d-i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<MultiPoly>,
}

/// Affine chart used to dehomogenize a binary form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// `x0 = 1`; the polynomial variable is `x1`.
    X0,
    /// `x1 = 1`; the polynomial variable is `x0`.
    X1,
    /// Unimodular change `x0 -> x0 + s x1`, then `x0 = 1`. Used when both
    /// `c_0` and `c_d` vanish.
    Shear(u32),
    /// The form is identically zero, so its discriminant is zero.
    Vanishing,
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chart::X0 => f.write_str("x0=1"),
            Chart::X1 => f.write_str("x1=1"),
            Chart::Shear(s) => write!(f, "x0->x0+{s}*x1, x0=1"),
            Chart::Vanishing => f.write_str("vanishing form"),
        }
    }
}

impl BinaryForm {
    pub fn new(coeffs: Vec<MultiPoly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("binary form needs at least one coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Result<Self> {
        Self::new(coeffs.iter().cloned().map(MultiPoly::constant).collect())
    }

    /// Reads the form off a polynomial homogeneous of degree `d` in `(x1, x0)`.
    pub fn from_poly(p: &MultiPoly, x1: VarRef, x0: VarRef, d: u32) -> Result<Self> {
        let in_pair = |v: &VarRef| *v == x1 || *v == x0;
        if !p.is_zero() && p.homogeneous_degree_by(in_pair) != Some(d) {
            return Err(Error::WrongShape(format!("polynomial is not a form of degree {d} in ({x1}, {x0})")));
        }
        let coeffs = (0..=d)
            .map(|i| p.coefficient_in(in_pair, &Monomial::from_powers([(x1, i), (x0, d - i)])))
            .collect();
        Ok(Self { coeffs })
    }

    pub fn to_poly(&self, x1: VarRef, x0: VarRef) -> MultiPoly {
        let d = self.degree() as u32;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let i = i as u32;
                c.mul_monomial(&Monomial::from_powers([(x1, i), (x0, d - i)]), &int(1))
            })
            .sum()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    /// Largest `i` with `c_i != 0`: the number of roots in the `x0 = 1` chart.
    pub fn effective_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Coefficients after `x0 -> x0 + s x1`, which preserves the discriminant.
    fn sheared(&self, s: u32) -> Vec<MultiPoly> {
        // q'(t, 1) = sum_i c_i t^i (1 + s t)^(d-i), expanded in a scratch variable.
        let t = VarRef::x(u16::MAX);
        let d = self.degree() as u32;
        let shift = &MultiPoly::one() + &MultiPoly::var(t).scale(&int(i64::from(s)));
        let expanded: MultiPoly = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let i = i as u32;
                c.mul_monomial(&Monomial::from_powers([(t, i)]), &int(1)) * shift.pow(d - i)
            })
            .sum();
        (0..=d).map(|i| expanded.coefficient_in(|v| *v == t, &Monomial::from_powers([(t, i)]))).collect()
    }
}

/// Sylvester resultant of `f` and `g`, given as ascending coefficient lists
/// whose lengths fix the formal degrees.
pub fn sylvester_resultant(f: &[MultiPoly], g: &[MultiPoly]) -> Result<MultiPoly> {
    let m = f.len().checked_sub(1).ok_or_else(|| Error::InvalidInput("empty polynomial".into()))?;
    let n = g.len().checked_sub(1).ok_or_else(|| Error::InvalidInput("empty polynomial".into()))?;
    let size = m + n;
    if size == 0 {
        return Ok(MultiPoly::one());
    }
    let mut s = PolyMatrix::zeros(size, size);
    for r in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            s.set(r, r + k, c.clone());
        }
    }
    for r in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            s.set(n + r, r + k, c.clone());
        }
    }
    s.determinant()
}

/// Sylvester-route discriminant of a univariate polynomial (ascending
/// coefficients) with nonzero leading coefficient.
fn sylvester_discriminant(f: &[MultiPoly]) -> Result<MultiPoly> {
    let d = f.len() - 1;
    let lead = &f[d];
    if lead.is_zero() {
        return Err(Error::DegenerateLeading);
    }
    let derivative: Vec<MultiPoly> =
        f.iter().enumerate().skip(1).map(|(i, c)| c.scale(&int(i as i64))).collect();
    let res = sylvester_resultant(f, &derivative)?;
    let signed = if (d * (d - 1) / 2) % 2 == 1 { -res } else { res };
    match lead.as_constant() {
        Some(c) => Ok(signed.scale(&c.recip())),
        None => signed
            .div_exact(lead)
            .ok_or_else(|| Error::InvalidInput("resultant not divisible by the leading coefficient".into())),
    }
}

/// Scratch block for the coefficients of the generic polynomial.
const GENERIC_BLOCK: u16 = u16::MAX;

fn generic_coeff(i: usize) -> VarRef {
    VarRef::new(Group::Coeff, GENERIC_BLOCK, i as u16)
}

/// Discriminant of `sum_i g_i t^i` with every `g_i` a fresh variable.
pub fn generic_discriminant(d: usize) -> Result<MultiPoly> {
    let f: Vec<MultiPoly> = (0..=d).map(|i| MultiPoly::var(generic_coeff(i))).collect();
    sylvester_discriminant(&f)
}

/// Discriminant of a univariate polynomial with nonzero leading coefficient.
///
/// Symbolic inputs go through the generic discriminant followed by
/// substitution, which avoids dividing a large resultant by a polynomial.
fn univariate_discriminant(f: &[MultiPoly]) -> Result<MultiPoly> {
    if f.iter().all(MultiPoly::is_constant) {
        return sylvester_discriminant(f);
    }
    if f[f.len() - 1].is_zero() {
        return Err(Error::DegenerateLeading);
    }
    let generic = generic_discriminant(f.len() - 1)?;
    Ok(generic
        .compose(|v| (v.group == Group::Coeff && v.block == GENERIC_BLOCK).then(|| &f[usize::from(v.index)])))
}

/// Discriminant of a binary form of degree at least 2, reporting the chart used.
///
/// Tries `x0 = 1` first, then `x1 = 1`, then shears `x0 -> x0 + s x1` for
/// `s = 1..=d+1`. A nonzero form cannot vanish at all of `(1 : s)`, so one of
/// these charts always has a nonzero leading coefficient.
pub fn binary_form_discriminant_with_chart(q: &BinaryForm) -> Result<(MultiPoly, Chart)> {
    let d = q.degree();
    if d < 2 {
        return Err(Error::WrongShape(format!("binary form of degree {d} has no discriminant")));
    }
    if q.is_zero() {
        return Ok((MultiPoly::zero(), Chart::Vanishing));
    }
    if !q.coeffs[d].is_zero() {
        return Ok((univariate_discriminant(&q.coeffs)?, Chart::X0));
    }
    if !q.coeffs[0].is_zero() {
        let reversed: Vec<MultiPoly> = q.coeffs.iter().rev().cloned().collect();
        return Ok((univariate_discriminant(&reversed)?, Chart::X1));
    }
    for s in 1..=(d as u32 + 1) {
        let sheared = q.sheared(s);
        if !sheared[d].is_zero() {
            return Ok((univariate_discriminant(&sheared)?, Chart::Shear(s)));
        }
    }
    Err(Error::DegenerateLeading)
}

pub fn binary_form_discriminant(q: &BinaryForm) -> Result<MultiPoly> {
    binary_form_discriminant_with_chart(q).map(|(disc, _)| disc)
}

/// Numeric convenience: discriminant of a form with rational coefficients.
pub fn rational_discriminant(q: &BinaryForm) -> Result<Rational> {
    binary_form_discriminant(q)?.as_constant().ok_or(Error::NotRational)
}

impl BinaryForm {
    pub fn is_numeric(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_constant)
    }

    pub fn constant_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(MultiPoly::as_constant).collect()
    }

    pub fn has_nonzero_leading(&self) -> bool {
        !self.coeffs[self.degree()].is_zero()
    }
}
