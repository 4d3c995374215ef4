//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are [`VarRef`] triples `(group, block, index)`. Point
//! coordinates live in groups `X`, `Y`, `Z`; symbolic coefficients of a
//! system live in group `Coeff`, with `block` naming the equation.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose order is
//! lexicographic with smaller `VarRef`s taking priority. That order is a
//! term order, so the last key is the leading term used by exact division.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    X,
    Y,
    Z,
    Coeff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarRef {
    pub group: Group,
    pub block: u16,
    pub index: u16,
}

/// Packing stride for the `(i, j)` pair of a bilinear coefficient `a^(k)_{i,j}`.
pub const COEFF_STRIDE: u16 = 256;

impl VarRef {
    pub const fn new(group: Group, block: u16, index: u16) -> Self {
        Self { group, block, index }
    }

    pub const fn x(i: u16) -> Self {
        Self::new(Group::X, 0, i)
    }

    pub const fn y(j: u16) -> Self {
        Self::new(Group::Y, 0, j)
    }

    pub const fn z(j: u16) -> Self {
        Self::new(Group::Z, 0, j)
    }

    /// Coefficient `a^(k)_{i,j}` of a bilinear system, `k` zero-based.
    pub const fn bilinear_coeff(k: u16, i: u16, j: u16) -> Self {
        Self::new(Group::Coeff, k, i * COEFF_STRIDE + j)
    }
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.group {
            Group::X => write!(f, "x{}", self.index),
            Group::Y => write!(f, "y{}", self.index),
            Group::Z => write!(f, "z{}", self.index),
            Group::Coeff => {
                write!(f, "a{}_{}_{}", self.block + 1, self.index / COEFF_STRIDE, self.index % COEFF_STRIDE)
            }
        }
    }
}

/// A power product, stored as `(var, exponent)` pairs sorted by var with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(VarRef, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(v: VarRef) -> Self {
        Self(vec![(v, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (VarRef, u32)>) -> Self {
        let mut map: BTreeMap<VarRef, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_default() += e;
        }
        Self(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn powers(&self) -> &[(VarRef, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: VarRef) -> u32 {
        self.0.binary_search_by(|(w, _)| w.cmp(&v)).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_by(&self, pred: impl Fn(&VarRef) -> bool) -> u32 {
        self.0.iter().filter(|(v, _)| pred(v)).map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == v {
                let d = other.0[j].1;
                if d > e {
                    return None;
                }
                if e > d {
                    out.push((v, e - d));
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < v {
                return None;
            } else {
                out.push((v, e));
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }

    /// Splits into the part over variables matching `pred` and the rest.
    pub fn split(&self, pred: impl Fn(&VarRef) -> bool) -> (Monomial, Monomial) {
        let (inside, outside): (Vec<_>, Vec<_>) = self.0.iter().partition(|(v, _)| pred(v));
        (Monomial(inside), Monomial(outside))
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(VarRef) -> String) -> fmt::Result {
        for (n, &(v, e)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            f.write_str(&name(v))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over the rationals. The empty term map is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(crate::rational::int(c))
    }

    pub fn var(v: VarRef) -> Self {
        Self::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial; `None` if any variable occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Degree restricted to the variables matching `pred` (0 for the zero polynomial).
    pub fn degree_by(&self, pred: impl Fn(&VarRef) -> bool) -> u32 {
        self.terms.keys().map(|m| m.degree_by(&pred)).max().unwrap_or(0)
    }

    pub fn degree_in_group(&self, g: Group) -> u32 {
        self.degree_by(|v| v.group == g)
    }

    /// `Some(d)` if every term has degree `d` in the variables matching `pred`.
    pub fn homogeneous_degree_by(&self, pred: impl Fn(&VarRef) -> bool) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| m.degree_by(&pred));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn variables(&self) -> Vec<VarRef> {
        let mut vars: Vec<VarRef> =
            self.terms.keys().flat_map(|m| m.powers().iter().map(|&(v, _)| v)).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, v: VarRef) -> MultiPoly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let reduced = m.div(&Monomial::var(v)).expect("exponent checked");
            out.add_term(reduced, c * crate::rational::int(i64::from(e)));
        }
        out
    }

    /// Substitutes rational values for the assigned variables; others stay symbolic.
    pub fn eval(&self, assignment: &BTreeMap<VarRef, Rational>) -> MultiPoly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in m.powers() {
                match assignment.get(&v) {
                    Some(val) => coeff *= num_traits::pow(val.clone(), e as usize),
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial(rest), coeff);
        }
        out
    }

    /// Replaces `v` by the polynomial `value`.
    pub fn substitute(&self, v: VarRef, value: &MultiPoly) -> MultiPoly {
        let mut powers: Vec<MultiPoly> = vec![Self::one()];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = powers.last().expect("nonempty") * value;
                powers.push(next);
            }
            let (_, rest) = m.split(|w| *w == v);
            out = &out + &powers[e].mul_monomial(&rest, c);
        }
        out
    }

    /// Replaces every variable for which `value` returns a polynomial.
    pub fn compose<'a>(&self, value: impl Fn(VarRef) -> Option<&'a MultiPoly>) -> MultiPoly {
        let mut powers: BTreeMap<(VarRef, u32), MultiPoly> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Self::one();
            for &(v, e) in m.powers() {
                match value(v) {
                    Some(p) => {
                        let pe = powers.entry((v, e)).or_insert_with(|| p.pow(e));
                        factor = &factor * &*pe;
                    }
                    None => kept.push((v, e)),
                }
            }
            let term = factor.mul_monomial(&Monomial(kept), c);
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        out
    }

    /// The coefficient polynomial of `part` when `self` is viewed as a
    /// polynomial in the variables matching `pred`.
    pub fn coefficient_in(&self, pred: impl Fn(&VarRef) -> bool, part: &Monomial) -> MultiPoly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(&pred);
            if &inside == part {
                out.add_term(outside, c.clone());
            }
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (lead_m, lead_c) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.terms.last_key_value() {
            let qm = m.div(lead_m)?;
            let qc = c / lead_c;
            for (t, a) in &divisor.terms {
                rem.add_term(t.mul(&qm), -(a * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn display_with<'a>(&'a self, name: &'a dyn Fn(VarRef) -> String) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, name }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    name: &'a dyn Fn(VarRef) -> String,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                m.fmt_with(f, self.name)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |v: VarRef| v.to_string();
        self.display_with(&name).fmt(f)
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<VarRef> for MultiPoly {
    fn from(v: VarRef) -> Self {
        Self::var(v)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::zero(), |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn x(i: u16) -> MultiPoly {
        MultiPoly::var(VarRef::x(i))
    }

    fn y(j: u16) -> MultiPoly {
        MultiPoly::var(VarRef::y(j))
    }

    fn a(k: u16, i: u16, j: u16) -> MultiPoly {
        MultiPoly::var(VarRef::bilinear_coeff(k, i, j))
    }

    #[test]
    fn cancellation_gives_zero() {
        let p = &x(0) + &(-&x(0));
        assert!(p.is_zero());
        assert_eq!(p, MultiPoly::zero());
    }

    #[test]
    fn difference_of_squares() {
        let p = (&x(0) + &x(1)) * (&x(0) - &x(1));
        assert_eq!(p, &x(0).pow(2) - &x(1).pow(2));
    }

    #[test]
    fn product_of_linear_forms() {
        // (a00 x0 + a10 x1)(b01 x0 + b11 x1)
        let (a00, a10, b01, b11) = (a(0, 0, 0), a(0, 1, 0), a(1, 0, 1), a(1, 1, 1));
        let p = (&a00 * &x(0) + &a10 * &x(1)) * (&b01 * &x(0) + &b11 * &x(1));
        let expected = &a00 * &b01 * x(0).pow(2)
            + (&a00 * &b11 + &a10 * &b01) * (&x(0) * &x(1))
            + &a10 * &b11 * x(1).pow(2);
        assert_eq!(p, expected);
        assert_eq!(p.num_terms(), 4);
    }

    #[test]
    fn derivatives() {
        let p = &a(0, 0, 0) * &x(0) * y(0);
        assert_eq!(p.partial_derivative(VarRef::x(0)), &a(0, 0, 0) * &y(0));
        let q = &x(0) * &y(1) + &x(1) * &y(0);
        assert_eq!(q.partial_derivative(VarRef::y(1)), x(0));
        let cube = x(0).pow(3);
        assert_eq!(cube.partial_derivative(VarRef::x(0)), x(0).pow(2).scale(&int(3)));
    }

    #[test]
    fn monomial_order_is_lex() {
        let m0 = Monomial::var(VarRef::x(0));
        let m1 = Monomial::from_powers([(VarRef::x(1), 5)]);
        let m01 = Monomial::from_powers([(VarRef::x(0), 1), (VarRef::x(1), 1)]);
        assert!(m0 > m1);
        assert!(m01 > m0);
        assert!(Monomial::one() < m1);
    }

    #[test]
    fn exact_division() {
        let f = &x(0) + &y(1);
        let g = &x(1) - &a(0, 1, 1);
        let prod = &f * &g;
        assert_eq!(prod.div_exact(&g), Some(f.clone()));
        assert_eq!((&prod + &MultiPoly::one()).div_exact(&g), None);
    }

    #[test]
    fn substitution_and_eval() {
        let p = x(0).pow(2) + &x(0) * &y(0);
        let sub = p.substitute(VarRef::x(0), &(&y(0) + &MultiPoly::one()));
        let expected = (&y(0) + &MultiPoly::one()).pow(2) + (&y(0) + &MultiPoly::one()) * y(0);
        assert_eq!(sub, expected);
        let mut assign = BTreeMap::new();
        assign.insert(VarRef::x(0), int(2));
        assign.insert(VarRef::y(0), int(3));
        assert_eq!(p.eval(&assign).as_constant(), Some(int(10)));
    }

    #[test]
    fn display() {
        let p = &x(0).pow(2) - &(&x(1) * &y(0)).scale(&crate::rational::ratio(1, 2));
        assert_eq!(p.to_string(), "x0^2 - 1/2*x1*y0");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }
}
