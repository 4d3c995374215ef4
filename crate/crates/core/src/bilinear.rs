//! Bilinear systems `F_k = sum_{i,j} a^(k)_{i,j} x_i y_j`, `k = 0..n+m`, on
//! `P^n x P^m`.
//!
//! Equation indices `k` are zero-based throughout. Coefficients are
//! [`MultiPoly`] values: constants for numeric systems, [`Group::Coeff`]
//! variables for the fully symbolic system used in identity checks.

use rand::Rng;

use crate::binary_form::{binary_form_discriminant, BinaryForm};
use crate::error::{Error, Result};
use crate::matrix::{PolyMatrix, MAX_DET_SIZE};
use crate::poly::{Group, MultiPoly, VarRef, COEFF_STRIDE};
use crate::rational::{int, Rational};
use crate::sampling::random_rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearSystem {
    n: usize,
    m: usize,
    /// Flattened `[k][i][j]`, shape `(n+m) x (n+1) x (m+1)`.
    coeffs: Vec<MultiPoly>,
}

impl BilinearSystem {
    /// Builds a system from a `[k][i][j]` coefficient tensor.
    pub fn new(n: usize, m: usize, coeffs: Vec<Vec<Vec<MultiPoly>>>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::WrongShape("n and m must be positive".into()));
        }
        if coeffs.len() != n + m {
            return Err(Error::WrongShape(format!("expected {} equations, found {}", n + m, coeffs.len())));
        }
        let mut flat = Vec::with_capacity((n + m) * (n + 1) * (m + 1));
        for (k, eq) in coeffs.into_iter().enumerate() {
            if eq.len() != n + 1 || eq.iter().any(|row| row.len() != m + 1) {
                return Err(Error::WrongShape(format!(
                    "equation {k} must have a {}x{} coefficient table",
                    n + 1,
                    m + 1
                )));
            }
            flat.extend(eq.into_iter().flatten());
        }
        Ok(Self { n, m, coeffs: flat })
    }

    pub fn from_rationals(n: usize, m: usize, coeffs: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let coeffs = coeffs
            .into_iter()
            .map(|eq| eq.into_iter().map(|row| row.into_iter().map(MultiPoly::constant).collect()).collect())
            .collect();
        Self::new(n, m, coeffs)
    }

    pub fn from_ints(n: usize, m: usize, coeffs: &[Vec<Vec<i64>>]) -> Result<Self> {
        let coeffs = coeffs
            .iter()
            .map(|eq| eq.iter().map(|row| row.iter().map(|&v| int(v)).collect()).collect())
            .collect();
        Self::from_rationals(n, m, coeffs)
    }

    /// Every coefficient `a^(k)_{i,j}` is its own variable.
    pub fn symbolic(n: usize, m: usize) -> Self {
        let limit = usize::from(COEFF_STRIDE);
        assert!(n < limit && m < limit, "symbolic systems need n, m < {limit}");
        Self::from_fn(n, m, |k, i, j| MultiPoly::var(VarRef::bilinear_coeff(k as u16, i as u16, j as u16)))
    }

    pub fn random<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Self {
        Self::from_fn(n, m, |_, _, _| MultiPoly::constant(random_rational(rng)))
    }

    pub fn from_fn(n: usize, m: usize, mut f: impl FnMut(usize, usize, usize) -> MultiPoly) -> Self {
        assert!(n > 0 && m > 0, "group dimensions must be positive");
        let mut coeffs = Vec::with_capacity((n + m) * (n + 1) * (m + 1));
        for k in 0..n + m {
            for i in 0..=n {
                for j in 0..=m {
                    coeffs.push(f(k, i, j));
                }
            }
        }
        Self { n, m, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_equations(&self) -> usize {
        self.n + self.m
    }

    fn offset(&self, k: usize, i: usize, j: usize) -> usize {
        (k * (self.n + 1) + i) * (self.m + 1) + j
    }

    pub fn coeff(&self, k: usize, i: usize, j: usize) -> &MultiPoly {
        &self.coeffs[self.offset(k, i, j)]
    }

    pub fn set_coeff(&mut self, k: usize, i: usize, j: usize, value: MultiPoly) {
        let o = self.offset(k, i, j);
        self.coeffs[o] = value;
    }

    pub fn is_numeric(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_constant)
    }

    /// The `[k][i][j]` tensor of constant coefficients, if the system is numeric.
    pub fn rational_coeffs(&self) -> Result<Vec<Vec<Vec<Rational>>>> {
        (0..self.num_equations())
            .map(|k| {
                (0..=self.n)
                    .map(|i| {
                        (0..=self.m)
                            .map(|j| self.coeff(k, i, j).as_constant().ok_or(Error::NotRational))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn equation(&self, k: usize) -> MultiPoly {
        let mut f = MultiPoly::zero();
        for i in 0..=self.n {
            for j in 0..=self.m {
                let c = self.coeff(k, i, j);
                if c.is_zero() {
                    continue;
                }
                f = f + c * &(MultiPoly::var(VarRef::x(i as u16)) * MultiPoly::var(VarRef::y(j as u16)));
            }
        }
        f
    }

    pub fn equations(&self) -> Vec<MultiPoly> {
        (0..self.num_equations()).map(|k| self.equation(k)).collect()
    }

    /// True if some equation has all coefficients zero.
    pub fn has_zero_equation(&self) -> bool {
        (0..self.num_equations())
            .any(|k| (0..=self.n).all(|i| (0..=self.m).all(|j| self.coeff(k, i, j).is_zero())))
    }

    /// Multiplies every coefficient of equation `k` by `t`.
    pub fn scale_equation(&self, k: usize, t: &Rational) -> Self {
        let mut out = self.clone();
        for i in 0..=self.n {
            for j in 0..=self.m {
                let o = out.offset(k, i, j);
                out.coeffs[o] = out.coeffs[o].scale(t);
            }
        }
        out
    }

    /// Swaps the roles of the `x` and `y` groups: `a'^(k)_{j,i} = a^(k)_{i,j}`.
    pub fn transposed(&self) -> Self {
        Self::from_fn(self.m, self.n, |k, j, i| self.coeff(k, i, j).clone())
    }
}

/// Human-readable name for a bilinear coefficient variable: `a1_01` is `a^(1)_{0,1}`.
pub fn coeff_name(v: VarRef) -> String {
    match v.group {
        Group::Coeff => format!("a{}_{}{}", v.block + 1, v.index / COEFF_STRIDE, v.index % COEFF_STRIDE),
        _ => v.to_string(),
    }
}

/// The `(n+m) x (n+m)` Jacobian matrix: columns `∂F_k/∂x_1..∂F_k/∂x_n`, then
/// `∂F_k/∂y_1..∂F_k/∂y_m` (affine chart `x_0 = y_0 = 1`).
pub fn jacobian(sys: &BilinearSystem) -> PolyMatrix {
    let (n, m) = (sys.n(), sys.m());
    let eqs = sys.equations();
    let vars: Vec<VarRef> =
        (1..=n).map(|j| VarRef::x(j as u16)).chain((1..=m).map(|j| VarRef::y(j as u16))).collect();
    PolyMatrix::from_fn(n + m, n + m, |r, c| eqs[r].partial_derivative(vars[c]))
}

pub fn jacobian_det(sys: &BilinearSystem) -> Result<MultiPoly> {
    if sys.num_equations() > MAX_DET_SIZE {
        return Err(Error::TooLarge { size: sys.num_equations(), limit: MAX_DET_SIZE });
    }
    jacobian(sys).determinant()
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

fn factorial(n: u128) -> Option<u128> {
    (1..=n).try_fold(1u128, |acc, i| acc.checked_mul(i))
}

fn check_dims(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("n and m must be positive".into()));
    }
    Ok(())
}

/// Generic number of solutions: the normalized volume of `Δ_n × Δ_m`, i.e. `C(n+m, n)`.
pub fn generic_root_count(n: usize, m: usize) -> Result<u128> {
    check_dims(n, m)?;
    binomial((n + m) as u128, n as u128).ok_or_else(|| Error::InvalidInput("overflow".into()))
}

/// Degree bound of the discriminant in the coefficients of one equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeBound {
    /// Mixed-volume term `2nm (n+m-1)! / (n! m!)`.
    pub mv_term: u128,
    /// `mv_term + C(n+m, n)`.
    pub per_group: u128,
    /// `(n+m) * per_group`.
    pub total: u128,
}

pub fn degree_bound(n: usize, m: usize) -> Result<DegreeBound> {
    check_dims(n, m)?;
    let overflow = || Error::InvalidInput(format!("degree bound overflows for n={n}, m={m}"));
    let (n128, m128) = (n as u128, m as u128);
    let numerator = (2 * n128 * m128)
        .checked_mul(factorial(n128 + m128 - 1).ok_or_else(overflow)?)
        .ok_or_else(overflow)?;
    let denominator =
        factorial(n128).and_then(|a| factorial(m128).and_then(|b| a.checked_mul(b))).ok_or_else(overflow)?;
    debug_assert_eq!(numerator % denominator, 0);
    let mv_term = numerator / denominator;
    let per_group = mv_term + generic_root_count(n, m)?;
    let total = per_group.checked_mul(n128 + m128).ok_or_else(overflow)?;
    Ok(DegreeBound { mv_term, per_group, total })
}

/// The `(n+m) x (n+m)` matrix whose permanent is the mixed-volume term up to
/// `n! m!`: the first row holds `n` entries equal to `m` followed by `m`
/// entries equal to `n`; every other entry is 1.
pub fn mixed_volume_matrix(n: usize, m: usize) -> PolyMatrix {
    PolyMatrix::from_fn(n + m, n + m, |r, c| match (r, c < n) {
        (0, true) => MultiPoly::int(m as i64),
        (0, false) => MultiPoly::int(n as i64),
        _ => MultiPoly::one(),
    })
}

/// Mixed-volume term computed from the permanent: `perm / (n! m!)`.
pub fn mv_term_via_permanent(n: usize, m: usize) -> Result<Rational> {
    check_dims(n, m)?;
    let perm = mixed_volume_matrix(n, m).permanent()?;
    let perm = perm.as_constant().ok_or(Error::NotRational)?;
    let fact = |k: usize| (1..=k as i64).fold(int(1), |acc, i| acc * int(i));
    Ok(perm / (fact(n) * fact(m)))
}

fn det2(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly, d: &MultiPoly) -> MultiPoly {
    a * d - b * c
}

/// Closed-form discriminant for `n = m = 1`, with `a = a^(1)` and `b = a^(2)`:
///
/// ```text
/// (|a00 a01; b10 b11| - |a10 a11; b00 b01|) (|a00 a10; b01 b11| - |a01 a11; b00 b10|)
///   - 4 |a00 a01; a10 a11| |b00 b01; b10 b11|
/// ```
pub fn disc_p11(sys: &BilinearSystem) -> Result<MultiPoly> {
    if sys.n() != 1 || sys.m() != 1 {
        return Err(Error::WrongShape(format!(
            "closed form needs n = m = 1, got n = {}, m = {}",
            sys.n(),
            sys.m()
        )));
    }
    let a = |i, j| sys.coeff(0, i, j);
    let b = |i, j| sys.coeff(1, i, j);
    let first = det2(a(0, 0), a(0, 1), b(1, 0), b(1, 1)) - det2(a(1, 0), a(1, 1), b(0, 0), b(0, 1));
    let second = det2(a(0, 0), a(1, 0), b(0, 1), b(1, 1)) - det2(a(0, 1), a(1, 1), b(0, 0), b(1, 0));
    let det_a = det2(a(0, 0), a(0, 1), a(1, 0), a(1, 1));
    let det_b = det2(b(0, 0), b(0, 1), b(1, 0), b(1, 1));
    Ok(first * second - (det_a * det_b).scale(&int(4)))
}

/// Eliminates `y` from a system with `n = 1`: the `(m+1) x (m+1)` matrix with
/// entries `L_{k,j} = a^(k)_{0,j} x0 + a^(k)_{1,j} x1` has a nonzero kernel
/// exactly at the `x` where the system is solvable, so its determinant is the
/// elimination form `q(x1, x0)` of degree `m + 1`.
pub fn eliminate_y(sys: &BilinearSystem) -> Result<BinaryForm> {
    if sys.n() != 1 {
        return Err(Error::WrongShape(format!("elimination needs n = 1, got n = {}", sys.n())));
    }
    let size = sys.m() + 1;
    let (x0, x1) = (MultiPoly::var(VarRef::x(0)), MultiPoly::var(VarRef::x(1)));
    let l = PolyMatrix::from_fn(size, size, |k, j| sys.coeff(k, 0, j) * &x0 + sys.coeff(k, 1, j) * &x1);
    let q = l.determinant()?;
    BinaryForm::from_poly(&q, VarRef::x(1), VarRef::x(0), size as u32)
}

/// Discriminant of the elimination form. Handles `m = 1` systems with
/// `n > 1` by swapping the roles of `x` and `y`.
pub fn disc_via_elimination(sys: &BilinearSystem) -> Result<MultiPoly> {
    let form = if sys.n() == 1 {
        eliminate_y(sys)?
    } else if sys.m() == 1 {
        eliminate_y(&sys.transposed())?
    } else {
        return Err(Error::WrongShape(format!(
            "elimination implemented for n = 1 or m = 1, got n = {}, m = {}",
            sys.n(),
            sys.m()
        )));
    };
    binary_form_discriminant(&form)
}

/// Degree of the symbolic elimination discriminant in the coefficients of equation `k`.
pub fn disc_degree_in_group(m: usize, k: usize) -> Result<u32> {
    if !(1..=2).contains(&m) {
        return Err(Error::InvalidInput(format!("m must be 1 or 2, got {m}")));
    }
    if k > m {
        return Err(Error::InvalidInput(format!("equation index {k} out of range 0..={m}")));
    }
    let disc = disc_via_elimination(&BilinearSystem::symbolic(1, m))?;
    Ok(disc.degree_by(|v| v.group == Group::Coeff && usize::from(v.block) == k))
}

/// Rational value of a constant result.
pub fn as_rational(p: &MultiPoly) -> Result<Rational> {
    p.as_constant().ok_or(Error::NotRational)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p11(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> BilinearSystem {
        BilinearSystem::from_ints(
            1,
            1,
            &[a.iter().map(|r| r.to_vec()).collect(), b.iter().map(|r| r.to_vec()).collect()],
        )
        .unwrap()
    }

    #[test]
    fn shape_is_validated() {
        let bad = BilinearSystem::from_ints(1, 1, &[vec![vec![1, 0], vec![0, 1]]]);
        assert!(matches!(bad, Err(Error::WrongShape(_))));
        let ragged =
            BilinearSystem::from_ints(1, 1, &[vec![vec![1, 0], vec![0]], vec![vec![1, 0], vec![0, 1]]]);
        assert!(matches!(ragged, Err(Error::WrongShape(_))));
    }

    #[test]
    fn jacobian_examples() {
        // F1 = x0 y0, F2 = x1 y1
        let sys = p11([[1, 0], [0, 0]], [[0, 0], [0, 1]]);
        assert!(jacobian_det(&sys).unwrap().is_zero());

        // F1 = x1 y1 + x0 y0, F2 = x1 y0 + x0 y1
        let sys = p11([[1, 0], [0, 1]], [[0, 1], [1, 0]]);
        let expected = MultiPoly::var(VarRef::x(0)) * MultiPoly::var(VarRef::y(1))
            - MultiPoly::var(VarRef::x(1)) * MultiPoly::var(VarRef::y(0));
        assert_eq!(jacobian_det(&sys).unwrap(), expected);
    }

    #[test]
    fn root_counts() {
        assert_eq!(generic_root_count(1, 1).unwrap(), 2);
        assert_eq!(generic_root_count(1, 2).unwrap(), 3);
        assert_eq!(generic_root_count(2, 2).unwrap(), 6);
        assert!(generic_root_count(0, 2).is_err());
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(degree_bound(1, 1).unwrap().per_group, 4);
        assert_eq!(degree_bound(1, 2).unwrap().per_group, 7);
        let b = degree_bound(2, 2).unwrap();
        assert_eq!((b.mv_term, b.per_group, b.total), (12, 18, 72));
        assert_eq!(degree_bound(2, 1).unwrap(), degree_bound(1, 2).unwrap());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            as_rational(&disc_p11(&p11([[1, 0], [0, 1]], [[0, 1], [1, 0]])).unwrap()).unwrap(),
            int(4)
        );
        assert_eq!(
            as_rational(&disc_p11(&p11([[1, 0], [0, 1]], [[0, 1], [0, 0]])).unwrap()).unwrap(),
            int(0)
        );
        assert!(disc_p11(&p11([[0, 0], [0, 0]], [[3, 1], [4, 1]])).unwrap().is_zero());
        let wrong = BilinearSystem::symbolic(1, 2);
        assert!(matches!(disc_p11(&wrong), Err(Error::WrongShape(_))));
    }

    #[test]
    fn elimination_forms() {
        let x = |i| MultiPoly::var(VarRef::x(i));
        let q = eliminate_y(&p11([[1, 0], [0, 1]], [[0, 1], [1, 0]])).unwrap();
        assert_eq!(q.to_poly(VarRef::x(1), VarRef::x(0)), x(0).pow(2) - x(1).pow(2));
        let q = eliminate_y(&p11([[1, 0], [0, 1]], [[0, 1], [0, 0]])).unwrap();
        assert_eq!(q.to_poly(VarRef::x(1), VarRef::x(0)), x(0).pow(2));
    }

    #[test]
    fn unit_tensor_elimination_is_a_monomial() {
        // equation k has a single coefficient a^(k)_{0,k} = 1
        let sys = BilinearSystem::from_fn(1, 2, |k, i, j| {
            if i == 0 && j == k {
                MultiPoly::one()
            } else {
                MultiPoly::zero()
            }
        });
        let q = eliminate_y(&sys).unwrap().to_poly(VarRef::x(1), VarRef::x(0));
        assert_eq!(q.num_terms(), 1);
        assert_eq!(q, MultiPoly::var(VarRef::x(0)).pow(3));
    }

    #[test]
    fn elimination_oracle_examples() {
        let d = disc_via_elimination(&p11([[1, 0], [0, 1]], [[0, 1], [1, 0]])).unwrap();
        assert_eq!(as_rational(&d).unwrap(), int(4));
        let sys = p11([[1, 2], [3, 4]], [[5, 6], [7, 8]]);
        let q = eliminate_y(&sys).unwrap();
        assert_eq!(q.constant_coeffs().unwrap(), vec![int(-4), int(-8), int(-4)]);
        assert!(disc_via_elimination(&sys).unwrap().is_zero());
        assert!(matches!(disc_via_elimination(&BilinearSystem::symbolic(2, 2)), Err(Error::WrongShape(_))));
    }

    #[test]
    fn transposed_elimination_agrees_for_square_case() {
        let sys = p11([[2, -1], [3, 5]], [[1, 4], [-2, 7]]);
        assert_eq!(disc_via_elimination(&sys).unwrap(), disc_via_elimination(&sys.transposed()).unwrap());
    }

    #[test]
    fn degree_in_group_for_square_case() {
        for k in 0..2 {
            assert_eq!(disc_degree_in_group(1, k).unwrap(), 2);
        }
        assert!(disc_degree_in_group(3, 0).is_err());
        assert!(disc_degree_in_group(1, 2).is_err());
    }
}
