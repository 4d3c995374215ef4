//! The sparse three-player system on `P^1 x P^1 x P^1`:
//!
//! ```text
//! H1 = a0 x1 y1 + a1 x1 y0 + a2 x0 y1 + a4 x0 y0
//! H2 = b0 x1 z1 + b1 x1 z0 + b3 x0 z1 + b4 x0 z0
//! H3 = c0 y1 z1 + c2 y1 z0 + c3 y0 z1 + c4 y0 z0
//! ```
//!
//! Each player's equation omits one variable group. The coefficient labels
//! skip `a3`, `b2`, `c1`; they are kept verbatim.
//!
//! The discriminant has three independent descriptions here: the expanded
//! closed form [`disc_expanded`], the 6x6 symmetric determinant
//! [`disc_determinantal`], and the elimination oracle
//! [`eliminate_to_quadratic`]. A singular system also has a kernel vector of
//! the 6x6 matrix, which [`root_to_kernel`] and [`kernel_to_root`] translate
//! to and from a multiple root.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;

use crate::binary_form::{binary_form_discriminant, BinaryForm};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::matrix::PolyMatrix;
use crate::poly::{Group, MultiPoly, VarRef};
use crate::rational::{int, normalize_projective, ratio, Rational};
use crate::sampling::{random_rational, small_int};

/// Sign relating the two discriminant formulas:
/// `disc_determinantal = DETERMINANTAL_SIGN * disc_expanded`, as polynomials
/// in all twelve coefficients. Checked by full symbolic expansion in the tests.
pub const DETERMINANTAL_SIGN: i32 = -1;

pub const A_LABELS: [u8; 4] = [0, 1, 2, 4];
pub const B_LABELS: [u8; 4] = [0, 1, 3, 4];
pub const C_LABELS: [u8; 4] = [0, 2, 3, 4];

/// Coefficient names in storage order.
pub const COEFF_NAMES: [&str; 12] = ["a0", "a1", "a2", "a4", "b0", "b1", "b3", "b4", "c0", "c2", "c3", "c4"];

pub const X1: VarRef = VarRef::x(1);
pub const X0: VarRef = VarRef::x(0);
pub const Y1: VarRef = VarRef::y(1);
pub const Y0: VarRef = VarRef::y(0);
pub const Z1: VarRef = VarRef::z(1);
pub const Z0: VarRef = VarRef::z(0);

/// Point variables in matrix order `(x1, x0, y1, y0, z1, z0)`.
pub const POINT_VARS: [VarRef; 6] = [X1, X0, Y1, Y0, Z1, Z0];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreePlayerSystem {
    /// `(a0, a1, a2, a4)`
    pub a: [MultiPoly; 4],
    /// `(b0, b1, b3, b4)`
    pub b: [MultiPoly; 4],
    /// `(c0, c2, c3, c4)`
    pub c: [MultiPoly; 4],
}

impl ThreePlayerSystem {
    /// Coefficients in the order of [`COEFF_NAMES`].
    pub fn from_coeffs(coeffs: [MultiPoly; 12]) -> Self {
        let [a0, a1, a2, a4, b0, b1, b3, b4, c0, c2, c3, c4] = coeffs;
        Self { a: [a0, a1, a2, a4], b: [b0, b1, b3, b4], c: [c0, c2, c3, c4] }
    }

    pub fn from_rationals(coeffs: [Rational; 12]) -> Self {
        Self::from_coeffs(coeffs.map(MultiPoly::constant))
    }

    pub fn from_ints(coeffs: [i64; 12]) -> Self {
        Self::from_coeffs(coeffs.map(MultiPoly::int))
    }

    pub fn symbolic() -> Self {
        let var = |player: u16, label: u8| MultiPoly::var(coeff_var(player, label));
        Self {
            a: A_LABELS.map(|l| var(0, l)),
            b: B_LABELS.map(|l| var(1, l)),
            c: C_LABELS.map(|l| var(2, l)),
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_coeffs(std::array::from_fn(|_| MultiPoly::constant(random_rational(rng))))
    }

    pub fn coeffs(&self) -> [&MultiPoly; 12] {
        let [a0, a1, a2, a4] = &self.a;
        let [b0, b1, b3, b4] = &self.b;
        let [c0, c2, c3, c4] = &self.c;
        [a0, a1, a2, a4, b0, b1, b3, b4, c0, c2, c3, c4]
    }

    pub fn rational_coeffs(&self) -> Result<[Rational; 12]> {
        let values: Vec<Rational> =
            self.coeffs().iter().map(|c| c.as_constant().ok_or(Error::NotRational)).collect::<Result<_>>()?;
        Ok(values.try_into().expect("twelve coefficients"))
    }

    pub fn is_numeric(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_constant())
    }

    /// True if some player's equation has all four coefficients zero.
    pub fn has_zero_equation(&self) -> bool {
        [&self.a, &self.b, &self.c].iter().any(|g| g.iter().all(MultiPoly::is_zero))
    }

    pub fn h1(&self) -> MultiPoly {
        let [a0, a1, a2, a4] = &self.a;
        bilinear_form(X1, X0, Y1, Y0, [a0, a1, a2, a4])
    }

    pub fn h2(&self) -> MultiPoly {
        let [b0, b1, b3, b4] = &self.b;
        bilinear_form(X1, X0, Z1, Z0, [b0, b1, b3, b4])
    }

    pub fn h3(&self) -> MultiPoly {
        let [c0, c2, c3, c4] = &self.c;
        bilinear_form(Y1, Y0, Z1, Z0, [c0, c2, c3, c4])
    }

    pub fn equations(&self) -> [MultiPoly; 3] {
        [self.h1(), self.h2(), self.h3()]
    }
}

/// Symbolic coefficient variable for `player` (0 = a, 1 = b, 2 = c) and its printed label.
pub fn coeff_var(player: u16, label: u8) -> VarRef {
    VarRef::new(Group::Coeff, player, u16::from(label))
}

/// Printed name of a point or coefficient variable of the three-player system.
pub fn var_name(v: VarRef) -> String {
    match v.group {
        Group::Coeff => {
            let letter = ["a", "b", "c"].get(usize::from(v.block)).copied().unwrap_or("?");
            format!("{letter}{}", v.index)
        }
        _ => v.to_string(),
    }
}

/// `c[0] u1 v1 + c[1] u1 v0 + c[2] u0 v1 + c[3] u0 v0`
fn bilinear_form(u1: VarRef, u0: VarRef, v1: VarRef, v0: VarRef, c: [&MultiPoly; 4]) -> MultiPoly {
    let mono = |p: VarRef, q: VarRef| MultiPoly::var(p) * MultiPoly::var(q);
    c[0] * &mono(u1, v1) + c[1] * &mono(u1, v0) + c[2] * &mono(u0, v1) + c[3] * &mono(u0, v0)
}

fn det2(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly, d: &MultiPoly) -> MultiPoly {
    a * d - b * c
}

/// The expanded discriminant:
///
/// ```text
/// (a0 |b3 b4; c3 c4| - a1 |b3 b4; c0 c2| - a2 |b0 b1; c3 c4| + a4 |b0 b1; c0 c2|)^2
///   - 4 |a0 a1; a2 a4| |b0 b1; b3 b4| |c0 c2; c3 c4|
/// ```
pub fn disc_expanded(sys: &ThreePlayerSystem) -> MultiPoly {
    let [a0, a1, a2, a4] = &sys.a;
    let [b0, b1, b3, b4] = &sys.b;
    let [c0, c2, c3, c4] = &sys.c;
    let bracket = a0 * &det2(b3, b4, c3, c4) - a1 * &det2(b3, b4, c0, c2) - a2 * &det2(b0, b1, c3, c4)
        + a4 * &det2(b0, b1, c0, c2);
    let dets = det2(a0, a1, a2, a4) * det2(b0, b1, b3, b4) * det2(c0, c2, c3, c4);
    bracket.pow(2) - dets.scale(&int(4))
}

/// The symmetric 6x6 matrix with rows and columns indexed by
/// `(x1, x0, y1, y0, z1, z0)`. Its off-diagonal 2x2 blocks hold the bilinear
/// coefficient tables of `H1` (x,y), `H2` (x,z) and `H3` (y,z); the diagonal
/// blocks are zero. It is the Hessian of `H1 + H2 + H3`.
pub fn build_disc_matrix(sys: &ThreePlayerSystem) -> PolyMatrix {
    let [a0, a1, a2, a4] = &sys.a;
    let [b0, b1, b3, b4] = &sys.b;
    let [c0, c2, c3, c4] = &sys.c;
    let z = MultiPoly::zero();
    let rows: [[&MultiPoly; 6]; 6] = [
        [&z, &z, a0, a1, b0, b1],
        [&z, &z, a2, a4, b3, b4],
        [a0, a2, &z, &z, c0, c2],
        [a1, a4, &z, &z, c3, c4],
        [b0, b3, c0, c3, &z, &z],
        [b1, b4, c2, c4, &z, &z],
    ];
    PolyMatrix::from_fn(6, 6, |r, c| rows[r][c].clone())
}

pub fn disc_determinantal(sys: &ThreePlayerSystem) -> Result<MultiPoly> {
    build_disc_matrix(sys).determinant()
}

/// Determines the sign `ε` with `disc_determinantal = ε * disc_expanded` by
/// expanding both sides over the twelve symbolic coefficients.
pub fn determine_sign() -> Result<i32> {
    let sys = ThreePlayerSystem::symbolic();
    let det = disc_determinantal(&sys)?;
    let expanded = disc_expanded(&sys);
    if det == expanded {
        Ok(1)
    } else if det == -expanded {
        Ok(-1)
    } else {
        Err(Error::WitnessMismatch("determinant is not ± the expanded discriminant".into()))
    }
}

/// Symmetric matrix of the quadratic form `H1 + H2 + H3` in the six point variables.
pub fn quadratic_form_matrix(sys: &ThreePlayerSystem) -> PolyMatrix {
    build_disc_matrix(sys).scale(&ratio(1, 2))
}

/// True if the quadratic form `H1 + H2 + H3` is degenerate.
pub fn quadratic_form_degenerate(sys: &ThreePlayerSystem) -> Result<bool> {
    Ok(quadratic_form_matrix(sys).determinant()?.is_zero())
}

/// Solves `H1 = 0` and `H2 = 0` for `(y1 : y0)` and `(z1 : z0)` in terms of
/// `x` and substitutes into `H3`, giving a binary quadratic in `(x1, x0)`.
pub fn eliminate_to_quadratic(sys: &ThreePlayerSystem) -> Result<BinaryForm> {
    let [a0, a1, a2, a4] = &sys.a;
    let [b0, b1, b3, b4] = &sys.b;
    let [c0, c2, c3, c4] = &sys.c;
    let (x1, x0) = (MultiPoly::var(X1), MultiPoly::var(X0));
    let y1 = -(a1 * &x1 + a4 * &x0);
    let y0 = a0 * &x1 + a2 * &x0;
    let z1 = -(b1 * &x1 + b4 * &x0);
    let z0 = b0 * &x1 + b3 * &x0;
    let q = c0 * &(&y1 * &z1) + c2 * &(&y1 * &z0) + c3 * &(&y0 * &z1) + c4 * &(&y0 * &z0);
    if q.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    BinaryForm::from_poly(&q, X1, X0, 2)
}

/// Discriminant through the elimination oracle.
pub fn disc_via_elimination(sys: &ThreePlayerSystem) -> Result<MultiPoly> {
    binary_form_discriminant(&eliminate_to_quadratic(sys)?)
}

/// A point of `P^1 x P^1 x P^1`; each pair is `(v1, v0)`, scaled so its first
/// nonzero entry is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriRoot {
    pub x: [Rational; 2],
    pub y: [Rational; 2],
    pub z: [Rational; 2],
}

fn normalize_pair(p: &[Rational; 2], what: &str) -> Result<[Rational; 2]> {
    let v = normalize_projective(p).ok_or_else(|| Error::ZeroDenominator(format!("{what} pair is zero")))?;
    Ok([v[0].clone(), v[1].clone()])
}

impl TriRoot {
    pub fn new(x: [Rational; 2], y: [Rational; 2], z: [Rational; 2]) -> Result<Self> {
        Ok(Self { x: normalize_pair(&x, "x")?, y: normalize_pair(&y, "y")?, z: normalize_pair(&z, "z")? })
    }

    pub fn from_ints(x: [i64; 2], y: [i64; 2], z: [i64; 2]) -> Result<Self> {
        Self::new(x.map(int), y.map(int), z.map(int))
    }

    /// Random point with small integer coordinates.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut pair = || loop {
            let p = [small_int(rng, -5, 5), small_int(rng, -5, 5)];
            if let Ok(n) = normalize_pair(&p, "") {
                return n;
            }
        };
        Self { x: pair(), y: pair(), z: pair() }
    }

    /// Coordinates in matrix order `(x1, x0, y1, y0, z1, z0)`.
    pub fn coords(&self) -> [Rational; 6] {
        let [x1, x0] = self.x.clone();
        let [y1, y0] = self.y.clone();
        let [z1, z0] = self.z.clone();
        [x1, x0, y1, y0, z1, z0]
    }

    pub fn assignment(&self) -> BTreeMap<VarRef, Rational> {
        POINT_VARS.into_iter().zip(self.coords()).collect()
    }
}

/// A kernel vector `u` of the 6x6 matrix together with the matching kernel
/// `λ` of the transposed Jacobian. Both are scaled so the first nonzero entry is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelWitness {
    pub lambda: [Rational; 3],
    pub u: [Rational; 6],
}

/// The transposed Jacobian at `root`:
///
/// ```text
/// [ ∂H1/∂x1  ∂H2/∂x1  0       ]
/// [ ∂H1/∂y1  0        ∂H3/∂y1 ]
/// [ 0        ∂H2/∂z1  ∂H3/∂z1 ]
/// ```
pub fn transposed_jacobian(sys: &ThreePlayerSystem, root: &TriRoot) -> PolyMatrix {
    let at = root.assignment();
    let [h1, h2, h3] = sys.equations();
    let d = |h: &MultiPoly, v: VarRef| h.partial_derivative(v).eval(&at);
    let z = MultiPoly::zero();
    let rows = [
        [d(&h1, X1), d(&h2, X1), z.clone()],
        [d(&h1, Y1), z.clone(), d(&h3, Y1)],
        [z, d(&h2, Z1), d(&h3, Z1)],
    ];
    PolyMatrix::from_fn(3, 3, |r, c| rows[r][c].clone())
}

/// Coefficients, in [`COEFF_NAMES`] order, of the linear conditions for
/// `root` to be a multiple root with multiplier `λ`:
///
/// - `H_i(root) = 0` for each player;
/// - `λ1 ∇_x H1 + λ2 ∇_x H2 = 0`, `λ1 ∇_y H1 + λ3 ∇_y H3 = 0` and
///   `λ2 ∇_z H2 + λ3 ∇_z H3 = 0`, each over both coordinates of the group.
///
/// The `(x0, y0, z0)` derivative rows follow from the others by Euler's
/// relation whenever `x0 y0 z0 != 0`; including them keeps the conditions
/// correct at points on the coordinate hyperplanes.
fn multiple_root_constraints(root: &TriRoot, lambda: &[Rational; 3]) -> QMatrix {
    let [x1, x0] = &root.x;
    let [y1, y0] = &root.y;
    let [z1, z0] = &root.z;
    let [l1, l2, l3] = lambda;
    let zero = Rational::zero;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut row = |entries: [(usize, Rational); 4], more: [(usize, Rational); 4]| {
        let mut r = vec![zero(); 12];
        for (i, v) in entries.into_iter().chain(more) {
            r[i] += v;
        }
        rows.push(r);
    };
    let none = || [(0, zero()), (0, zero()), (0, zero()), (0, zero())];
    // H1, H2, H3 at the root
    row([(0, x1 * y1), (1, x1 * y0), (2, x0 * y1), (3, x0 * y0)], none());
    row([(4, x1 * z1), (5, x1 * z0), (6, x0 * z1), (7, x0 * z0)], none());
    row([(8, y1 * z1), (9, y1 * z0), (10, y0 * z1), (11, y0 * z0)], none());
    // λ1 ∂H1/∂x· + λ2 ∂H2/∂x·
    row([(0, l1 * y1), (1, l1 * y0), (4, l2 * z1), (5, l2 * z0)], none());
    row([(2, l1 * y1), (3, l1 * y0), (6, l2 * z1), (7, l2 * z0)], none());
    // λ1 ∂H1/∂y· + λ3 ∂H3/∂y·
    row([(0, l1 * x1), (2, l1 * x0), (8, l3 * z1), (9, l3 * z0)], none());
    row([(1, l1 * x1), (3, l1 * x0), (10, l3 * z1), (11, l3 * z0)], none());
    // λ2 ∂H2/∂z· + λ3 ∂H3/∂z·
    row([(4, l2 * x1), (6, l2 * x0), (8, l3 * y1), (10, l3 * y0)], none());
    row([(5, l2 * x1), (7, l2 * x0), (9, l3 * y1), (11, l3 * y0)], none());
    QMatrix::from_rows(rows).expect("rectangular")
}

/// Maximum number of draws before [`singular_instance`] gives up.
pub const MAX_SAMPLE_ATTEMPTS: usize = 100;

/// Draws a system with a multiple root at `root` whose transposed Jacobian
/// there has kernel `λ`.
///
/// The admissible coefficient vectors form the null space of the linear
/// conditions above; a sample is an integer combination of its basis with
/// weights in `[-10, 10]`. Draws with a zero equation, or whose 6x6 matrix has
/// a kernel of dimension other than one, are redrawn.
pub fn singular_instance<R: Rng + ?Sized>(
    root: &TriRoot,
    lambda: &[Rational; 3],
    rng: &mut R,
) -> Result<ThreePlayerSystem> {
    if lambda.iter().all(Zero::is_zero) {
        return Err(Error::InvalidInput("λ must be nonzero".into()));
    }
    let basis = multiple_root_constraints(root, lambda).kernel_basis();
    for _ in 0..MAX_SAMPLE_ATTEMPTS {
        let mut coeffs = vec![Rational::zero(); 12];
        for v in &basis {
            let w = small_int(rng, -10, 10);
            for (c, b) in coeffs.iter_mut().zip(v) {
                *c += &w * b;
            }
        }
        let coeffs: [Rational; 12] = coeffs.try_into().expect("twelve coefficients");
        let sys = ThreePlayerSystem::from_rationals(coeffs);
        if sys.has_zero_equation() {
            continue;
        }
        let m = QMatrix::from_poly(&build_disc_matrix(&sys))?;
        if m.kernel_basis().len() != 1 {
            continue;
        }
        return Ok(sys);
    }
    Err(Error::DegenerateSample { attempts: MAX_SAMPLE_ATTEMPTS })
}

fn disc_kernel(sys: &ThreePlayerSystem) -> Result<(QMatrix, Vec<Vec<Rational>>)> {
    let m = QMatrix::from_poly(&build_disc_matrix(sys))?;
    let kernel = m.kernel_basis();
    if kernel.is_empty() {
        return Err(Error::NotSingular);
    }
    Ok((m, kernel))
}

/// Maps a multiple root and its multiplier `λ` to the kernel vector
/// `u = (x1/λ3, x0/λ3, y1/λ2, y0/λ2, z1/λ1, z0/λ1)` and checks `M u = 0`.
pub fn root_to_kernel(
    sys: &ThreePlayerSystem,
    root: &TriRoot,
    lambda: &[Rational; 3],
) -> Result<KernelWitness> {
    let (m, _) = disc_kernel(sys)?;
    if let Some(i) = lambda.iter().position(Zero::is_zero) {
        return Err(Error::ZeroDenominator(format!("λ{} = 0", i + 1)));
    }
    let [l1, l2, l3] = lambda;
    let [x1, x0] = &root.x;
    let [y1, y0] = &root.y;
    let [z1, z0] = &root.z;
    let u = [x1 / l3, x0 / l3, y1 / l2, y0 / l2, z1 / l1, z0 / l1];
    if m.mul_vec(&u).iter().any(|e| !e.is_zero()) {
        return Err(Error::WitnessMismatch("M u != 0 for the given root and λ".into()));
    }
    let u = normalize_projective(&u).expect("root pairs are nonzero");
    let lambda = normalize_projective(lambda).expect("λ is nonzero");
    Ok(KernelWitness {
        lambda: lambda.try_into().expect("three entries"),
        u: u.try_into().expect("six entries"),
    })
}

/// Recovers the multiple root `(u1:u2), (u3:u4), (u5:u6)` and its multiplier
/// from a kernel vector `u` of the 6x6 matrix, then checks that every `H_i`
/// vanishes there and that the transposed Jacobian is singular.
pub fn kernel_to_root(sys: &ThreePlayerSystem, u: &[Rational; 6]) -> Result<(TriRoot, KernelWitness)> {
    let m = QMatrix::from_poly(&build_disc_matrix(sys))?;
    if m.mul_vec(u).iter().any(|e| !e.is_zero()) {
        return Err(Error::WitnessMismatch("u is not in the kernel".into()));
    }
    let pair = |i: usize, what: &str| -> Result<[Rational; 2]> {
        let p = [u[i].clone(), u[i + 1].clone()];
        if p.iter().all(Zero::is_zero) {
            return Err(Error::ZeroDenominator(format!("{what} block of u is zero")));
        }
        Ok(p)
    };
    let (ux, uy, uz) = (pair(0, "x")?, pair(2, "y")?, pair(4, "z")?);
    let root = TriRoot::new(ux.clone(), uy.clone(), uz.clone())?;
    // u_x = s_x * x with x normalized, and s_x = 1/λ3 (likewise for y, z)
    let scale = |p: &[Rational; 2]| p.iter().find(|v| !v.is_zero()).cloned().expect("nonzero");
    let (sx, sy, sz) = (scale(&ux), scale(&uy), scale(&uz));
    let lambda = [&sx * &sy, &sx * &sz, &sy * &sz];

    let at = root.assignment();
    if sys.equations().iter().any(|h| !h.eval(&at).is_zero()) {
        return Err(Error::WitnessMismatch("recovered point is not a root".into()));
    }
    let j = transposed_jacobian(sys, &root);
    let lambda_poly: Vec<MultiPoly> = lambda.iter().cloned().map(MultiPoly::constant).collect();
    if j.mul_vec(&lambda_poly)?.iter().any(|e| !e.is_zero()) {
        return Err(Error::WitnessMismatch("λ is not in the transposed Jacobian kernel".into()));
    }
    let witness = KernelWitness {
        lambda: normalize_projective(&lambda).expect("nonzero").try_into().expect("three"),
        u: normalize_projective(u).expect("nonzero").try_into().expect("six"),
    };
    Ok((root, witness))
}

/// Computes the kernel of the 6x6 matrix and maps its first basis vector to a multiple root.
pub fn kernel_correspondence(sys: &ThreePlayerSystem) -> Result<(TriRoot, KernelWitness)> {
    let (_, kernel) = disc_kernel(sys)?;
    let u: [Rational; 6] = kernel[0].clone().try_into().expect("six entries");
    kernel_to_root(sys, &u)
}

/// The sign `ε` as a rational, for scaling.
pub fn determinantal_sign() -> Rational {
    if DETERMINANTAL_SIGN > 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::sampler;

    /// a0 = a4 = b0 = b4 = c0 = c4 = 1, others 0.
    fn diagonal() -> ThreePlayerSystem {
        ThreePlayerSystem::from_ints([1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1])
    }

    fn corner() -> ThreePlayerSystem {
        ThreePlayerSystem::from_ints([0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1])
    }

    #[test]
    fn sign_is_determined_symbolically() {
        assert_eq!(determine_sign().unwrap(), DETERMINANTAL_SIGN);
    }

    #[test]
    fn expanded_examples() {
        assert!(disc_expanded(&corner()).is_zero());
        assert_eq!(disc_expanded(&diagonal()).as_constant(), Some(int(-4)));
    }

    #[test]
    fn matrix_pattern_for_diagonal_system() {
        let expected = PolyMatrix::from_ints(&[
            [0, 0, 1, 0, 1, 0],
            [0, 0, 0, 1, 0, 1],
            [1, 0, 0, 0, 1, 0],
            [0, 1, 0, 0, 0, 1],
            [1, 0, 1, 0, 0, 0],
            [0, 1, 0, 1, 0, 0],
        ]);
        assert_eq!(build_disc_matrix(&diagonal()), expected);
        assert_eq!(disc_determinantal(&diagonal()).unwrap().as_constant(), Some(int(4)));
    }

    #[test]
    fn zero_a_group_kills_determinant() {
        let sys = ThreePlayerSystem::from_ints([0, 0, 0, 0, 2, 3, 5, 7, 1, 4, 6, 9]);
        assert!(disc_determinantal(&sys).unwrap().is_zero());
        assert!(disc_determinantal(&corner()).unwrap().is_zero());
    }

    #[test]
    fn quadratic_form_examples() {
        assert!(!quadratic_form_degenerate(&diagonal()).unwrap());
        assert_eq!(
            quadratic_form_matrix(&diagonal()).determinant().unwrap().as_constant(),
            Some(ratio(4, 64))
        );
        assert!(quadratic_form_degenerate(&corner()).unwrap());
    }

    #[test]
    fn elimination_of_diagonal_system() {
        let q = eliminate_to_quadratic(&diagonal()).unwrap();
        assert_eq!(q.constant_coeffs().unwrap(), vec![int(1), int(0), int(1)]);
        assert_eq!(disc_via_elimination(&diagonal()).unwrap().as_constant(), Some(int(-4)));
    }

    #[test]
    fn zero_system_has_zero_jacobian_and_no_quadratic() {
        let zero = ThreePlayerSystem::from_ints([0; 12]);
        let root = TriRoot::from_ints([1, 2], [3, 1], [-1, 1]).unwrap();
        assert!(transposed_jacobian(&zero, &root).entries().iter().all(MultiPoly::is_zero));
        assert_eq!(eliminate_to_quadratic(&zero), Err(Error::IdenticallyZero));
    }

    #[test]
    fn root_normalization() {
        let r = TriRoot::from_ints([2, 4], [0, -3], [-1, 1]).unwrap();
        assert_eq!(r.x, [int(1), int(2)]);
        assert_eq!(r.y, [int(0), int(1)]);
        assert_eq!(r.z, [int(1), int(-1)]);
        assert!(TriRoot::from_ints([0, 0], [1, 1], [1, 1]).is_err());
    }

    #[test]
    fn singular_instance_has_prescribed_root() {
        let root = TriRoot::from_ints([1, 2], [3, -1], [2, 5]).unwrap();
        let lambda = [int(1), int(-2), int(3)];
        let sys = singular_instance(&root, &lambda, &mut sampler(11, 0)).unwrap();
        assert!(disc_expanded(&sys).is_zero());
        let at = root.assignment();
        assert!(sys.equations().iter().all(|h| h.eval(&at).is_zero()));
        let lam: Vec<MultiPoly> = lambda.iter().cloned().map(MultiPoly::constant).collect();
        let j = transposed_jacobian(&sys, &root);
        assert!(j.mul_vec(&lam).unwrap().iter().all(MultiPoly::is_zero));
        assert!(j.determinant().unwrap().is_zero());
    }

    #[test]
    fn correspondence_round_trip() {
        let root = TriRoot::from_ints([1, -1], [2, 3], [1, 4]).unwrap();
        let lambda = [int(2), int(1), int(-1)];
        let sys = singular_instance(&root, &lambda, &mut sampler(5, 1)).unwrap();
        let w = root_to_kernel(&sys, &root, &lambda).unwrap();
        let (back, w2) = kernel_to_root(&sys, &w.u).unwrap();
        assert_eq!(back, root);
        assert_eq!(w2, w);
        let (via_kernel, _) = kernel_correspondence(&sys).unwrap();
        assert_eq!(via_kernel, root);
    }

    #[test]
    fn correspondence_errors() {
        assert_eq!(kernel_correspondence(&diagonal()), Err(Error::NotSingular));
        let root = TriRoot::from_ints([1, 1], [1, 1], [1, 1]).unwrap();
        assert_eq!(root_to_kernel(&diagonal(), &root, &[int(1), int(1), int(1)]), Err(Error::NotSingular));
        let root = TriRoot::from_ints([1, 2], [3, -1], [2, 5]).unwrap();
        let lambda = [int(1), int(-2), int(3)];
        let sys = singular_instance(&root, &lambda, &mut sampler(3, 3)).unwrap();
        assert!(matches!(
            root_to_kernel(&sys, &root, &[int(0), int(1), int(1)]),
            Err(Error::ZeroDenominator(_))
        ));
    }

    #[test]
    fn coefficient_names_follow_labels() {
        let sym = ThreePlayerSystem::symbolic();
        let names: Vec<String> = sym.coeffs().iter().map(|c| var_name(c.variables()[0])).collect();
        assert_eq!(names, COEFF_NAMES);
    }
}
