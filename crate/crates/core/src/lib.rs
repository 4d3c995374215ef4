//! Exact discriminants of bilinear and sparse trilinear polynomial systems.
//!
//! The crate is organised bottom-up:
//!
//! - [`rational`], [`poly`], [`matrix`], [`linalg`]: exact scalars, sparse
//!   polynomials, and fraction-free linear algebra.
//! - [`binary_form`]: discriminants of binary forms through the Sylvester resultant.
//! - [`bilinear`]: bilinear systems on `P^n x P^m`, their Jacobian, degree
//!   bounds, the closed-form `n = m = 1` discriminant and the elimination oracle.
//! - [`sparse3`]: the three-player system on `P^1 x P^1 x P^1` and its
//!   6x6 determinantal discriminant.
//! - [`ideal`]: derivative matrices, maximal minors, and the product-ideal certificate.
//! - [`verify`]: seeded property suites shared by the CLI.

pub mod bilinear;
pub mod binary_form;
pub mod error;
pub mod ideal;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod sampling;
pub mod sparse3;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{kernel_basis, solve_linear, LinearSolution, QMatrix};
pub use matrix::PolyMatrix;
pub use poly::{Group, Monomial, MultiPoly, VarRef};
pub use rational::Rational;
