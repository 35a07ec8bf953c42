//! Exact scalar and polynomial arithmetic.
//!
//! Everything downstream is built on these types: arbitrary-precision
//! rationals and Gaussian rationals, sparse multivariate polynomials in
//! `u1..un` (plus optional parameter variables appended after them),
//! rational functions in lowest terms, and dense matrices over both.

pub mod gaussian;
pub mod gcd;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod roots;
pub mod univariate;

pub use gaussian::GaussianRational;
pub use linalg::Field;
pub use matrix::{Matrix, PolyMatrix, RatFunMatrix};
pub use poly::{Monomial, MultiPoly};
pub use ratfun::RationalFunction;
pub use rational::Rational;
pub use roots::{rational_roots, RootReport};
pub use univariate::UniPoly;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// `a (op) b`, rejecting operands over different variable counts.
pub fn poly_arith(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
    if a.nvars() != b.nvars() {
        return Err(Error::NvarsMismatch { left: a.nvars(), right: b.nvars() });
    }
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    })
}

/// `∂p/∂u^k` with a 1-based variable index.
pub fn partial_derivative(p: &MultiPoly, k: usize) -> Result<MultiPoly> {
    if k == 0 || k > p.nvars() {
        return Err(Error::IndexOutOfRange { index: k, nvars: p.nvars() });
    }
    Ok(p.partial(k - 1))
}

pub fn eval_at(p: &MultiPoly, point: &[Rational]) -> Result<Rational> {
    if point.len() != p.nvars() {
        return Err(Error::LengthMismatch { expected: p.nvars(), got: point.len() });
    }
    Ok(p.eval(point))
}

/// Exact inverse of a square polynomial matrix, entries in lowest terms.
pub fn matrix_inverse(m: &PolyMatrix) -> Result<RatFunMatrix> {
    m.inverse()
}
