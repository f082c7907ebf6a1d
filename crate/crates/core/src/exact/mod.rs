//! Exact scalars, multivariate polynomials, formal linear combinations and
//! rational linear algebra.

mod lincomb;
mod matrix;
mod poly;
mod rational;

pub use lincomb::LinComb;
pub use matrix::{solve_in_span, RatMatrix};
pub use poly::{Exponents, Poly, Var};
pub use rational::{binomial, int, parse_rational, rat, Rational};
