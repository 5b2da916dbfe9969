//! Exact scalars: arbitrary-precision rationals and multivariate polynomials
//! over named parameters.

mod eval;
mod parse;
mod poly;
mod rational;

pub use eval::{Assignment, EvalError, Value};
pub use parse::{parse_expr, ParseError};
pub use poly::{Monomial, PolyScalar};
pub use rational::Rational;
