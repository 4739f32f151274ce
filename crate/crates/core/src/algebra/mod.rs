//! Exact arithmetic: rationals, sparse Laurent polynomials and rational
//! functions over ℚ.

pub mod factor;
pub mod gcd;
mod heugcd;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod ring;

pub use factor::{factor_by_gcd, factor_fraction, FactoredFraction, Factorization};
pub use gcd::{poly_gcd, poly_lcm};
pub use poly::{LaurentPoly, Monomial, VarSet};
pub use ratfunc::RationalFunction;
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use ring::{Field, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("unsupported operation: {0}")]
    UnsupportedOperation(String),
    #[error("division by zero")]
    DivideByZero,
    #[error("evaluation singularity: {factor} vanishes")]
    Singularity { factor: String },
    #[error("no value given for variable {0}")]
    MissingVariable(String),
}
