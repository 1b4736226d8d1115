//! Exact rational arithmetic, univariate polynomials, Sturm root isolation
//! and piecewise-linear calculus.

mod piecewise;
mod polynomial;
pub mod rational;
mod sturm;

pub use piecewise::{integrate_pl_times_poly, PiecewiseLinear};
pub use polynomial::Polynomial;
pub use rational::{int, parse_rational, parse_rational_lenient, rat, Rational};
pub use sturm::{
    is_positive_on, isolate_roots, refine_bracket, refine_location, refine_root, sign_partition, sturm_count, SignPartition, IsolatingInterval,
    RefinedRoot, RootLocation, SturmSequence,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid interval: {low} is not below {high}")]
    InvalidInterval { low: Rational, high: Rational },
    #[error("degenerate input: the zero polynomial")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("bracket [{low}, {high}] does not exhibit a sign change")]
    InvalidBracket { low: Rational, high: Rational },
    #[error("precision must be positive, got {0}")]
    NonPositivePrecision(Rational),
    #[error("invalid piecewise-linear function: {0}")]
    InvalidPiecewise(String),
    #[error("{x} lies outside the domain [{low}, {high}]")]
    OutsideDomain { x: Rational, low: Rational, high: Rational },
    #[error("function defined on [{domain_low}, {domain_high}] cannot be integrated over [{low}, {high}]")]
    DomainMismatch { low: Rational, high: Rational, domain_low: Rational, domain_high: Rational },
    #[error("bad rational syntax: {0:?}")]
    BadRational(String),
}
