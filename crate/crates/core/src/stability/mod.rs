//! Duistermaat–Heckman data, the stability functionals and the decision
//! procedure built on them.

mod condition;
mod dh;
mod functional;
mod ke;
mod locus;
mod sampling;
mod verdict;

pub use condition::{condition_polynomial, stability_threshold, Endpoint, PositiveComponent, ThresholdOutcome, ThresholdReport};
pub use dh::{compute_a, compute_p, compute_q, p_from_factors, q_from_factors, unnormalized_product, DHData};
pub use functional::{horospherical_norm, j_functional, l_functional, norm};
pub use ke::ke_barycenter;
pub use locus::{nonneg_locus, SignLocus};
pub use sampling::{random_convex_pl, sample_uniform_check, MarginReport, Sample};
pub use verdict::{check_stability, futaki_linear, StabilityReport, Verdict};
pub(crate) use verdict::futaki_of;

use thiserror::Error;

use crate::algebra::{AlgebraError, Rational};
use crate::variety::{FamilyError, ViolationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Invalid(#[from] ViolationReport),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("degenerate data: the density integrates to zero on [{0}, {1}]")]
    ZeroMass(Rational, Rational),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error("test function must be convex")]
    NotConvex,
    #[error("test function must be non-decreasing for non-horospherical data")]
    NotMonotone,
    #[error("weight for the barycenter criterion must have degree at most 1")]
    WeightDegree,
    #[error("aP - Q is negative on the whole segment; the input cannot be a moment segment")]
    EmptyLocus,
    #[error("non-negative locus of aP - Q is not connected")]
    DisconnectedLocus,
    #[error("{0}")]
    Unsupported(String),
}
