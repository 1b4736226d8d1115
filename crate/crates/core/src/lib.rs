//! Exact verifier for uniform K-stability of polarized rank-one spherical
//! varieties.
//!
//! A variety enters as a moment segment `χ + tσ`, `t ∈ [s₋, s₊]`, in the
//! weight space of a root system. Everything downstream — the
//! Duistermaat–Heckman polynomials, the stability functionals, verdicts and
//! thresholds — is computed in exact rational arithmetic.

pub mod algebra;
pub mod root_system;
pub mod stability;
pub mod variety;
pub mod io;
pub mod registry;
pub mod cli;
