use num_traits::Zero;

use super::StabilityError;
use crate::algebra::{int, Polynomial, Rational};
use crate::variety::{RootFactor, SphericalData};

/// `P(t) = ∏ ⟨α, χ+tσ⟩ / ⟨α, ϖ⟩`; the empty product is 1.
pub fn p_from_factors(factors: &[RootFactor]) -> Polynomial {
    factors.iter().map(|f| f.affine().scale(&f.rho_pairing.recip())).product()
}

/// `Q(t) = P(t) · Σ_α ⟨α,ϖ⟩/⟨α,χ+tσ⟩`. Each term `P·⟨α,ϖ⟩/⟨α,χ+tσ⟩` is
/// the product of the other normalized factors, so no division by an
/// affine factor is needed.
pub fn q_from_factors(factors: &[RootFactor]) -> Polynomial {
    let normalized: Vec<Polynomial> = factors.iter().map(|f| f.affine().scale(&f.rho_pairing.recip())).collect();
    (0..factors.len())
        .map(|i| normalized.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).product::<Polynomial>())
        .sum()
}

/// `∏ ⟨α, χ+tσ⟩` without the `⟨α, ϖ⟩` normalization.
pub fn unnormalized_product(factors: &[RootFactor]) -> Polynomial {
    factors.iter().map(RootFactor::affine).product()
}

pub fn compute_p(data: &SphericalData) -> Polynomial {
    p_from_factors(&data.root_factors())
}

pub fn compute_q(data: &SphericalData) -> Polynomial {
    q_from_factors(&data.root_factors())
}

/// The constant `a` making `𝓛(1) = 0`:
/// `a = (P(s₋) + P(s₊) + 2∫Q) / (2∫P)`.
pub fn compute_a(p: &Polynomial, q: &Polynomial, lower: &Rational, upper: &Rational) -> Result<Rational, StabilityError> {
    let mass = p.definite_integral(lower, upper)?;
    if mass.is_zero() {
        return Err(StabilityError::ZeroMass(lower.clone(), upper.clone()));
    }
    let boundary = p.evaluate(lower) + p.evaluate(upper);
    let a = (boundary.clone() + int(2) * q.definite_integral(lower, upper)?) / (int(2) * mass);
    let residual = boundary - int(2) * (&p.scale(&a) - q).definite_integral(lower, upper)?;
    if !residual.is_zero() {
        return Err(StabilityError::Internal(format!("L(1) = {residual} after normalization")));
    }
    Ok(a)
}

/// P, Q, the normalizing constant and the segment they live on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DHData {
    pub p: Polynomial,
    pub q: Polynomial,
    pub a: Rational,
    pub lower: Rational,
    pub upper: Rational,
}

impl DHData {
    pub fn new(p: Polynomial, q: Polynomial, lower: Rational, upper: Rational) -> Result<Self, StabilityError> {
        let a = compute_a(&p, &q, &lower, &upper)?;
        Ok(Self { p, q, a, lower, upper })
    }

    pub fn from_data(data: &SphericalData) -> Result<Self, StabilityError> {
        data.validate()?;
        let factors = data.root_factors();
        Self::new(p_from_factors(&factors), q_from_factors(&factors), data.lower().clone(), data.upper().clone())
    }

    /// `aP − Q`, whose sign splits 𝓛 into its positive and negative parts.
    pub fn weight(&self) -> Polynomial {
        &self.p.scale(&self.a) - &self.q
    }

    pub fn mass(&self) -> Rational {
        self.p.definite_integral(&self.lower, &self.upper).expect("lower < upper")
    }
}
