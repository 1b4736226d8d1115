use super::{compute_p, StabilityError};
use crate::algebra::{Polynomial, Rational};
use crate::variety::SphericalData;

/// `∫ ℓ(t)·P(t) dt` over the moment segment. The Kähler–Einstein barycenter
/// condition holds iff this is positive; `ℓ` is supplied by the caller.
pub fn ke_barycenter(data: &SphericalData, ell: &Polynomial) -> Result<Rational, StabilityError> {
    if ell.degree().is_some_and(|d| d > 1) {
        return Err(StabilityError::WeightDegree);
    }
    data.validate()?;
    Ok((ell * &compute_p(data)).definite_integral(data.lower(), data.upper())?)
}
