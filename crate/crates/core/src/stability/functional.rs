use num_traits::Zero;

use super::{DHData, StabilityError};
use crate::algebra::{integrate_pl_times_poly, int, AlgebraError, PiecewiseLinear, Polynomial, Rational};
use crate::variety::Kind;

fn require_domain(g: &PiecewiseLinear, lower: &Rational, upper: &Rational) -> Result<(), StabilityError> {
    if g.covers(lower, upper) {
        return Ok(());
    }
    let (lo, hi) = g.domain();
    Err(AlgebraError::DomainMismatch {
        low: lower.clone(),
        high: upper.clone(),
        domain_low: lo.clone(),
        domain_high: hi.clone(),
    }
    .into())
}

/// `𝓛(g) = g(s₋)P(s₋) + g(s₊)P(s₊) − ∫ 2g(aP − Q)`.
pub fn l_functional(g: &PiecewiseLinear, dh: &DHData) -> Result<Rational, StabilityError> {
    require_domain(g, &dh.lower, &dh.upper)?;
    let boundary = g.evaluate(&dh.lower)? * dh.p.evaluate(&dh.lower) + g.evaluate(&dh.upper)? * dh.p.evaluate(&dh.upper);
    let bulk = integrate_pl_times_poly(g, &dh.weight(), &dh.lower, &dh.upper)?;
    Ok(boundary - int(2) * bulk)
}

/// Infimum of `g` over `[lower, upper]`; attained at an endpoint or a
/// breakpoint.
fn inf_on(g: &PiecewiseLinear, lower: &Rational, upper: &Rational) -> Result<Rational, StabilityError> {
    let mut best = g.evaluate(lower)?.min(g.evaluate(upper)?);
    for (b, v) in g.breakpoints().iter().zip(g.values()) {
        if lower <= b && b <= upper && *v < best {
            best = v.clone();
        }
    }
    Ok(best)
}

/// `𝓙(g) = ∫ (g − inf g) P`.
pub fn j_functional(g: &PiecewiseLinear, p: &Polynomial, lower: &Rational, upper: &Rational) -> Result<Rational, StabilityError> {
    require_domain(g, lower, upper)?;
    let inf = inf_on(g, lower, upper)?;
    Ok(integrate_pl_times_poly(g, p, lower, upper)? - inf * p.definite_integral(lower, upper)?)
}

/// `inf_c 𝓙(g + c·t)`.
///
/// As a function of `c`, `𝓙(g + c·t)` is an affine term minus
/// `min_i (g(bᵢ) + c·bᵢ)·∫P`, hence convex and piecewise affine with kinks
/// where two breakpoint lines cross. It is bounded below by zero, so the
/// minimum sits at one of those crossings.
pub fn horospherical_norm(
    g: &PiecewiseLinear,
    p: &Polynomial,
    lower: &Rational,
    upper: &Rational,
) -> Result<Rational, StabilityError> {
    require_domain(g, lower, upper)?;
    let mut points: Vec<(Rational, Rational)> = vec![(lower.clone(), g.evaluate(lower)?), (upper.clone(), g.evaluate(upper)?)];
    for (b, v) in g.breakpoints().iter().zip(g.values()) {
        if lower < b && b < upper {
            points.push((b.clone(), v.clone()));
        }
    }
    let mut candidates = vec![Rational::zero()];
    for (i, (bi, vi)) in points.iter().enumerate() {
        for (bj, vj) in &points[i + 1..] {
            candidates.push(-(vj - vi) / (bj - bi));
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut best: Option<Rational> = None;
    for c in candidates {
        let value = j_functional(&g.add_linear(&c), p, lower, upper)?;
        if best.as_ref().is_none_or(|b| value < *b) {
            best = Some(value);
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// The norm the uniform-stability inequality is measured against: 𝓙 for
/// non-horospherical data, the linear-shift infimum of 𝓙 otherwise.
pub fn norm(kind: Kind, g: &PiecewiseLinear, dh: &DHData) -> Result<Rational, StabilityError> {
    match kind {
        Kind::NonHorospherical => j_functional(g, &dh.p, &dh.lower, &dh.upper),
        Kind::Horospherical => horospherical_norm(g, &dh.p, &dh.lower, &dh.upper),
    }
}
