use serde_json::{json, Value};

use super::{p_from_factors, q_from_factors, StabilityError};
use crate::algebra::{int, rational::digits_for, sign_partition, Polynomial, Rational, RefinedRoot};
use crate::variety::{Kind, PolarizationFamily};

/// The stability condition along the family as a polynomial in the upper
/// endpoint `s`, cleared of the normalizing constant `a`:
///
/// `R(s) = (s₋P(s₋) + sP(s) + 2∫tQ)·∫P − (P(s₋) + P(s) + 2∫Q)·∫tP`,
///
/// all integrals over `[s₋, s]`. It equals `𝓛(id)·∫P` at every `s`, so its
/// sign is the sign of the Futaki invariant.
pub fn condition_polynomial(family: &PolarizationFamily) -> Polynomial {
    let factors = family.root_factors();
    let p = p_from_factors(&factors);
    let q = q_from_factors(&factors);
    let lo = family.lower();
    let t = Polynomial::identity();
    // ∫_{s₋}^{s} f as a polynomial in s
    let from_lower = |f: &Polynomial| {
        let anti = f.antiderivative();
        &anti - &Polynomial::constant(anti.evaluate(lo))
    };
    let two = int(2);
    let int_p = from_lower(&p);
    let int_q = from_lower(&q);
    let int_tp = from_lower(&(&t * &p));
    let int_tq = from_lower(&(&t * &q));
    let p_lo = p.evaluate(lo);
    let first = &(&Polynomial::constant(lo * &p_lo) + &(&t * &p)) + &int_tq.scale(&two);
    let second = &(&Polynomial::constant(p_lo) + &p) + &int_q.scale(&two);
    &(&first * &int_p) - &(&second * &int_tp)
}

/// End of a sign component: either a boundary of the parameter range or a
/// refined root of the condition polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    RangeEnd(Rational),
    Root(RefinedRoot),
}

impl Endpoint {
    pub fn approx(&self) -> &Rational {
        match self {
            Endpoint::RangeEnd(r) => r,
            Endpoint::Root(root) => &root.approx,
        }
    }

    fn to_json(&self, digits: usize) -> Value {
        match self {
            Endpoint::RangeEnd(r) => json!({"range_end": r.to_string()}),
            Endpoint::Root(root) => json!({"root": root.to_json(digits)}),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveComponent {
    pub low: Endpoint,
    pub high: Endpoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThresholdOutcome {
    /// `R > 0` on the whole open range.
    StableOnEntireRange,
    /// `R > 0` on `(range.0, root)` and not just above `root`.
    StableBelow(RefinedRoot),
    /// `R < 0` just above the lower end of the range.
    UnstableNearLower,
    /// `R ≡ 0`: the Futaki invariant vanishes for every member.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdReport {
    pub condition_polynomial: Polynomial,
    pub range: (Rational, Rational),
    pub precision: Rational,
    /// Distinct roots of `R` inside the open range, increasing.
    pub roots: Vec<RefinedRoot>,
    /// Sign of `R` on each open piece between consecutive roots.
    pub signs: Vec<i8>,
    pub positive_components: Vec<PositiveComponent>,
    pub outcome: ThresholdOutcome,
}

impl ThresholdReport {
    pub fn digits(&self) -> usize {
        digits_for(&self.precision)
    }

    pub fn threshold(&self) -> Option<&RefinedRoot> {
        match &self.outcome {
            ThresholdOutcome::StableBelow(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let digits = self.digits();
        let outcome = match &self.outcome {
            ThresholdOutcome::StableOnEntireRange => "stable_on_entire_range",
            ThresholdOutcome::StableBelow(_) => "threshold",
            ThresholdOutcome::UnstableNearLower => "unstable_near_lower",
            ThresholdOutcome::Degenerate => "degenerate",
        };
        json!({
            "outcome": outcome,
            "condition_polynomial": self.condition_polynomial,
            "range": [self.range.0.to_string(), self.range.1.to_string()],
            "threshold": self.threshold().map(|r| r.to_json(digits)),
            "roots": self.roots.iter().map(|r| r.to_json(digits)).collect::<Vec<_>>(),
            "positive_components": self.positive_components.iter().map(|c| json!({
                "low": c.low.to_json(digits),
                "high": c.high.to_json(digits),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Locates where the condition polynomial changes sign inside the family's
/// parameter range and reports the stable component adjacent to its lower
/// end, with the bounding root refined to `precision`.
pub fn stability_threshold(family: &PolarizationFamily, precision: &Rational) -> Result<ThresholdReport, StabilityError> {
    let r = condition_polynomial(family);
    let range = family.range().clone();
    if r.is_zero() {
        return Ok(ThresholdReport {
            condition_polynomial: r,
            range,
            precision: precision.clone(),
            roots: Vec::new(),
            signs: Vec::new(),
            positive_components: Vec::new(),
            outcome: ThresholdOutcome::Degenerate,
        });
    }
    if family.kind() == Kind::Horospherical {
        return Err(StabilityError::Unsupported(
            "threshold search applies to non-horospherical families; this horospherical family has a nonvanishing Futaki invariant".into(),
        ));
    }
    let part = sign_partition(&r, &range.0, &range.1, precision)?;
    let bound = |i: usize, left: bool| -> Endpoint {
        // piece i runs from root i-1 (or the range start) to root i (or the range end)
        match (left, i) {
            (true, 0) => Endpoint::RangeEnd(range.0.clone()),
            (true, _) => Endpoint::Root(part.roots[i - 1].clone()),
            (false, _) if i == part.roots.len() => Endpoint::RangeEnd(range.1.clone()),
            (false, _) => Endpoint::Root(part.roots[i].clone()),
        }
    };
    let positive_components: Vec<PositiveComponent> = part
        .signs
        .iter()
        .enumerate()
        .filter(|(_, s)| **s > 0)
        .map(|(i, _)| PositiveComponent { low: bound(i, true), high: bound(i, false) })
        .collect();
    let outcome = match (part.signs[0] > 0, part.roots.first()) {
        (true, None) => ThresholdOutcome::StableOnEntireRange,
        (true, Some(root)) => ThresholdOutcome::StableBelow(root.clone()),
        (false, _) => ThresholdOutcome::UnstableNearLower,
    };
    Ok(ThresholdReport {
        condition_polynomial: r,
        range,
        precision: precision.clone(),
        roots: part.roots,
        signs: part.signs,
        positive_components,
        outcome,
    })
}
