use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::{l_functional, DHData, StabilityError};
use crate::algebra::{PiecewiseLinear, Polynomial, Rational};
use crate::variety::{Kind, SphericalData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Stable,
    Unstable,
    FutakiObstructed,
    SemistableBoundary,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Stable => "stable",
            Verdict::Unstable => "unstable",
            Verdict::FutakiObstructed => "futaki_obstructed",
            Verdict::SemistableBoundary => "semistable_boundary",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Verdict::Stable, Verdict::Unstable, Verdict::FutakiObstructed, Verdict::SemistableBoundary]
            .into_iter()
            .find(|v| v.as_str() == s)
    }

    /// The only rule for verdicts: strict positivity of the Futaki value on
    /// non-horospherical data, exact vanishing on horospherical data.
    pub fn from_futaki(kind: Kind, futaki: &Rational) -> Self {
        match kind {
            Kind::NonHorospherical if futaki.is_positive() => Verdict::Stable,
            Kind::NonHorospherical if futaki.is_negative() => Verdict::Unstable,
            Kind::NonHorospherical => Verdict::SemistableBoundary,
            Kind::Horospherical if futaki.is_zero() => Verdict::Stable,
            Kind::Horospherical => Verdict::FutakiObstructed,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// 𝓛 of the identity `g(t) = t`, the Donaldson–Futaki invariant of the
/// equivariant special test configuration.
pub fn futaki_linear(data: &SphericalData) -> Result<Rational, StabilityError> {
    let dh = DHData::from_data(data)?;
    futaki_of(&dh)
}

pub(crate) fn futaki_of(dh: &DHData) -> Result<Rational, StabilityError> {
    l_functional(&PiecewiseLinear::identity(dh.lower.clone(), dh.upper.clone())?, dh)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub verdict: Verdict,
    pub kind: Kind,
    pub lower: Rational,
    pub upper: Rational,
    /// 𝓛(t ↦ t), the orientation the verdict is based on.
    pub futaki: Rational,
    /// 𝓛(t ↦ −t), the opposite orientation; diagnostic only.
    pub futaki_reversed: Rational,
    pub a: Rational,
    pub p: Polynomial,
    pub q: Polynomial,
    pub restricted_roots: usize,
}

impl StabilityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict.as_str(),
            "kind": self.kind.to_string(),
            "interval": {"lower": self.lower.to_string(), "upper": self.upper.to_string()},
            "futaki": self.futaki.to_string(),
            "futaki_reversed": self.futaki_reversed.to_string(),
            "a": self.a.to_string(),
            "P": self.p,
            "Q": self.q,
            "restricted_roots": self.restricted_roots,
        })
    }
}

pub fn check_stability(data: &SphericalData) -> Result<StabilityReport, StabilityError> {
    let dh = DHData::from_data(data)?;
    let futaki = futaki_of(&dh)?;
    let reversed = PiecewiseLinear::identity(dh.lower.clone(), dh.upper.clone())?.scale(&(-Rational::from_integer(1.into())));
    let futaki_reversed = l_functional(&reversed, &dh)?;
    Ok(StabilityReport {
        verdict: Verdict::from_futaki(data.kind(), &futaki),
        kind: data.kind(),
        lower: dh.lower.clone(),
        upper: dh.upper.clone(),
        futaki,
        futaki_reversed,
        a: dh.a.clone(),
        p: dh.p,
        q: dh.q,
        restricted_roots: data.restricted_positive_roots().len(),
    })
}
