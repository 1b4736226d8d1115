//! Polarized rank-one spherical varieties as moment segments in weight space.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Polynomial, Rational};
use crate::root_system::{RootSystem, RootSystemError, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Horospherical,
    NonHorospherical,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Horospherical => "horospherical",
            Kind::NonHorospherical => "non-horospherical",
        })
    }
}

/// The segment `{χ + tσ | t ∈ [lower, upper]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentLine {
    pub chi: Weight,
    pub sigma: Weight,
    pub lower: Rational,
    pub upper: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DegenerateInterval { lower: Rational, upper: Rational },
    ZeroDirection,
    Dimension(RootSystemError),
    /// `⟨root, χ + endpoint·σ⟩ = value < 0`.
    OutsideChamber { root: Weight, endpoint: Rational, value: Rational },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DegenerateInterval { lower, upper } => {
                write!(f, "interval: lower {lower} is not below upper {upper}")
            }
            Violation::ZeroDirection => write!(f, "sigma: direction is zero"),
            Violation::Dimension(e) => write!(f, "dimension: {e}"),
            Violation::OutsideChamber { root, endpoint, value } => {
                write!(f, "root {root} pairs to {value} < 0 at t = {endpoint}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "invalid moment segment: {}", lines.join("; "))
    }
}

/// A positive root together with its pairings along the line: the factor
/// `⟨α, χ + tσ⟩ = constant + slope·t` and the weight `⟨α, ϖ⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootFactor {
    pub root: Weight,
    pub constant: Rational,
    pub slope: Rational,
    pub rho_pairing: Rational,
}

impl RootFactor {
    pub fn affine(&self) -> Polynomial {
        Polynomial::linear(self.constant.clone(), self.slope.clone())
    }

    pub fn at(&self, t: &Rational) -> Rational {
        &self.constant + &self.slope * t
    }
}

/// Pairings of every positive root that does not vanish identically along
/// `χ + tσ`.
pub fn root_factors(rs: &RootSystem, chi: &Weight, sigma: &Weight) -> Result<Vec<RootFactor>, RootSystemError> {
    rs.check_dim(chi)?;
    rs.check_dim(sigma)?;
    let rho = rs.half_sum_positive_roots();
    let mut out = Vec::new();
    for root in rs.positive_roots() {
        let constant = rs.pairing(root, chi)?;
        let slope = rs.pairing(root, sigma)?;
        if constant.is_zero() && slope.is_zero() {
            continue;
        }
        let rho_pairing = rs.pairing(root, &rho)?;
        out.push(RootFactor { root: root.clone(), constant, slope, rho_pairing });
    }
    Ok(out)
}

fn check_segment(rs: &RootSystem, chi: &Weight, sigma: &Weight, endpoints: &[&Rational]) -> Vec<Violation> {
    let mut violations = Vec::new();
    if let Err(e) = rs.check_dim(chi).and_then(|_| rs.check_dim(sigma)) {
        violations.push(Violation::Dimension(e));
        return violations;
    }
    if sigma.is_zero() {
        violations.push(Violation::ZeroDirection);
    }
    for root in rs.positive_roots() {
        let c = rs.pairing(root, chi).expect("dims checked");
        let m = rs.pairing(root, sigma).expect("dims checked");
        for &t in endpoints {
            let value = &c + &m * t;
            if value.is_negative() {
                violations.push(Violation::OutsideChamber { root: root.clone(), endpoint: t.clone(), value });
            }
        }
    }
    violations
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalData {
    root_system: RootSystem,
    line: MomentLine,
    kind: Kind,
}

impl SphericalData {
    /// Validated construction.
    pub fn new(root_system: RootSystem, line: MomentLine, kind: Kind) -> Result<Self, ViolationReport> {
        let data = Self::new_unchecked(root_system, line, kind);
        data.validate()?;
        Ok(data)
    }

    pub fn new_unchecked(root_system: RootSystem, line: MomentLine, kind: Kind) -> Self {
        Self { root_system, line, kind }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn line(&self) -> &MomentLine {
        &self.line
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn lower(&self) -> &Rational {
        &self.line.lower
    }

    pub fn upper(&self) -> &Rational {
        &self.line.upper
    }

    /// Checks that the segment is non-degenerate and lies in the closed
    /// positive Weyl chamber. Pairings are affine in `t`, so the two
    /// endpoints suffice.
    pub fn validate(&self) -> Result<(), ViolationReport> {
        let MomentLine { chi, sigma, lower, upper } = &self.line;
        let mut violations = Vec::new();
        if lower >= upper {
            violations.push(Violation::DegenerateInterval { lower: lower.clone(), upper: upper.clone() });
        }
        violations.extend(check_segment(&self.root_system, chi, sigma, &[lower, upper]));
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ViolationReport { violations })
        }
    }

    pub fn root_factors(&self) -> Vec<RootFactor> {
        root_factors(&self.root_system, &self.line.chi, &self.line.sigma).expect("validated dimensions")
    }

    /// R_X⁺: positive roots whose pairing with `χ + tσ` is not identically
    /// zero. Roots with a constant nonzero pairing are included.
    pub fn restricted_positive_roots(&self) -> Vec<Weight> {
        self.root_factors().into_iter().map(|f| f.root).collect()
    }

    /// Same datum with the invariant form multiplied by `c`.
    pub fn with_scaled_form(&self, c: &Rational) -> Result<Self, RootSystemError> {
        Ok(Self { root_system: self.root_system.scaled(c)?, line: self.line.clone(), kind: self.kind })
    }

    pub fn with_interval(&self, lower: Rational, upper: Rational) -> Result<Self, ViolationReport> {
        let line = MomentLine { lower, upper, ..self.line.clone() };
        Self::new(self.root_system.clone(), line, self.kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameter {value} outside the open range ({low}, {high})")]
    OutOfRange { value: Rational, low: Rational, high: Rational },
    #[error(transparent)]
    Invalid(#[from] ViolationReport),
}

/// A ray of polarizations: `χ`, `σ` and the lower endpoint are fixed and the
/// upper endpoint `s` ranges over an open interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationFamily {
    root_system: RootSystem,
    chi: Weight,
    sigma: Weight,
    lower: Rational,
    range: (Rational, Rational),
    kind: Kind,
}

impl PolarizationFamily {
    /// Validated construction: every `s` in the open range must give a valid
    /// segment. Pairings at the moving endpoint are affine in `s`, so it is
    /// enough to check the closure endpoints of the range.
    pub fn new(
        root_system: RootSystem,
        chi: Weight,
        sigma: Weight,
        lower: Rational,
        range: (Rational, Rational),
        kind: Kind,
    ) -> Result<Self, ViolationReport> {
        let mut violations = Vec::new();
        if range.0 >= range.1 {
            violations.push(Violation::DegenerateInterval { lower: range.0.clone(), upper: range.1.clone() });
        }
        if range.0 < lower {
            violations.push(Violation::DegenerateInterval { lower: lower.clone(), upper: range.0.clone() });
        }
        violations.extend(check_segment(&root_system, &chi, &sigma, &[&lower, &range.0, &range.1]));
        if !violations.is_empty() {
            return Err(ViolationReport { violations });
        }
        Ok(Self { root_system, chi, sigma, lower, range, kind })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn chi(&self) -> &Weight {
        &self.chi
    }

    pub fn sigma(&self) -> &Weight {
        &self.sigma
    }

    pub fn lower(&self) -> &Rational {
        &self.lower
    }

    pub fn range(&self) -> &(Rational, Rational) {
        &self.range
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn root_factors(&self) -> Vec<RootFactor> {
        root_factors(&self.root_system, &self.chi, &self.sigma).expect("validated dimensions")
    }

    pub fn contains(&self, s: &Rational) -> bool {
        &self.range.0 < s && s < &self.range.1
    }

    /// The concrete datum with upper endpoint `s`.
    pub fn instantiate(&self, s: &Rational) -> Result<SphericalData, FamilyError> {
        if !self.contains(s) {
            return Err(FamilyError::OutOfRange { value: s.clone(), low: self.range.0.clone(), high: self.range.1.clone() });
        }
        let line =
            MomentLine { chi: self.chi.clone(), sigma: self.sigma.clone(), lower: self.lower.clone(), upper: s.clone() };
        Ok(SphericalData::new(self.root_system.clone(), line, self.kind)?)
    }

    pub fn with_scaled_form(&self, c: &Rational) -> Result<Self, RootSystemError> {
        Ok(Self { root_system: self.root_system.scaled(c)?, ..self.clone() })
    }
}
