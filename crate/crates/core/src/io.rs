//! The JSON input document: schema, parsing with field-path diagnostics,
//! emission, and resolution into a concrete datum or a polarization family.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{parse_rational, Polynomial, Rational};
use crate::root_system::{CartanType, Component, RootSystem, Weight};
use crate::variety::{Kind, MomentLine, PolarizationFamily, SphericalData, Violation};

/// A rational that travels as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct Visitor;
        impl serde::de::Visitor<'_> for Visitor {
            type Value = Exact;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string such as \"3\" or \"-7/2\"")
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Exact, E> {
                parse_rational(v).map(Exact).map_err(E::custom)
            }
        }
        deserializer.deserialize_str(Visitor)
    }
}

impl From<Rational> for Exact {
    fn from(r: Rational) -> Self {
        Exact(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub rank: usize,
    pub scale: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterSpec {
    pub name: String,
    pub range: [Exact; 2],
}

/// Either `{"lower", "upper"}` or `{"lower", "parameter": {"name", "range"}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalSpec {
    pub lower: Exact,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<Exact>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<ParameterSpec>,
}

/// The input schema. Weights are in simple-root coordinates of the product
/// root system, factors concatenated in the order listed. For
/// non-horospherical data, `sigma` must be oriented so that the identity
/// function `t ↦ t` is the non-decreasing special test configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub root_system: Vec<ComponentSpec>,
    pub chi: Vec<Exact>,
    pub sigma: Vec<Exact>,
    pub interval: IntervalSpec,
    pub kind: Kind,
    /// Affine weight `ℓ(t) = c0 + c1·t` for the barycenter criterion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ke_weight: Option<[Exact; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

impl InputError {
    fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        InputError::Field { path: path.into(), message: message.into() }
    }

    /// Dotted path of the offending field, when there is one.
    pub fn path(&self) -> Option<&str> {
        match self {
            InputError::Field { path, .. } => Some(path),
            _ => None,
        }
    }
}

/// A document resolved into the object it describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolved {
    Data(SphericalData),
    Family(PolarizationFamily),
}

impl Resolved {
    pub fn kind(&self) -> Kind {
        match self {
            Resolved::Data(d) => d.kind(),
            Resolved::Family(f) => f.kind(),
        }
    }
}

pub fn parse_input(path: &Path) -> Result<InputDocument, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_input_str(&text)
}

/// Parses and validates a document. Structural errors carry the JSON path of
/// the offending field (`chi[2]`, `interval.upper`, ...).
pub fn parse_input_str(text: &str) -> Result<InputDocument, InputError> {
    let doc = from_json_str::<InputDocument>(text)?;
    doc.resolve()?;
    Ok(doc)
}

pub(crate) fn from_json_str<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_syntax() || inner.is_eof() {
            InputError::Syntax { line: inner.line(), column: inner.column(), message: inner.to_string() }
        } else {
            let message = inner.to_string();
            // strip serde_json's " at line L column C" suffix; the path says where
            let message = match message.rfind(" at line ") {
                Some(i) => message[..i].to_string(),
                None => message,
            };
            InputError::field(if path == "." { "document".to_string() } else { path }, message)
        }
    })
}

impl InputDocument {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn is_family(&self) -> bool {
        self.interval.parameter.is_some()
    }

    pub fn root_system(&self) -> Result<RootSystem, InputError> {
        if self.root_system.is_empty() {
            return Err(InputError::field("root_system", "at least one factor is required (use type \"T\" for a torus)"));
        }
        let mut components = Vec::new();
        for (i, c) in self.root_system.iter().enumerate() {
            let cartan_type: CartanType =
                c.cartan_type.parse().map_err(|e| InputError::field(format!("root_system[{i}].type"), format!("{e}")))?;
            components.push(Component::new(cartan_type, c.rank, c.scale.0.clone()));
        }
        RootSystem::build(&components).map_err(|e| {
            let i = components
                .iter()
                .position(|c| RootSystem::build(std::slice::from_ref(c)).is_err())
                .unwrap_or(0);
            InputError::field(format!("root_system[{i}]"), e.to_string())
        })
    }

    pub fn ke_weight_polynomial(&self) -> Option<Polynomial> {
        self.ke_weight.as_ref().map(|[c0, c1]| Polynomial::linear(c0.0.clone(), c1.0.clone()))
    }

    /// Validates the document against its root system and builds the datum
    /// or family.
    pub fn resolve(&self) -> Result<Resolved, InputError> {
        let rs = self.root_system()?;
        let weight = |name: &str, coords: &[Exact]| -> Result<Weight, InputError> {
            if coords.len() != rs.dim() {
                return Err(InputError::field(
                    name,
                    format!("has {} coordinates but the root system has rank {}", coords.len(), rs.dim()),
                ));
            }
            Ok(Weight(coords.iter().map(|c| c.0.clone()).collect()))
        };
        let chi = weight("chi", &self.chi)?;
        let sigma = weight("sigma", &self.sigma)?;
        if sigma.is_zero() {
            return Err(InputError::field("sigma", "direction of the moment segment must be nonzero"));
        }
        let lower = self.interval.lower.0.clone();
        match (&self.interval.upper, &self.interval.parameter) {
            (Some(_), Some(_)) => Err(InputError::field("interval", "give either \"upper\" or \"parameter\", not both")),
            (None, None) => Err(InputError::field("interval", "missing \"upper\" or \"parameter\"")),
            (Some(upper), None) => {
                if lower >= upper.0 {
                    return Err(InputError::field("interval", format!("lower {lower} must be below upper {}", upper.0)));
                }
                let line = MomentLine { chi, sigma, lower, upper: upper.0.clone() };
                SphericalData::new(rs, line, self.kind).map(Resolved::Data).map_err(|r| violations_error(&r.violations))
            }
            (None, Some(param)) => {
                let [lo, hi] = &param.range;
                if lo.0 >= hi.0 {
                    return Err(InputError::field(
                        "interval.parameter.range",
                        format!("range start {} must be below its end {}", lo.0, hi.0),
                    ));
                }
                if lo.0 < lower {
                    return Err(InputError::field(
                        "interval",
                        format!("parameter range starts at {} below the lower endpoint {lower}", lo.0),
                    ));
                }
                PolarizationFamily::new(rs, chi, sigma, lower, (lo.0.clone(), hi.0.clone()), self.kind)
                    .map(Resolved::Family)
                    .map_err(|r| violations_error(&r.violations))
            }
        }
    }
}

fn violations_error(violations: &[Violation]) -> InputError {
    let path = match violations.first() {
        Some(Violation::DegenerateInterval { .. }) => "interval",
        Some(Violation::ZeroDirection) => "sigma",
        Some(Violation::Dimension(_)) => "chi",
        _ => "interval",
    };
    let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
    InputError::field(path, format!("segment leaves the positive Weyl chamber or is degenerate: {}", lines.join("; ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const G2: &str = r#"{
        "root_system": [{"type": "G2", "rank": 2, "scale": "1"}],
        "chi": ["12", "6"], "sigma": ["0", "2"],
        "interval": {"lower": "0", "upper": "1/2"},
        "kind": "non-horospherical"
    }"#;

    fn path_of(text: &str) -> String {
        parse_input_str(text).unwrap_err().path().unwrap_or("<none>").to_string()
    }

    #[test]
    fn parses_and_resolves() {
        let doc = parse_input_str(G2).unwrap();
        assert!(!doc.is_family());
        assert!(matches!(doc.resolve().unwrap(), Resolved::Data(_)));
    }

    #[test]
    fn round_trip() {
        let doc = parse_input_str(G2).unwrap();
        assert_eq!(parse_input_str(&doc.to_json_string()).unwrap(), doc);
    }

    #[test]
    fn errors_name_the_field() {
        assert_eq!(path_of(&G2.replace(r#""upper": "1/2""#, r#""upper": "0""#)), "interval");
        assert_eq!(path_of(&G2.replace(r#""sigma": ["0", "2"]"#, r#""sigma": ["0", "0"]"#)), "sigma");
        assert_eq!(path_of(&G2.replace(r#""chi": ["12", "6"]"#, r#""chi": ["12", "x"]"#)), "chi[1]");
        assert_eq!(path_of(&G2.replace(r#""chi": ["12", "6"]"#, r#""chi": ["12"]"#)), "chi");
        assert_eq!(path_of(&G2.replace(r#""G2""#, r#""E6""#)), "root_system[0].type");
        assert_eq!(path_of(&G2.replace(r#""upper": "1/2""#, r#""upper": "2""#)), "interval");
        assert_eq!(path_of(&G2.replace(r#""kind": "non-horospherical""#, r#""kind": "toric""#)), "kind");
    }

    #[test]
    fn malformed_json_is_a_syntax_error() {
        assert!(matches!(parse_input_str("{\"chi\": ["), Err(InputError::Syntax { .. })));
    }
}
