//! Built-in worked examples with their expected values, and the machinery
//! that recomputes and compares them.

use std::path::Path;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{int, is_positive_on, Polynomial, Rational};
use crate::io::{from_json_str, Exact, InputDocument, InputError, ParameterSpec, Resolved};
use crate::stability::{
    check_stability, condition_polynomial, futaki_linear, ke_barycenter, p_from_factors, q_from_factors,
    stability_threshold, unnormalized_product, StabilityError, ThresholdOutcome, Verdict,
};
use crate::variety::{PolarizationFamily, RootFactor, SphericalData};

const BUILTIN: [(&str, &str); 6] = [
    ("g2-facet", include_str!("../registry/g2-facet.json")),
    ("x1", include_str!("../registry/x1.json")),
    ("x1-tilde", include_str!("../registry/x1-tilde.json")),
    ("x2", include_str!("../registry/x2.json")),
    ("x2-tilde", include_str!("../registry/x2-tilde.json")),
    ("torus-p1", include_str!("../registry/torus-p1.json")),
];

pub const REGISTRY_ENV: &str = "KSTAB_REGISTRY";

/// One expected value. Each carries a free-text provenance note.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Check {
    #[serde(rename = "P")]
    P { value: Polynomial },
    #[serde(rename = "Q")]
    Q { value: Polynomial },
    UnnormalizedProduct { value: Polynomial },
    ConditionPolynomial { value: Polynomial },
    ConditionValue { at: Exact, value: Exact },
    /// The condition polynomial is positive on the whole open range.
    ConditionPositive,
    StableOnRange,
    Verdict {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        param: Option<Exact>,
        verdict: String,
    },
    /// The threshold root agrees with the decimal `approx` to `tolerance`.
    Threshold { approx: String, tolerance: Exact },
    /// A literal definite integral.
    Integral { integrand: Polynomial, lower: Exact, upper: Exact, value: Exact },
    KeBarycenter { value: Exact },
    /// The barycenter integral equals `factor · reference` with both positive.
    KeProportional { reference: Exact, factor: Exact },
    Futaki {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        param: Option<Exact>,
        value: Exact,
    },
}

impl Check {
    pub fn label(&self) -> String {
        let at = |p: &Option<Exact>| p.as_ref().map(|p| format!(" at s={}", p.0)).unwrap_or_default();
        match self {
            Check::P { .. } => "P".into(),
            Check::Q { .. } => "Q".into(),
            Check::UnnormalizedProduct { .. } => "unnormalized product".into(),
            Check::ConditionPolynomial { .. } => "condition polynomial".into(),
            Check::ConditionValue { at, .. } => format!("R({})", at.0),
            Check::ConditionPositive => "R > 0 on the range".into(),
            Check::StableOnRange => "stable on the whole range".into(),
            Check::Verdict { param, .. } => format!("verdict{}", at(param)),
            Check::Threshold { .. } => "threshold".into(),
            Check::Integral { .. } => "reference integral".into(),
            Check::KeBarycenter { .. } => "barycenter integral".into(),
            Check::KeProportional { .. } => "barycenter proportionality".into(),
            Check::Futaki { param, .. } => format!("futaki{}", at(param)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    #[serde(flatten)]
    pub check: Check,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub name: String,
    pub description: String,
    pub document: InputDocument,
    pub expected: Vec<Expectation>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RegistryError {
    #[error("unknown example {name:?}; known examples: {}", known.join(", "))]
    Unknown { name: String, known: Vec<String> },
    #[error("registry entry {name}: {source}")]
    Entry { name: String, source: InputError },
    #[error("cannot read registry directory {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Clone, Debug)]
pub struct Registry {
    entries: Vec<RegistryEntry>,
}

fn parse_entry(name: &str, text: &str) -> Result<RegistryEntry, RegistryError> {
    let wrap = |source| RegistryError::Entry { name: name.to_string(), source };
    let entry: RegistryEntry = from_json_str(text).map_err(wrap)?;
    entry.document.resolve().map_err(wrap)?;
    Ok(entry)
}

impl Registry {
    pub fn builtin() -> Self {
        let entries = BUILTIN
            .iter()
            .map(|(name, text)| parse_entry(name, text).expect("built-in registry entries are valid"))
            .collect();
        Self { entries }
    }

    /// Every `*.json` file in `dir`, in file-name order.
    pub fn load_dir(dir: &Path) -> Result<Self, RegistryError> {
        let io = |e: std::io::Error| RegistryError::Io { path: dir.display().to_string(), message: e.to_string() };
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let mut entries = Vec::new();
        for path in paths {
            let text = std::fs::read_to_string(&path).map_err(io)?;
            entries.push(parse_entry(&path.display().to_string(), &text)?);
        }
        Ok(Self { entries })
    }

    /// The directory named by `KSTAB_REGISTRY` if set, else the built-in set.
    pub fn from_env() -> Result<Self, RegistryError> {
        match std::env::var_os(REGISTRY_ENV) {
            Some(dir) if !dir.is_empty() => Self::load_dir(Path::new(&dir)),
            _ => Ok(Self::builtin()),
        }
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&RegistryEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    fn unknown(&self, name: &str) -> RegistryError {
        RegistryError::Unknown { name: name.to_string(), known: self.names() }
    }

    /// Looks up an example by name. `<name>-family` resolves to the
    /// parameterized form: the entry itself if it already is a family
    /// (`g2-family` is accepted for `g2-facet`, `torus-family` for
    /// `torus-p1`), otherwise the ray that keeps
    /// the lower endpoint and lets the upper one range over
    /// `(lower, 2·upper − lower)`.
    pub fn lookup(&self, name: &str) -> Result<InputDocument, RegistryError> {
        if let Some(entry) = self.get(name) {
            return Ok(entry.document.clone());
        }
        let base = name.strip_suffix("-family").ok_or_else(|| self.unknown(name))?;
        let entry = self
            .get(base)
            .or_else(|| {
                let prefixed = || self.entries.iter().filter(|e| e.name.starts_with(&format!("{base}-")));
                prefixed().find(|e| e.document.is_family()).or_else(|| prefixed().next())
            })
            .ok_or_else(|| self.unknown(name))?;
        let mut doc = entry.document.clone();
        if let Some(upper) = doc.interval.upper.take() {
            let lower = doc.interval.lower.0.clone();
            let end = int(2) * &upper.0 - &lower;
            doc.interval.parameter = Some(ParameterSpec { name: "s".into(), range: [Exact(lower), Exact(end)] });
        }
        Ok(doc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub entry: String,
    pub label: String,
    pub passed: bool,
    pub detail: String,
    pub note: String,
}

impl CheckOutcome {
    pub fn to_json(&self) -> Value {
        json!({
            "entry": self.entry,
            "check": self.label,
            "passed": self.passed,
            "detail": self.detail,
            "note": self.note,
        })
    }
}

fn factors_of(resolved: &Resolved) -> Vec<RootFactor> {
    match resolved {
        Resolved::Data(d) => d.root_factors(),
        Resolved::Family(f) => f.root_factors(),
    }
}

fn family_of(resolved: &Resolved) -> Result<&PolarizationFamily, String> {
    match resolved {
        Resolved::Family(f) => Ok(f),
        Resolved::Data(_) => Err("requires a parameterized entry".into()),
    }
}

fn datum_at(resolved: &Resolved, param: Option<&Exact>) -> Result<SphericalData, String> {
    match (resolved, param) {
        (Resolved::Data(d), None) => Ok(d.clone()),
        (Resolved::Family(f), Some(s)) => f.instantiate(&s.0).map_err(|e| e.to_string()),
        (Resolved::Data(_), Some(_)) => Err("entry is not parameterized".into()),
        (Resolved::Family(_), None) => Err("parameterized entry needs a parameter value".into()),
    }
}

fn compare<T: PartialEq + std::fmt::Display>(expected: &T, computed: &T) -> (bool, String) {
    if expected == computed {
        (true, format!("{computed}"))
    } else {
        (false, format!("expected {expected}, computed {computed}"))
    }
}

fn show(e: StabilityError) -> String {
    e.to_string()
}

fn run_check(doc: &InputDocument, resolved: &Resolved, check: &Check) -> Result<(bool, String), String> {
    Ok(match check {
        Check::P { value } => compare(value, &p_from_factors(&factors_of(resolved))),
        Check::Q { value } => compare(value, &q_from_factors(&factors_of(resolved))),
        Check::UnnormalizedProduct { value } => compare(value, &unnormalized_product(&factors_of(resolved))),
        Check::ConditionPolynomial { value } => compare(value, &condition_polynomial(family_of(resolved)?)),
        Check::ConditionValue { at, value } => {
            compare(&value.0, &condition_polynomial(family_of(resolved)?).evaluate(&at.0))
        }
        Check::ConditionPositive => {
            let family = family_of(resolved)?;
            let (lo, hi) = family.range();
            let r = condition_polynomial(family);
            let positive = is_positive_on(&r, lo, hi).map_err(|e| e.to_string())?;
            (positive, format!("positive on ({lo}, {hi}): {positive}"))
        }
        Check::StableOnRange => {
            let report = stability_threshold(family_of(resolved)?, &Rational::new(1.into(), 1_000_000.into())).map_err(show)?;
            let ok = report.outcome == ThresholdOutcome::StableOnEntireRange;
            (ok, format!("outcome {}", report.to_json()["outcome"]))
        }
        Check::Verdict { param, verdict } => {
            let expected = Verdict::parse(verdict).ok_or_else(|| format!("unknown verdict {verdict:?}"))?;
            let report = check_stability(&datum_at(resolved, param.as_ref())?).map_err(show)?;
            compare(&expected, &report.verdict)
        }
        Check::Threshold { approx, tolerance } => {
            let expected = crate::algebra::parse_rational_lenient(approx).map_err(|e| e.to_string())?;
            let report = stability_threshold(family_of(resolved)?, &tolerance.0).map_err(show)?;
            match report.threshold() {
                None => (false, format!("no threshold; outcome {}", report.to_json()["outcome"])),
                Some(root) => {
                    let within = (&root.low - &tolerance.0) <= expected && expected <= (&root.high + &tolerance.0);
                    let narrow = &root.high - &root.low <= tolerance.0;
                    (
                        within && narrow,
                        format!("root in [{}, {}] ≈ {}", root.low, root.high, root.decimal(report.digits())),
                    )
                }
            }
        }
        Check::Integral { integrand, lower, upper, value } => {
            compare(&value.0, &integrand.definite_integral(&lower.0, &upper.0).map_err(|e| e.to_string())?)
        }
        Check::KeBarycenter { value } => {
            let ell = doc.ke_weight_polynomial().ok_or("entry has no ke_weight")?;
            compare(&value.0, &ke_barycenter(&datum_at(resolved, None)?, &ell).map_err(show)?)
        }
        Check::KeProportional { reference, factor } => {
            let ell = doc.ke_weight_polynomial().ok_or("entry has no ke_weight")?;
            let ke = ke_barycenter(&datum_at(resolved, None)?, &ell).map_err(show)?;
            let ratio = &ke / &reference.0;
            let ok = ke.is_positive() && factor.0.is_positive() && ratio == factor.0;
            (ok, format!("barycenter {ke} = {ratio} × {}", reference.0))
        }
        Check::Futaki { param, value } => {
            compare(&value.0, &futaki_linear(&datum_at(resolved, param.as_ref())?).map_err(show)?)
        }
    })
}

pub fn verify_entry(entry: &RegistryEntry) -> Vec<CheckOutcome> {
    let resolved = entry.document.resolve();
    entry
        .expected
        .iter()
        .map(|exp| {
            let result = match &resolved {
                Ok(r) => run_check(&entry.document, r, &exp.check),
                Err(e) => Err(e.to_string()),
            };
            let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
            CheckOutcome { entry: entry.name.clone(), label: exp.check.label(), passed, detail, note: exp.note.clone() }
        })
        .collect()
}

/// Verifies every entry, concurrently, reporting in registry order.
pub fn verify_all(registry: &Registry) -> Vec<CheckOutcome> {
    let per_entry: Vec<Vec<CheckOutcome>> = registry.entries().par_iter().map(verify_entry).collect();
    per_entry.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names() {
        assert_eq!(Registry::builtin().names(), ["g2-facet", "x1", "x1-tilde", "x2", "x2-tilde", "torus-p1"]);
    }

    #[test]
    fn family_aliases() {
        let reg = Registry::builtin();
        assert!(reg.lookup("g2-family").unwrap().is_family());
        assert!(reg.lookup("x1-tilde-family").unwrap().is_family());
        let torus = reg.lookup("torus-family").unwrap();
        let range = &torus.interval.parameter.as_ref().unwrap().range;
        assert_eq!((&range[0].0, &range[1].0), (&int(0), &int(2)));
        assert!(matches!(reg.lookup("nosuch"), Err(RegistryError::Unknown { known, .. }) if known.len() == 6));
    }

    #[test]
    fn entries_round_trip() {
        for entry in Registry::builtin().entries() {
            let text = serde_json::to_string(entry).unwrap();
            assert_eq!(&parse_entry(&entry.name, &text).unwrap(), entry);
        }
    }
}
