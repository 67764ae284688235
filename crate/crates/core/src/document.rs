//! JSON certificate documents.
//!
//! Every rational is a string `"p/q"` (or `"p"` when integral) in lowest
//! terms; large integers are strings too. Field order is fixed, so equal
//! documents render to identical bytes.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::belyi::{BelyiCertificate, CriticalPoint, CriticalValue, ProjectivePoint};
use crate::exactalg::Rat;
use crate::expr::{format_poly, parse_poly, ParseError};
use crate::realroots::RootClassification;
use crate::report::Report;
use crate::witness::RolleWitness;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version `{0}`")]
    SchemaVersion(String),
    #[error("field `{field}`: `{value}` is not a canonical {expected}")]
    Value {
        field: &'static str,
        value: String,
        expected: &'static str,
    },
    #[error("field `f`: {0}")]
    Polynomial(#[from] ParseError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: String,
    #[serde(flatten)]
    pub certificate: Certificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload")]
pub enum Certificate {
    #[serde(rename = "rolle-witness")]
    RolleWitness(WitnessPayload),
    #[serde(rename = "belyi")]
    Belyi(BelyiPayload),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessPayload {
    /// Canonical expression text.
    pub f: String,
    pub nodes: Vec<String>,
    pub exponents: Vec<String>,
    pub power: u64,
    pub scale: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BelyiPayload {
    pub points: Vec<String>,
    pub exponents: Vec<String>,
    pub constant: String,
    pub degree: String,
    pub critical_report: Vec<CriticalEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalEntry {
    /// A rational or `"infinity"`.
    pub location: String,
    /// `"0"`, `"1"` or `"infinity"`.
    pub value: String,
    pub ramification_index: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationBlock {
    pub valid: bool,
    pub checks: Vec<CheckEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl From<&Report> for VerificationBlock {
    fn from(r: &Report) -> Self {
        VerificationBlock {
            valid: r.valid(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckEntry {
                    name: c.name.to_string(),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
        }
    }
}

impl CertificateDocument {
    pub fn new(certificate: Certificate, verification: Option<&Report>) -> Self {
        CertificateDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            certificate,
            verification: verification.map(VerificationBlock::from),
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        match value.get("schema_version") {
            Some(serde_json::Value::String(v)) if v == SCHEMA_VERSION => {}
            Some(v) => return Err(DocumentError::SchemaVersion(v.to_string())),
            None => {}
        }
        Ok(serde_json::from_value(value)?)
    }
}

/// Parses a value whose textual form must already be canonical.
fn canonical<T: FromStr + ToString>(
    field: &'static str,
    expected: &'static str,
    s: &str,
) -> Result<T, DocumentError> {
    match s.parse::<T>() {
        Ok(v) if v.to_string() == s => Ok(v),
        _ => Err(DocumentError::Value {
            field,
            value: s.to_string(),
            expected,
        }),
    }
}

fn rat(field: &'static str, s: &str) -> Result<Rat, DocumentError> {
    canonical(field, "rational", s)
}

impl From<&RolleWitness> for WitnessPayload {
    fn from(w: &RolleWitness) -> Self {
        WitnessPayload {
            f: format_poly(&w.f),
            nodes: w.nodes.iter().map(Rat::to_string).collect(),
            exponents: w.exponents.iter().map(BigUint::to_string).collect(),
            power: w.power,
            scale: w.scale.to_string(),
        }
    }
}

impl TryFrom<&WitnessPayload> for RolleWitness {
    type Error = DocumentError;

    fn try_from(p: &WitnessPayload) -> Result<Self, DocumentError> {
        let f = parse_poly(&p.f)?;
        if format_poly(&f) != p.f {
            return Err(DocumentError::Value {
                field: "f",
                value: p.f.clone(),
                expected: "polynomial expression",
            });
        }
        Ok(RolleWitness {
            f,
            nodes: p
                .nodes
                .iter()
                .map(|s| rat("nodes", s))
                .collect::<Result<_, _>>()?,
            exponents: p
                .exponents
                .iter()
                .map(|s| canonical("exponents", "nonnegative integer", s))
                .collect::<Result<_, _>>()?,
            power: p.power,
            scale: rat("scale", &p.scale)?,
        })
    }
}

impl From<&CriticalPoint> for CriticalEntry {
    fn from(c: &CriticalPoint) -> Self {
        CriticalEntry {
            location: c.location.to_string(),
            value: c.value.to_string(),
            ramification_index: c.ramification_index.to_string(),
        }
    }
}

impl TryFrom<&CriticalEntry> for CriticalPoint {
    type Error = DocumentError;

    fn try_from(e: &CriticalEntry) -> Result<Self, DocumentError> {
        let location = match e.location.as_str() {
            "infinity" => ProjectivePoint::Infinity,
            s => ProjectivePoint::Finite(rat("critical_report.location", s)?),
        };
        let value = match e.value.as_str() {
            "0" => CriticalValue::Zero,
            "1" => CriticalValue::One,
            "infinity" => CriticalValue::Infinity,
            s => {
                return Err(DocumentError::Value {
                    field: "critical_report.value",
                    value: s.to_string(),
                    expected: "critical value (0, 1 or infinity)",
                })
            }
        };
        Ok(CriticalPoint {
            location,
            value,
            ramification_index: canonical(
                "critical_report.ramification_index",
                "nonnegative integer",
                &e.ramification_index,
            )?,
        })
    }
}

impl From<&BelyiCertificate> for BelyiPayload {
    fn from(c: &BelyiCertificate) -> Self {
        BelyiPayload {
            points: c.points.iter().map(Rat::to_string).collect(),
            exponents: c.exponents.iter().map(BigInt::to_string).collect(),
            constant: c.constant.to_string(),
            degree: c.degree.to_string(),
            critical_report: c.critical_report.iter().map(CriticalEntry::from).collect(),
        }
    }
}

impl TryFrom<&BelyiPayload> for BelyiCertificate {
    type Error = DocumentError;

    fn try_from(p: &BelyiPayload) -> Result<Self, DocumentError> {
        Ok(BelyiCertificate {
            points: p
                .points
                .iter()
                .map(|s| rat("points", s))
                .collect::<Result<_, _>>()?,
            exponents: p
                .exponents
                .iter()
                .map(|s| canonical("exponents", "integer", s))
                .collect::<Result<_, _>>()?,
            constant: rat("constant", &p.constant)?,
            degree: canonical("degree", "nonnegative integer", &p.degree)?,
            critical_report: p
                .critical_report
                .iter()
                .map(CriticalPoint::try_from)
                .collect::<Result<_, _>>()?,
        })
    }
}

/// Document printed by `analyze`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub schema_version: String,
    pub kind: String,
    pub f: String,
    pub degree: usize,
    pub rational_roots: Vec<RootEntry>,
    pub irrational_real: Vec<IntervalEntry>,
    pub nonreal_pair_count: usize,
    pub totally_real: bool,
    pub irrational_simple: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    pub root: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalEntry {
    pub lo: String,
    pub hi: String,
    pub multiplicity: usize,
}

impl AnalysisDocument {
    pub fn new(f: &crate::exactalg::Poly, c: &RootClassification) -> Self {
        AnalysisDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            kind: "root-classification".to_string(),
            f: format_poly(f),
            degree: c.degree,
            rational_roots: c
                .rational_roots
                .iter()
                .map(|(r, m)| RootEntry {
                    root: r.to_string(),
                    multiplicity: *m,
                })
                .collect(),
            irrational_real: c
                .irrational_real
                .iter()
                .map(|(iv, m)| IntervalEntry {
                    lo: iv.lo().to_string(),
                    hi: iv.hi().to_string(),
                    multiplicity: *m,
                })
                .collect(),
            nonreal_pair_count: c.nonreal_pair_count,
            totally_real: c.totally_real,
            irrational_simple: c.irrational_simple,
        }
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}
