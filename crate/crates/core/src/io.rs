//! JSON formats for posets, representations and certificates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::Certificate;
use crate::dyadic::Dyadic;
use crate::forcing::{ForcingCycle, ForcingError, ForcingTrail, Step};
use crate::poset::{Poset, PosetError};
use crate::representation::{PlacedInterval, Representation, TypeSet, TypeSetError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Types(#[from] TypeSetError),
    #[error(transparent)]
    Forcing(#[from] ForcingError),
    #[error("unit length must be 2, found {0}")]
    UnitLength(u32),
    #[error("unknown certificate kind `{0}`")]
    UnknownKind(String),
    #[error("zero-cycle certificate lacks `{0}`")]
    MissingField(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub strict: Vec<(String, String)>,
}

impl PosetJson {
    /// Stores the cover pairs of `p`.
    pub fn from_poset(p: &Poset) -> Self {
        PosetJson {
            elements: p.names().to_vec(),
            strict: p
                .covers()
                .into_iter()
                .map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string()))
                .collect(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset, PosetError> {
        Poset::from_relations(&self.elements, &self.strict)
    }
}

pub fn poset_from_json(text: &str) -> Result<Poset, FormatError> {
    let dto: PosetJson = serde_json::from_str(text)?;
    Ok(dto.to_poset()?)
}

pub fn poset_to_json(p: &Poset) -> String {
    serde_json::to_string_pretty(&PosetJson::from_poset(p)).expect("serializable")
}

fn default_unit_length() -> u32 {
    2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    #[serde(default = "default_unit_length")]
    pub unit_length: u32,
    pub intervals: BTreeMap<String, PlacedInterval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub types_allowed: Option<String>,
}

impl RepresentationJson {
    pub fn from_representation(r: &Representation) -> Self {
        RepresentationJson {
            unit_length: 2,
            intervals: r.intervals.clone(),
            types_allowed: Some(r.allowed.letters()),
        }
    }

    /// Without `types_allowed` the set of types used is taken.
    pub fn to_representation(&self) -> Result<Representation, FormatError> {
        if self.unit_length != 2 {
            return Err(FormatError::UnitLength(self.unit_length));
        }
        let allowed = match &self.types_allowed {
            Some(s) => s.parse()?,
            None => TypeSet::from_types(&self.intervals.values().map(|i| i.ty).collect::<Vec<_>>()),
        };
        Ok(Representation::from_intervals(allowed, self.intervals.clone()))
    }
}

pub fn representation_from_json(text: &str) -> Result<Representation, FormatError> {
    serde_json::from_str::<RepresentationJson>(text)?.to_representation()
}

pub fn representation_to_json(r: &Representation) -> String {
    serde_json::to_string_pretty(&RepresentationJson::from_representation(r)).expect("serializable")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: String,
    pub nodes: Vec<String>,
    pub steps: Vec<Step>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centers: Option<BTreeMap<String, Dyadic>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub types_allowed: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinct_intervals: Option<bool>,
}

impl CertificateJson {
    pub fn from_certificate(c: &Certificate) -> Self {
        let cycle = c.cycle();
        let mut dto = CertificateJson {
            kind: c.kind().to_string(),
            nodes: cycle.nodes().to_vec(),
            steps: cycle.steps().to_vec(),
            value: Some(cycle.value()),
            centers: None,
            types_allowed: None,
            distinct_intervals: None,
        };
        if let Certificate::UnrepresentableZeroCycle {
            centers,
            allowed,
            distinct_intervals,
            ..
        } = c
        {
            dto.centers = Some(centers.clone());
            dto.types_allowed = Some(allowed.letters());
            dto.distinct_intervals = Some(*distinct_intervals);
        }
        dto
    }

    pub fn to_certificate(&self) -> Result<Certificate, FormatError> {
        let cycle = ForcingCycle::new(ForcingTrail::new(self.nodes.clone(), self.steps.clone())?)?;
        match self.kind.as_str() {
            "positive_cycle" => Ok(Certificate::PositiveCycle(cycle)),
            "unrepresentable_zero_cycle" => Ok(Certificate::UnrepresentableZeroCycle {
                cycle,
                centers: self.centers.clone().ok_or(FormatError::MissingField("centers"))?,
                allowed: self
                    .types_allowed
                    .as_deref()
                    .ok_or(FormatError::MissingField("types_allowed"))?
                    .parse()?,
                distinct_intervals: self.distinct_intervals.unwrap_or(false),
            }),
            other => Err(FormatError::UnknownKind(other.to_string())),
        }
    }
}

pub fn certificate_from_json(text: &str) -> Result<Certificate, FormatError> {
    serde_json::from_str::<CertificateJson>(text)?.to_certificate()
}

pub fn certificate_to_json(c: &Certificate) -> String {
    serde_json::to_string_pretty(&CertificateJson::from_certificate(c)).expect("serializable")
}

/// A file holding either a representation or a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    Representation(Representation),
    Certificate(Certificate),
}

pub fn evidence_from_json(text: &str) -> Result<Evidence, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("kind").is_some() {
        Ok(Evidence::Certificate(serde_json::from_value::<CertificateJson>(value)?.to_certificate()?))
    } else {
        Ok(Evidence::Representation(
            serde_json::from_value::<RepresentationJson>(value)?.to_representation()?,
        ))
    }
}
