//! Versioned JSON documents: `{"schema": 1, "kind": ..., "payload": ...}`.
//!
//! Saving is canonical: keys sorted, two-space indentation, matrix entries as
//! reduced rational strings, trailing newline. `save(load(x))` is a fixed point.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::duoidal::DuoidalSamples;
use crate::graded::{GradedMap, GradedObject, Product};
use crate::linalg::Matrix;
use crate::measuring::{GrouplikeCandidate, MeasuringCandidate};
use crate::species::SymmetricSequence;
use crate::structures::{Structure, Variance};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SerialError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error("unsupported schema version {0}")]
    Version(u32),
    #[error("payload does not match kind {kind}: {msg}")]
    Payload { kind: &'static str, msg: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    GradedObject,
    Species,
    Monoid,
    Comonoid,
    Operad,
    Cooperad,
    Measuring,
    Samples,
    Grouplike,
    Factorization,
}

impl Kind {
    pub fn tag(self) -> &'static str {
        match self {
            Kind::GradedObject => "graded-object",
            Kind::Species => "species",
            Kind::Monoid => "monoid",
            Kind::Comonoid => "comonoid",
            Kind::Operad => "operad",
            Kind::Cooperad => "cooperad",
            Kind::Measuring => "measuring",
            Kind::Samples => "samples",
            Kind::Grouplike => "grouplike",
            Kind::Factorization => "factorization",
        }
    }
}

/// A factorization query: does `g: C → P` carry `phi_univ` to `psi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationCandidate {
    pub universal: Structure,
    pub phi_univ: Vec<Matrix>,
    pub psi: MeasuringCandidate,
    pub g: GradedMap,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<GradedMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    GradedObject(GradedObject),
    Species(SymmetricSequence),
    /// A monoid, comonoid, operad or cooperad; the kind follows from the data.
    Structure(Structure),
    Measuring(MeasuringCandidate),
    Samples(DuoidalSamples),
    Grouplike(GrouplikeCandidate),
    Factorization(Box<FactorizationCandidate>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    schema: u32,
    kind: Kind,
    payload: Value,
}

pub fn structure_kind(s: &Structure) -> Kind {
    match (s.product(), s.variance()) {
        (Product::Substitution, Variance::Monoid) => Kind::Operad,
        (Product::Substitution, Variance::Comonoid) => Kind::Cooperad,
        (_, Variance::Monoid) => Kind::Monoid,
        (_, Variance::Comonoid) => Kind::Comonoid,
    }
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::GradedObject(_) => Kind::GradedObject,
            Document::Species(_) => Kind::Species,
            Document::Structure(s) => structure_kind(s),
            Document::Measuring(_) => Kind::Measuring,
            Document::Samples(_) => Kind::Samples,
            Document::Grouplike(_) => Kind::Grouplike,
            Document::Factorization(_) => Kind::Factorization,
        }
    }

    fn payload(&self) -> Value {
        let v = match self {
            Document::GradedObject(x) => serde_json::to_value(x),
            Document::Species(x) => serde_json::to_value(x),
            Document::Structure(x) => serde_json::to_value(x),
            Document::Measuring(x) => serde_json::to_value(x),
            Document::Samples(x) => serde_json::to_value(x),
            Document::Grouplike(x) => serde_json::to_value(x),
            Document::Factorization(x) => serde_json::to_value(x),
        };
        v.expect("documents serialize")
    }
}

fn parse<T: for<'de> Deserialize<'de>>(kind: Kind, v: Value) -> Result<T, SerialError> {
    serde_json::from_value(v).map_err(|e| SerialError::Payload { kind: kind.tag(), msg: e.to_string() })
}

pub fn load(text: &str) -> Result<Document, SerialError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| SerialError::Json(e.to_string()))?;
    if raw.schema != SCHEMA_VERSION {
        return Err(SerialError::Version(raw.schema));
    }
    let kind = raw.kind;
    let doc = match kind {
        Kind::GradedObject => Document::GradedObject(parse(kind, raw.payload)?),
        Kind::Species => Document::Species(parse(kind, raw.payload)?),
        Kind::Monoid | Kind::Comonoid | Kind::Operad | Kind::Cooperad => Document::Structure(parse(kind, raw.payload)?),
        Kind::Measuring => Document::Measuring(parse(kind, raw.payload)?),
        Kind::Samples => Document::Samples(parse(kind, raw.payload)?),
        Kind::Grouplike => Document::Grouplike(parse(kind, raw.payload)?),
        Kind::Factorization => Document::Factorization(Box::new(parse(kind, raw.payload)?)),
    };
    if doc.kind() != kind {
        return Err(SerialError::Payload { kind: kind.tag(), msg: format!("the data describes a {}", doc.kind().tag()) });
    }
    Ok(doc)
}

fn sorted(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sorted(v))).collect::<Map<_, _>>())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(sorted).collect()),
        other => other,
    }
}

/// Canonical form of any serializable value.
pub fn canonical_json<T: Serialize>(x: &T) -> String {
    let v = sorted(serde_json::to_value(x).expect("serializable"));
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn save(doc: &Document) -> String {
    let raw = RawDocument { schema: SCHEMA_VERSION, kind: doc.kind(), payload: doc.payload() };
    canonical_json(&raw)
}

pub fn canonicalize(text: &str) -> Result<String, SerialError> {
    load(text).map(|d| save(&d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::UnitKind;
    use crate::structures::{example_library, EXAMPLES};

    #[test]
    fn library_round_trips() {
        for name in EXAMPLES {
            let doc = Document::Structure(example_library(name, 3).unwrap());
            let text = save(&doc);
            assert_eq!(load(&text).unwrap(), doc, "{name}");
            assert_eq!(canonicalize(&text).unwrap(), text, "{name}");
        }
        let unit = Document::GradedObject(GradedObject::unit(UnitKind::Cauchy, 3));
        assert_eq!(canonicalize(&save(&unit)).unwrap(), save(&unit));
    }

    #[test]
    fn canonicalization_sorts_and_reduces() {
        let text = r#"{"payload": {"dims": [1, 0, 2], "truncation": 2}, "kind": "graded-object", "schema": 1}"#;
        let canon = canonicalize(text).unwrap();
        assert!(canon.find("\"kind\"").unwrap() < canon.find("\"payload\"").unwrap());
        assert_eq!(canonicalize(&canon).unwrap(), canon);
        let m = r#"{"schema":1,"kind":"grouplike","payload":{"degree":0,"element":{"rows":1,"cols":1,"entries":["2/4"]},
            "comonoid":{"product":"hadamard","variance":"comonoid","carrier":{"truncation":0,"dims":[1]},
            "components":{"0":{"rows":1,"cols":1,"entries":["1"]}},"unit":{"0":{"rows":1,"cols":1,"entries":["1"]}}}}}"#;
        assert!(canonicalize(m).unwrap().contains("\"1/2\""));
    }

    #[test]
    fn schema_violations() {
        let bad = [
            r#"{"schema":1,"kind":"graded-object","payload":{"truncation":1,"dims":[1,1]},"extra":0}"#,
            r#"{"schema":2,"kind":"graded-object","payload":{"truncation":1,"dims":[1,1]}}"#,
            r#"{"schema":1,"kind":"graded-object","payload":{"truncation":2,"dims":[1,1]}}"#,
            r#"{"schema":1,"kind":"graded-object","payload":{"truncation":1,"dims":[1,1],"x":1}}"#,
            r#"{"schema":1,"kind":"mystery","payload":{}}"#,
            r#"not json"#,
        ];
        for b in bad {
            assert!(load(b).is_err(), "{b}");
        }
        let ass = save(&Document::Structure(example_library("ass", 2).unwrap()));
        assert!(load(&ass.replace("\"kind\": \"operad\"", "\"kind\": \"monoid\"")).is_err());
        assert!(load(&ass.replacen("\"1\"", "\"2/0\"", 1)).is_err());
    }
}
