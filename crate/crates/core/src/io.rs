//! JSON persistence for families.
//!
//! A document looks like
//!
//! ```json
//! {"schema_version":1,"n":3,"s":2,"lines":[[0,1],[0,2],[1,2]],"metadata":{"construction":"near-pencil"}}
//! ```
//!
//! Output is compact, fields appear in the order above, metadata keys are
//! sorted and lines are in canonical order, so equal families serialize to
//! equal bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::model::{make_family, CoverFamily, ModelError};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema_version {0} (expected {SCHEMA_VERSION})")]
    SchemaVersion(u64),
    #[error("line {line}, entry {entry}: non-integer point {value}")]
    NonIntegerPoint { line: usize, entry: usize, value: String },
    #[error("invalid family: {0}")]
    Family(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub schema_version: u64,
    pub n: usize,
    pub s: usize,
    pub lines: Vec<Vec<usize>>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

impl FamilyDocument {
    pub fn from_family(f: &CoverFamily, metadata: BTreeMap<String, String>) -> Self {
        FamilyDocument {
            schema_version: SCHEMA_VERSION,
            n: f.n(),
            s: f.s(),
            lines: f.to_index_lines(),
            metadata,
        }
    }

    pub fn to_family(&self) -> Result<CoverFamily, DocumentError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::SchemaVersion(self.schema_version));
        }
        Ok(make_family(self.n, self.s, self.lines.iter().map(|l| l.iter().copied()))?)
    }
}

/// Same shape as [`FamilyDocument`] but with untyped points, so that
/// non-integer entries get a precise error.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    schema_version: u64,
    n: usize,
    s: usize,
    lines: Vec<Vec<Value>>,
    #[serde(default)]
    metadata: BTreeMap<String, String>,
}

pub fn serialize(f: &CoverFamily, metadata: &BTreeMap<String, String>) -> Vec<u8> {
    serde_json::to_vec(&FamilyDocument::from_family(f, metadata.clone()))
        .expect("documents always serialize")
}

/// Parses and validates a document, returning the family and its metadata.
pub fn parse_document(bytes: &[u8]) -> Result<(CoverFamily, BTreeMap<String, String>), DocumentError> {
    let raw: RawDocument = serde_json::from_slice(bytes)?;
    if raw.schema_version != SCHEMA_VERSION {
        return Err(DocumentError::SchemaVersion(raw.schema_version));
    }
    let mut lines = Vec::with_capacity(raw.lines.len());
    for (li, line) in raw.lines.iter().enumerate() {
        let pts = line
            .iter()
            .enumerate()
            .map(|(ei, v)| {
                v.as_u64().map(|p| p as usize).ok_or_else(|| DocumentError::NonIntegerPoint {
                    line: li,
                    entry: ei,
                    value: v.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        lines.push(pts);
    }
    let f = make_family(raw.n, raw.s, lines)?;
    Ok((f, raw.metadata))
}

pub fn parse(bytes: &[u8]) -> Result<CoverFamily, DocumentError> {
    parse_document(bytes).map(|(f, _)| f)
}
