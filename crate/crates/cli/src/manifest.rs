use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::ops;

/// The manifest shipped with the binary.
pub const DEFAULT_MANIFEST: &str = include_str!("../golden/manifest.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TolKind {
    /// `|got − want| ≤ value·|want|`, or `≤ value` when `want = 0`.
    Rel,
    /// `|got − want| ≤ value`.
    Abs,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub kind: TolKind,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenCase {
    pub id: String,
    pub op: String,
    pub inputs: Map<String, Value>,
    pub expected: Map<String, Value>,
    pub tol: Tolerance,
    pub cite: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub book_note: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestFile {
    cases: Vec<GoldenCase>,
}

#[derive(Debug, thiserror::Error)]
pub enum ManifestError {
    #[error("{origin}:{line}:{column}: {message}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("case '{id}': unknown op '{op}'")]
    UnknownOp { id: String, op: String },
    #[error("case '{id}': tolerance must be positive and finite, got {value}")]
    BadTolerance { id: String, value: f64 },
    #[error("duplicate case id '{0}'")]
    DuplicateId(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Accepts either `{"cases": [...]}` or a bare array of cases.
pub fn parse_manifest(text: &str, origin: &str) -> Result<Vec<GoldenCase>, ManifestError> {
    let parse_err = |e: serde_json::Error| ManifestError::Parse {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    };
    let cases = if text.trim_start().starts_with('[') {
        serde_json::from_str::<Vec<GoldenCase>>(text).map_err(parse_err)?
    } else {
        serde_json::from_str::<ManifestFile>(text)
            .map_err(parse_err)?
            .cases
    };
    let mut seen = HashSet::new();
    for c in &cases {
        if ops::lookup(&c.op).is_none() {
            return Err(ManifestError::UnknownOp {
                id: c.id.clone(),
                op: c.op.clone(),
            });
        }
        if !(c.tol.value > 0.0 && c.tol.value.is_finite()) {
            return Err(ManifestError::BadTolerance {
                id: c.id.clone(),
                value: c.tol.value,
            });
        }
        if !seen.insert(c.id.as_str()) {
            return Err(ManifestError::DuplicateId(c.id.clone()));
        }
    }
    Ok(cases)
}

pub fn load_manifest(path: impl AsRef<Path>) -> Result<Vec<GoldenCase>, ManifestError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ManifestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_manifest(&text, &path.display().to_string())
}
