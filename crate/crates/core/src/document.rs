//! The JSON document envelope shared by every input and output of the
//! `torickit` binary.
//!
//! A document is `{"kind": ..., "version": ..., "payload": ...}`. Emission is
//! canonical: object keys sorted, two-space indentation, trailing newline.
//! Readers also accept a bare payload when the expected kind is known.

use crate::error::{Error, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DocumentKind {
    Fan,
    Divisor,
    Isogeny,
    Curve,
    Ideal,
    Certificate,
    Plan,
    Report,
}

impl fmt::Display for DocumentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DocumentKind::Fan => "fan",
            DocumentKind::Divisor => "divisor",
            DocumentKind::Isogeny => "isogeny",
            DocumentKind::Curve => "curve",
            DocumentKind::Ideal => "ideal",
            DocumentKind::Certificate => "certificate",
            DocumentKind::Plan => "plan",
            DocumentKind::Report => "report",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub kind: DocumentKind,
    pub version: String,
    pub payload: Value,
}

impl Document {
    pub fn new<T: Serialize>(kind: DocumentKind, payload: &T) -> Result<Self> {
        let payload = serde_json::to_value(payload).map_err(|e| Error::Internal(e.to_string()))?;
        Ok(Document {
            kind,
            version: VERSION.to_string(),
            payload,
        })
    }

    /// Canonical pretty form.
    pub fn emit(&self) -> String {
        let v = serde_json::to_value(self).expect("documents are plain JSON");
        let mut s = serde_json::to_string_pretty(&v).expect("documents are plain JSON");
        s.push('\n');
        s
    }

    /// Canonical single-line form.
    pub fn emit_compact(&self) -> String {
        let v = serde_json::to_value(self).expect("documents are plain JSON");
        let mut s = v.to_string();
        s.push('\n');
        s
    }

    pub fn payload_as<T: DeserializeOwned>(&self) -> Result<T> {
        serde_json::from_value(self.payload.clone())
            .map_err(|e| Error::Parse(format!("{} payload: {e}", self.kind)))
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    let msg = e.to_string();
    let suffix = format!(" at line {} column {}", e.line(), e.column());
    let msg = msg.strip_suffix(&suffix).unwrap_or(&msg);
    Error::Parse(format!("line {}, column {}: {msg}", e.line(), e.column()))
}

fn is_envelope(v: &Value) -> bool {
    v.as_object()
        .is_some_and(|o| o.contains_key("kind") && o.contains_key("payload"))
}

/// Parses an enveloped document.
pub fn parse_document(text: &str) -> Result<Document> {
    let v: Value = serde_json::from_str(text).map_err(parse_error)?;
    if !is_envelope(&v) {
        return Err(Error::Parse(
            "line 1, column 1: expected an object with \"kind\" and \"payload\"".into(),
        ));
    }
    serde_json::from_value(v).map_err(|e| Error::Parse(format!("document envelope: {e}")))
}

/// Parses a document of the expected kind, enveloped or bare.
pub fn parse_as<T: DeserializeOwned>(text: &str, kind: DocumentKind) -> Result<T> {
    let v: Value = serde_json::from_str(text).map_err(parse_error)?;
    if is_envelope(&v) {
        let doc: Document = serde_json::from_value(v)
            .map_err(|e| Error::Parse(format!("document envelope: {e}")))?;
        if doc.kind != kind {
            return Err(Error::Parse(format!(
                "expected a {kind} document, found {}",
                doc.kind
            )));
        }
        return doc.payload_as();
    }
    serde_json::from_str(text).map_err(parse_error)
}

/// Canonical pretty document text for a payload.
pub fn emit<T: Serialize>(kind: DocumentKind, payload: &T) -> Result<String> {
    Ok(Document::new(kind, payload)?.emit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{examples, Fan};

    #[test]
    fn round_trip_and_canonical_order() {
        let fan = examples::projective_plane();
        let text = emit(DocumentKind::Fan, &fan).unwrap();
        assert!(text.starts_with("{\n  \"kind\": \"fan\",\n  \"payload\""));
        let back: Fan = parse_as(&text, DocumentKind::Fan).unwrap();
        assert_eq!(back, fan);
        let doc = parse_document(&text).unwrap();
        assert_eq!(doc.emit(), text);
        let bare = serde_json::to_string(&fan).unwrap();
        assert_eq!(parse_as::<Fan>(&bare, DocumentKind::Fan).unwrap(), fan);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_as::<Fan>(
            "{\n  \"rank\": 2,\n  \"rays\": [[1, 0],\n",
            DocumentKind::Fan,
        )
        .unwrap_err();
        assert!(err.to_string().contains("line 4"), "{err}");
        let fan = examples::projective_line();
        let text = emit(DocumentKind::Fan, &fan).unwrap();
        assert!(matches!(
            parse_as::<Fan>(&text, DocumentKind::Divisor),
            Err(Error::Parse(_))
        ));
    }
}
