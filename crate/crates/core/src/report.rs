//! JSON documents written by the command-line verbs, and the validator they
//! must pass.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::criterion::{validate_report, Header, SCHEMA};
use crate::error::{Error, Result};

pub const CHECK_SCHEMA: &str = "check/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
}

/// Output of a single verification verb. `certificate` carries what is
/// needed to redo the check offline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: String,
    pub verb: String,
    pub header: Header,
    pub status: Status,
    pub summary: Vec<String>,
    pub result: Value,
    pub certificate: Value,
}

impl CheckReport {
    pub fn new(verb: &str, header: Header, passed: bool) -> Self {
        CheckReport {
            schema: CHECK_SCHEMA.to_string(),
            verb: verb.to_string(),
            header,
            status: if passed { Status::Verified } else { Status::Failed },
            summary: Vec::new(),
            result: Value::Null,
            certificate: Value::Null,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn validate_header(h: Option<&Value>) -> Result<()> {
    let bad = |m: String| Err(Error::Parse(format!("header: {m}")));
    let h = match h.and_then(Value::as_object) {
        Some(h) => h,
        None => return bad("missing".into()),
    };
    for key in ["tool", "version"] {
        if !h.get(key).is_some_and(Value::is_string) {
            return bad(format!("{key} must be a string"));
        }
    }
    for key in ["prime", "precision", "modulus"] {
        if !h.get(key).is_some_and(Value::is_u64) {
            return bad(format!("{key} must be an unsigned integer"));
        }
    }
    if !h.get("degrees").and_then(Value::as_array).is_some_and(|d| d.iter().all(Value::is_u64)) {
        return bad("degrees must be an array of unsigned integers".into());
    }
    Ok(())
}

pub fn validate_check(v: &Value) -> Result<()> {
    let bad = |m: &str| Err(Error::Parse(format!("check report: {m}")));
    if v.get("schema").and_then(Value::as_str) != Some(CHECK_SCHEMA) {
        return bad("schema must be \"check/1\"");
    }
    if !v.get("verb").is_some_and(Value::is_string) {
        return bad("verb must be a string");
    }
    validate_header(v.get("header"))?;
    if !matches!(v.get("status").and_then(Value::as_str), Some("verified" | "failed")) {
        return bad("status must be \"verified\" or \"failed\"");
    }
    if !v.get("summary").and_then(Value::as_array).is_some_and(|s| s.iter().all(Value::is_string)) {
        return bad("summary must be an array of strings");
    }
    if !v.get("certificate").is_some_and(Value::is_object) {
        return bad("certificate must be an object");
    }
    if v.get("result").is_none() {
        return bad("missing result");
    }
    Ok(())
}

/// Validates any document written by the CLI, dispatching on `schema`.
pub fn validate_document(v: &Value) -> Result<()> {
    match v.get("schema").and_then(Value::as_str) {
        Some(SCHEMA) => {
            validate_report(v)?;
            validate_header(v.get("header"))
        }
        Some(CHECK_SCHEMA) => validate_check(v),
        other => Err(Error::Parse(format!("unknown schema {other:?}"))),
    }
}

pub fn validate_document_str(text: &str) -> Result<()> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    validate_document(&v)
}
