use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha1::{Digest, Sha1};

pub const SCHEMA: &str = "permudiag/1";

/// Enough to rerun a command and compare outcomes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<String>,
    /// Git blob hash of the canonical parameters followed by any input file.
    pub input_hash: String,
    pub outcome: String,
}

impl RunManifest {
    pub fn new(
        command: &str,
        parameters: BTreeMap<String, String>,
        ring: &str,
        window: Option<i64>,
        inputs: &[u8],
        passed: bool,
    ) -> Self {
        let mut bytes = serde_json::to_vec(&parameters).expect("string maps serialize");
        bytes.extend_from_slice(inputs);
        RunManifest {
            command: command.into(),
            parameters,
            ring: ring.into(),
            window: window.map(|w| w.to_string()),
            input_hash: content_hash(&bytes),
            outcome: if passed { "PASS" } else { "FAIL" }.into(),
        }
    }
}

/// `git hash-object` of `bytes`.
pub fn content_hash(bytes: &[u8]) -> String {
    let mut h = Sha1::new();
    h.update(format!("blob {}\0", bytes.len()).as_bytes());
    h.update(bytes);
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Replaces every JSON number by its decimal string.
pub fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(xs) => Value::Array(xs.into_iter().map(stringify_numbers).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}
