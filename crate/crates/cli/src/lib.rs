//! Library half of the `permudiag` binary: argument types, the three
//! commands and the versioned JSON envelope.

use std::collections::BTreeMap;

use serde_json::Value;
use thiserror::Error;

mod diag;
mod kk;
mod manifest;
mod verify;

pub use diag::{cmd_diag, DiagArgs, Polytope};
pub use kk::{cmd_kk, KkArgs};
pub use manifest::{content_hash, stringify_numbers, RunManifest, SCHEMA};
pub use verify::{cmd_verify, Suite, VerifyArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RingArg {
    F2,
    Z,
}

impl RingArg {
    pub fn name(self) -> &'static str {
        match self {
            RingArg::F2 => "F2",
            RingArg::Z => "Z",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("capability gap: {0}")]
    Capability(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Capability(_) => 3,
        }
    }
}

pub fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// What a command produced: the manifest, the result body and, for `kk`,
/// Graphviz text.
#[derive(Clone, Debug)]
pub struct Report {
    pub manifest: RunManifest,
    pub result: Value,
    pub passed: bool,
    pub face_poset_dot: Option<String>,
    pub fractions_dot: Option<String>,
}

impl Report {
    pub(crate) fn new(
        command: &str,
        parameters: BTreeMap<String, String>,
        ring: &str,
        window: Option<i64>,
        inputs: &[u8],
        result: Value,
        passed: bool,
    ) -> Self {
        let manifest = RunManifest::new(command, parameters, ring, window, inputs, passed);
        Report {
            manifest,
            result,
            passed,
            face_poset_dot: None,
            fractions_dot: None,
        }
    }

    /// Exit status on success: 0 if everything passed, 1 on a verified failure.
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }

    /// The JSON document, every number rendered as a string.
    pub fn to_json(&self) -> Value {
        let mut doc = serde_json::Map::new();
        doc.insert("schema".into(), Value::String(SCHEMA.into()));
        doc.insert("manifest".into(), serde_json::to_value(&self.manifest).expect("manifest serializes"));
        doc.insert("result".into(), self.result.clone());
        stringify_numbers(Value::Object(doc))
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
        s.push('\n');
        s
    }
}
