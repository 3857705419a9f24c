use std::fmt;

use graded_hopf::{WindowCheck, Word, WordChain};
use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "as_str")]
    pub input: Word,
    #[serde(serialize_with = "as_str")]
    pub value: WordChain,
}

/// Verdict for one relation on one degree window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub relation: String,
    #[serde(serialize_with = "opt_as_str", skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(serialize_with = "as_str")]
    pub window: i64,
    #[serde(serialize_with = "as_str")]
    pub words_checked: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Operations absent from the structure and read as zero.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub missing: Vec<String>,
}

impl RelationReport {
    pub fn from_check(relation: &str, k: Option<usize>, c: &WindowCheck, missing: Vec<String>) -> Self {
        RelationReport {
            relation: relation.to_string(),
            k,
            window: c.window,
            words_checked: c.words_checked,
            status: if c.passed() { Status::Pass } else { Status::Fail },
            witness: c.counterexample.as_ref().map(|(w, v)| Witness {
                input: w.clone(),
                value: v.clone(),
            }),
            missing,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.relation)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        write!(f, ": {} on degree <= {} ({} words)", self.status, self.window, self.words_checked)?;
        if let Some(w) = &self.witness {
            write!(f, "; {} ↦ {}", w.input, w.value)?;
        }
        if !self.missing.is_empty() {
            write!(f, "; zero: {}", self.missing.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub status: Status,
    pub items: Vec<RelationReport>,
}

impl SuiteReport {
    pub fn new(name: impl Into<String>, items: Vec<RelationReport>) -> Self {
        let status = if items.iter().all(RelationReport::passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        SuiteReport {
            name: name.into(),
            status,
            items,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn as_str<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn opt_as_str<T: fmt::Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}
