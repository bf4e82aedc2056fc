use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one verification, serialized as `{check, status, witness?}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>) -> Self {
        CheckReport { check: check.into(), status: Status::Pass, witness: None, notes: Vec::new() }
    }

    pub fn fail(check: impl Into<String>, witness: Value) -> Self {
        CheckReport { check: check.into(), status: Status::Fail, witness: Some(witness), notes: Vec::new() }
    }

    pub fn from_result(check: impl Into<String>, failure: Option<Value>) -> Self {
        match failure {
            None => CheckReport::pass(check),
            Some(w) => CheckReport::fail(check, w),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// A named bundle of sub-checks; passes iff all of them pass.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportSet {
    pub check: String,
    pub status: Status,
    pub parts: Vec<CheckReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ReportSet {
    pub fn new(check: impl Into<String>, parts: Vec<CheckReport>) -> Self {
        let status = if parts.iter().all(CheckReport::passed) { Status::Pass } else { Status::Fail };
        ReportSet { check: check.into(), status, parts, notes: Vec::new() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn part(&self, name: &str) -> Option<&CheckReport> {
        self.parts.iter().find(|p| p.check == name)
    }
}
