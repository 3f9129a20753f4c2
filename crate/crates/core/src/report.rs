//! Itemized pass/fail results shared by the catalog checks and the verifier.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    /// What was observed, on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Remarks that hold regardless of the outcome (known misprints, conventions).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// The witness closure only runs on failure.
    pub fn new(id: impl Into<String>, pass: bool, witness: impl FnOnce() -> String) -> Self {
        Check { id: id.into(), pass, witness: if pass { None } else { Some(witness()) }, note: None }
    }

    pub fn from_result(id: impl Into<String>, r: crate::Result<()>) -> Self {
        match r {
            Ok(()) => Check { id: id.into(), pass: true, witness: None, note: None },
            Err(e) => Check { id: id.into(), pass: false, witness: Some(e.to_string()), note: None },
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}
