//! Structured verification reports.

use serde::Serialize;

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One named check with optional failure evidence (a polynomial in text
/// form, usually the lowest-degree surviving monomial).
#[derive(Serialize, Clone, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Option<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            witness,
        }
    }

    pub fn from_outcome(name: impl Into<String>, pass: bool, witness: Option<String>) -> Self {
        if pass {
            Check::pass(name)
        } else {
            Check::fail(name, witness)
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Verification results for one (group, height) cell.
#[derive(Serialize, Clone, Debug)]
pub struct VerificationReport {
    pub group: String,
    pub s: u32,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<u64>,
    pub runtime_ms: u128,
}

impl VerificationReport {
    pub fn new(group: impl Into<String>, s: u32) -> Self {
        VerificationReport {
            group: group.into(),
            s,
            checks: Vec::new(),
            dimension: None,
            f: None,
            tau: None,
            chi: None,
            runtime_ms: 0,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}
