//! Pass/fail records produced by the verification suites.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

/// One identity checked over `cases` instances; `witness` describes the first failure
/// (or why the check was skipped).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub suite: String,
    pub identity: String,
    pub status: Status,
    pub cases: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn skipped(suite: &str, identity: &str, reason: impl Into<String>) -> Self {
        Self {
            suite: suite.to_string(),
            identity: identity.to_string(),
            status: Status::Skip,
            cases: 0,
            witness: Some(reason.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Accumulates cases of a single identity.
#[derive(Debug)]
pub struct Tally {
    suite: &'static str,
    identity: &'static str,
    cases: usize,
    witness: Option<String>,
}

impl Tally {
    pub fn new(suite: &'static str, identity: &'static str) -> Self {
        Self {
            suite,
            identity,
            cases: 0,
            witness: None,
        }
    }

    /// Records one case; `witness` is only built for the first failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }

    pub fn finish(self) -> CheckOutcome {
        CheckOutcome {
            suite: self.suite.to_string(),
            identity: self.identity.to_string(),
            status: if self.witness.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            cases: self.cases,
            witness: self.witness,
        }
    }
}

pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(CheckOutcome::passed)
}
