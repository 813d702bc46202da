//! Structured pass/fail reports shared by the verification suites.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// diagnostic output, never fails
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// The mathematical statement being verified.
    pub claim: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub m: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(suite: &str, m: usize, seed: u64) -> Self {
        Report {
            suite: suite.to_string(),
            m,
            seed,
            checks: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn push(&mut self, id: impl Into<String>, claim: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            claim: claim.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        });
    }

    pub fn info(&mut self, id: impl Into<String>, claim: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            claim: claim.into(),
            status: Status::Info,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (m = {}, seed = {})", self.suite, self.m, self.seed)?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            writeln!(f, "  [{tag}] {}: {}", c.id, c.claim)?;
            if !c.detail.is_empty() {
                writeln!(f, "         {}", c.detail)?;
            }
        }
        let n_fail = self.failures().count();
        write!(f, "  {} checks, {} failed", self.checks.len(), n_fail)
    }
}
