//! Row-by-row verification of the transcribed tables.
//!
//! Every command returns a [`Report`]: a stable-ordered list of checks, each
//! `pass`, `fail`, `erratum` (the printed text fails, a documented correction
//! passes), `logged` (informational discrepancy that the spec does not treat as
//! failure) or `review` (flagged for a human, never auto-failed).

pub mod common;
pub mod complements;
pub mod lifts;
pub mod mutate;
pub mod nonsplit;
pub mod prose;
pub mod selftest;
pub mod signed;
pub mod structure;
pub mod tori;

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Erratum,
    Logged,
    Review,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Erratum => "ERRATUM",
            Status::Logged => "LOGGED",
            Status::Review => "REVIEW",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Report {
            command: command.into(),
            seed,
            checks: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn push(&mut self, id: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            status,
            detail: detail.into(),
            evidence: None,
        });
    }

    pub fn push_evidence(
        &mut self,
        id: impl Into<String>,
        status: Status,
        detail: impl Into<String>,
        evidence: serde_json::Value,
    ) {
        self.checks.push(Check {
            id: id.into(),
            status,
            detail: detail.into(),
            evidence: Some(evidence),
        });
    }

    /// `pass` if `ok`, otherwise `fail`.
    pub fn expect(&mut self, id: impl Into<String>, ok: bool, detail: impl Into<String>) -> bool {
        self.push(id, if ok { Status::Pass } else { Status::Fail }, detail);
        ok
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn ok(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn with_prefix(&self, prefix: &str) -> impl Iterator<Item = &Check> + '_ {
        let prefix = prefix.to_string();
        self.checks.iter().filter(move |c| c.id.starts_with(&prefix))
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} checks, {} pass, {} fail, {} erratum, {} logged, {} review ({} ms)",
            self.command,
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Erratum),
            self.count(Status::Logged),
            self.count(Status::Review),
            self.elapsed_ms
        )
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {}\n", self.command);
        let _ = writeln!(s, "seed {}, {}\n", self.seed, self.summary());
        let _ = writeln!(s, "| check | status | detail |");
        let _ = writeln!(s, "|---|---|---|");
        for c in &self.checks {
            let _ = writeln!(
                s,
                "| `{}` | {} | {} |",
                c.id,
                c.status.label(),
                c.detail.replace('|', "\\|")
            );
        }
        s
    }
}

/// Runs `f` and stamps the elapsed time on its report.
pub fn timed(f: impl FnOnce() -> Report) -> Report {
    let t = Instant::now();
    let mut r = f();
    r.elapsed_ms = t.elapsed().as_millis();
    r
}
