//! Structured pass/fail reports shared by all verification suites.

use serde::Serialize;
use std::fmt;

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    /// An exactness gap resolved by the certified numeric fallback; visible
    /// so it is never silently treated as a pass.
    UndecidedNumericFallback,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "FAIL"),
            Status::UndecidedNumericFallback => write!(f, "undecided-numeric-fallback"),
        }
    }
}

/// One checked item; `tag` names the identity being verified (or
/// "plumbing" for infrastructure checks), `witness` carries a residual or
/// counterexample description on failure.
#[derive(Clone, Debug, Serialize)]
pub struct ReportItem {
    pub id: String,
    pub tag: String,
    pub status: Status,
    pub witness: String,
}

/// A deterministic, ordered collection of report items for one suite.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub items: Vec<ReportItem>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), items: Vec::new() }
    }

    pub fn check(&mut self, id: &str, tag: &str, ok: bool) {
        self.items.push(ReportItem {
            id: id.to_string(),
            tag: tag.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: String::new(),
        });
    }

    pub fn check_witness(&mut self, id: &str, tag: &str, ok: bool, witness: String) {
        self.items.push(ReportItem {
            id: id.to_string(),
            tag: tag.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: if ok { String::new() } else { witness },
        });
    }

    pub fn undecided(&mut self, id: &str, tag: &str, witness: String) {
        self.items.push(ReportItem {
            id: id.to_string(),
            tag: tag.to_string(),
            status: Status::UndecidedNumericFallback,
            witness,
        });
    }

    /// Sort items by id for deterministic emission.
    pub fn finalize(&mut self) {
        self.items.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.status == Status::Pass)
    }

    pub fn failures(&self) -> Vec<&ReportItem> {
        self.items.iter().filter(|i| i.status == Status::Fail).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for i in &self.items {
            out.push_str(&format!("  [{}] {} ({})", i.status, i.id, i.tag));
            if !i.witness.is_empty() {
                out.push_str(&format!(" :: {}", i.witness));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// Merge another report's items into this one.
    pub fn absorb(&mut self, other: Report) {
        self.items.extend(other.items);
    }
}
