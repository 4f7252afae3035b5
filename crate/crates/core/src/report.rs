//! Check reports shared by the validators and the command line.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckItem {
    pub check: String,
    pub location: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckItem {
    pub fn pass(check: impl Into<String>, location: impl Into<String>) -> Self {
        CheckItem { check: check.into(), location: location.into(), status: Status::Pass, witness: None }
    }

    pub fn fail(check: impl Into<String>, location: impl Into<String>, witness: Value) -> Self {
        CheckItem { check: check.into(), location: location.into(), status: Status::Fail, witness: Some(witness) }
    }

    pub fn from_outcome(check: impl Into<String>, location: impl Into<String>, outcome: Result<(), Value>) -> Self {
        match outcome {
            Ok(()) => Self::pass(check, location),
            Err(w) => Self::fail(check, location, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// An ordered list of check outcomes. Serializes as a bare JSON list.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Report {
    items: Vec<CheckItem>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn extend(&mut self, other: Report) {
        self.items.extend(other.items);
    }

    pub fn items(&self) -> &[CheckItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(CheckItem::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            let status = if item.passed() { "PASS" } else { "FAIL" };
            write!(f, "{status} {} [{}]", item.check, item.location)?;
            if let Some(w) = &item.witness {
                write!(f, " {w}")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.items.len(), failed)
    }
}
