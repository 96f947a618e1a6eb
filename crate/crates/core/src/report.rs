//! Verification reports shared by every identity checker.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check did not stabilize under the truncation policy.
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of one checked cell.
pub type Cell = std::result::Result<(), Value>;

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub cells_checked: u64,
    pub first_failure: Option<Value>,
}

impl VerificationReport {
    pub fn new(identity: &str) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            params: BTreeMap::new(),
            status: Status::Pass,
            cells_checked: 0,
            first_failure: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable parameter"),
        );
        self
    }

    /// Records one cell; the first failing cell's description is kept.
    pub fn check(&mut self, ok: bool, cell: impl FnOnce() -> Value) {
        self.cells_checked += 1;
        if !ok && self.status != Status::Fail {
            self.status = Status::Fail;
            self.first_failure = Some(cell());
        }
    }

    /// Records a precomputed cell: `Err` carries the failure description.
    pub fn push(&mut self, cell: Cell) {
        match cell {
            Ok(()) => self.check(true, || Value::Null),
            Err(detail) => self.check(false, || detail),
        }
    }

    /// Marks the report inconclusive unless it has already failed.
    pub fn inconclusive(&mut self, detail: Value) {
        if self.status == Status::Pass {
            self.status = Status::Inconclusive;
            self.first_failure = Some(detail);
        }
    }

    /// Marks the report inconclusive even over failed cells: a truncated sum
    /// that has not stabilized cannot witness a mismatch.
    pub fn unstable(&mut self, detail: Value) {
        let detail = match self.first_failure.take() {
            Some(cell) if self.status == Status::Fail => serde_json::json!({"unstable": detail, "mismatch": cell}),
            _ => detail,
        };
        self.status = Status::Inconclusive;
        self.first_failure = Some(detail);
    }

    /// Folds another report's cells and verdict into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.cells_checked += other.cells_checked;
        let rank = |s: Status| match s {
            Status::Pass => 0,
            Status::Inconclusive => 1,
            Status::Fail => 2,
        };
        if rank(other.status) > rank(self.status) {
            self.status = other.status;
            self.first_failure = other.first_failure;
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(
            f,
            "{} [{}]: {} ({} cells)",
            self.identity,
            params.join(" "),
            self.status,
            self.cells_checked
        )?;
        if let Some(fail) = &self.first_failure {
            write!(f, "; first failure: {fail}")?;
        }
        Ok(())
    }
}
