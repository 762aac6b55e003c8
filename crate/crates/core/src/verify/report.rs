use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail)
    }
}

/// One claim checked at one field order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub q: u32,
    pub status: Status,
    pub expected: Value,
    pub observed: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub millis: Option<u64>,
}

impl Report {
    pub fn new(claim: &str, q: u32, ok: bool, expected: Value, observed: Value) -> Self {
        Report {
            claim: claim.to_string(),
            q,
            status: Status::from_bool(ok),
            expected,
            observed,
            witness: None,
            millis: None,
        }
    }

    pub fn skipped(claim: &str, q: u32, reason: impl Into<String>) -> Self {
        Report {
            claim: claim.to_string(),
            q,
            status: Status::Skipped(reason.into()),
            expected: Value::Null,
            observed: Value::Null,
            witness: None,
            millis: None,
        }
    }

    /// Attaches the witness only when the report failed.
    pub fn with_witness(mut self, witness: impl FnOnce() -> Value) -> Self {
        if self.status.is_fail() {
            self.witness = Some(witness());
        }
        self
    }
}

/// Wall-clock timing is recorded only when `FGDT_TIMING=1`, so that reports
/// stay byte-identical across runs by default.
pub fn timed(f: impl FnOnce() -> Vec<Report>) -> Vec<Report> {
    let on = std::env::var("FGDT_TIMING").is_ok_and(|v| v == "1");
    let start = Instant::now();
    let mut out = f();
    if on {
        let ms = start.elapsed().as_millis() as u64;
        for r in &mut out {
            r.millis = Some(ms);
        }
    }
    out
}

pub fn sort_reports(reports: &mut [Report]) {
    reports.sort_by(|a, b| a.claim.cmp(&b.claim).then(a.q.cmp(&b.q)));
}

pub fn any_failed(reports: &[Report]) -> bool {
    reports.iter().any(|r| r.status.is_fail())
}
