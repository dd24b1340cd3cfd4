use fimod::suite::Status;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Everything a command produces. `table` is the CSV form of the result, if
/// it has one.
#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub config: Value,
    pub status: Status,
    pub checks: Vec<Check>,
    pub result: Value,
    #[serde(skip)]
    pub table: Option<String>,
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub result: serde_json::Map<String, Value>,
    pub table: Option<String>,
}

impl Outcome {
    pub fn put(&mut self, key: &str, value: impl Serialize) {
        self.result.insert(key.to_string(), serde_json::to_value(value).expect("serializable result"));
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: Option<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { name: name.into(), status, detail });
    }

    pub fn inconclusive(&mut self, name: impl Into<String>, detail: String) {
        self.checks.push(Check {
            name: name.into(),
            status: Status::Inconclusive,
            detail: Some(detail),
        });
    }
}

/// Fail beats inconclusive beats pass; no checks is a pass.
pub fn overall(checks: &[Check]) -> Status {
    if checks.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else if checks.iter().any(|c| c.status == Status::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Pass
    }
}

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Inconclusive => 2,
    }
}
