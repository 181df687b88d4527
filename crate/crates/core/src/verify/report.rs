use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One violated check.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Failure {
    pub inputs: Vec<String>,
    pub expected: String,
    pub actual: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
}

impl Failure {
    pub fn new(inputs: Vec<String>, expected: impl Into<String>, actual: impl Into<String>) -> Self {
        Failure {
            inputs,
            expected: expected.into(),
            actual: actual.into(),
            repro: None,
        }
    }
}

/// Outcome of a checker or a suite.
///
/// Failures are kept sorted, so two runs over the same inputs serialize to
/// the same bytes. Wall time is not serialized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    #[serde(default)]
    pub config: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checked: u64,
    pub failed: u64,
    pub failures: Vec<Failure>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub details: Value,
    #[serde(skip)]
    pub wall_time: Option<Duration>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            config: Value::Null,
            seed: None,
            checked: 0,
            failed: 0,
            failures: Vec::new(),
            details: Value::Null,
            wall_time: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn record(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.checked += 1;
        if !ok {
            self.push_failure(failure());
        }
    }

    pub fn push_failure(&mut self, f: Failure) {
        let at = self.failures.binary_search(&f).unwrap_or_else(|e| e);
        self.failures.insert(at, f);
        self.failed = self.failures.len() as u64;
    }

    /// Adds counts and failures of `other`; the result stays sorted.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.failures.sort();
        self.failed = self.failures.len() as u64;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_stay_sorted_and_counted() {
        let mut r = VerificationReport::new("x");
        r.record(true, || unreachable!());
        r.record(false, || Failure::new(vec!["b".into()], "0", "1"));
        r.record(false, || Failure::new(vec!["a".into()], "0", "2"));
        let mut other = VerificationReport::new("y");
        other.record(false, || Failure::new(vec!["0".into()], "0", "3"));
        r.absorb(other);
        assert_eq!(r.checked, 4);
        assert_eq!(r.failed, 3);
        let order: Vec<_> = r.failures.iter().map(|f| f.inputs[0].as_str()).collect();
        assert_eq!(order, ["0", "a", "b"]);
    }

    #[test]
    fn wall_time_is_not_serialized() {
        let mut r = VerificationReport::new("x");
        let before = r.to_json();
        r.wall_time = Some(Duration::from_secs(3));
        assert_eq!(before, r.to_json());
        assert!(!before.contains("wall"));
    }
}
