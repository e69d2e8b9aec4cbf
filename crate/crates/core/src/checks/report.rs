use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Every instance passed but some part of the claim is only checked in a weaker form.
    Partial,
}

/// Outcome of one check. Serializes to the suite's JSON report schema.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub field: String,
    pub params: BTreeMap<String, Value>,
    pub run: usize,
    pub passed: usize,
    pub skipped: usize,
    pub witnesses: Vec<Value>,
    /// Wall-clock time; `None` unless timing was requested, keeping reports reproducible.
    pub elapsed_ms: Option<u64>,
    pub verdict: Verdict,
    #[serde(skip)]
    weak: bool,
}

impl CheckReport {
    pub(crate) fn new(check_id: &str, field: String, params: BTreeMap<String, Value>) -> Self {
        CheckReport {
            check_id: check_id.to_string(),
            field,
            params,
            run: 0,
            passed: 0,
            skipped: 0,
            witnesses: Vec::new(),
            elapsed_ms: None,
            verdict: Verdict::Pass,
            weak: false,
        }
    }

    /// Records one instance; failing instances carry their counterexample.
    pub(crate) fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> Value) {
        self.run += 1;
        if ok {
            self.passed += 1;
        } else {
            let mut payload = counterexample();
            if let Value::Object(map) = &mut payload {
                map.insert("kind".into(), Value::from("counterexample"));
            }
            self.witnesses.push(payload);
        }
    }

    pub(crate) fn skip(&mut self, count: usize) {
        self.skipped += count;
    }

    pub(crate) fn witness(&mut self, value: Value) {
        self.witnesses.push(value);
    }

    /// Marks the report as covering a claim only in a weaker, labeled form.
    pub(crate) fn mark_weak(&mut self) {
        self.weak = true;
    }

    pub(crate) fn finish(&mut self) {
        self.verdict = if self.passed < self.run {
            Verdict::Fail
        } else if self.weak {
            Verdict::Partial
        } else {
            Verdict::Pass
        };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    /// `Err(CheckFailed)` with the first counterexample when the verdict is `fail`.
    pub fn into_result(self) -> Result<CheckReport> {
        if self.verdict == Verdict::Fail {
            let counterexample = self
                .witnesses
                .iter()
                .find(|w| w.get("kind").and_then(Value::as_str) == Some("counterexample"))
                .map(Value::to_string)
                .unwrap_or_default();
            return Err(Error::CheckFailed { check: self.check_id, counterexample });
        }
        Ok(self)
    }

    pub fn summary_line(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Partial => "partial",
        };
        format!(
            "{:<11} {:<28} run {:>5}  passed {:>5}  skipped {:>5}  {verdict}",
            self.check_id, self.field, self.run, self.passed, self.skipped
        )
    }
}
