use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub elapsed_ms: u64,
}

/// What a single check closure hands back.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
    pub witness: Option<String>,
}

impl Outcome {
    pub fn pass(detail: impl Into<String>) -> Self {
        Self::check(true, detail)
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        Self::check(false, detail)
    }

    pub fn check(passed: bool, detail: impl Into<String>) -> Self {
        let mut detail = detail.into();
        detail.truncate(detail.trim_end().len());
        Outcome {
            passed,
            detail,
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub config: serde_json::Value,
    pub checks: Vec<CheckResult>,
    pub ok: bool,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            config: serde_json::Value::Null,
            checks: Vec::new(),
            ok: true,
        }
    }

    /// Run `f`, time it and record the outcome.
    pub fn run<F: FnOnce() -> Outcome>(&mut self, name: impl Into<String>, f: F) {
        let start = Instant::now();
        let outcome = f();
        self.record(name, outcome, start.elapsed().as_millis() as u64);
    }

    pub fn record(&mut self, name: impl Into<String>, outcome: Outcome, elapsed_ms: u64) {
        let status = if outcome.passed {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        self.ok &= outcome.passed;
        self.checks.push(CheckResult {
            name: name.into(),
            status,
            detail: outcome.detail,
            witness: outcome.witness,
            elapsed_ms,
        });
    }

    pub fn skip(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.into(),
            status: CheckStatus::Skipped,
            detail: detail.into(),
            witness: None,
            elapsed_ms: 0,
        });
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.ok &= other.ok;
        self.checks.extend(other.checks);
    }

    /// Sort checks by name; `ok` is recomputed as "every check passed".
    pub fn finish(mut self) -> Self {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self.ok = self.checks.iter().all(|c| c.status != CheckStatus::Fail)
            && self.checks.iter().any(|c| c.status == CheckStatus::Pass);
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn passed(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Pass)
            .count()
    }

    /// JSON with every `elapsed_ms` zeroed, for determinism comparisons.
    pub fn to_json_without_timings(&self) -> String {
        let mut copy = self.clone();
        for c in &mut copy.checks {
            c.elapsed_ms = 0;
        }
        serde_json::to_string_pretty(&copy).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
