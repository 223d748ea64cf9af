//! Pass/fail records produced by the checkers.

use std::time::Instant;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

/// Ordered name/value pairs; values are decimal strings so big numbers survive serialization.
pub type Fields = IndexMap<String, String>;

/// Builds [`Fields`] from `(name, value)` pairs, keeping their order.
pub fn fields<K: Into<String>, V: ToString>(pairs: impl IntoIterator<Item = (K, V)>) -> Fields {
    pairs.into_iter().map(|(k, v)| (k.into(), v.to_string())).collect()
}

/// Serializes any displayable value (big integers in particular) as a decimal string.
pub fn as_decimal<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// One checked instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub passed: bool,
    pub params: Fields,
    pub witness: Fields,
}

impl Check {
    pub fn new(passed: bool, params: Fields, witness: Fields) -> Self {
        Check { passed, params, witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub params: Fields,
    pub witness: Fields,
}

/// Aggregate of many [`Check`]s. Only failing instances keep their witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub instances: u64,
    pub passes: u64,
    pub failures: Vec<Failure>,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            instances: 0,
            passes: 0,
            failures: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.instances += 1;
        if check.passed {
            self.passes += 1;
        } else {
            self.failures.push(Failure {
                params: check.params,
                witness: check.witness,
            });
        }
    }

    /// Records a failure that did not come from a checker, e.g. an engine error.
    pub fn push_error(&mut self, params: Fields, message: impl ToString) {
        self.push(Check::new(false, params, fields([("error", message.to_string())])));
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl FromIterator<Check> for VerificationReport {
    fn from_iter<I: IntoIterator<Item = Check>>(iter: I) -> Self {
        let mut r = VerificationReport::new("");
        r.extend(iter);
        r
    }
}

/// Runs `f` and stores its wall time in the report when `timed` is set.
/// Untimed reports keep `wall_time_ms = 0` so that output is reproducible.
pub fn timed(timed: bool, f: impl FnOnce() -> VerificationReport) -> VerificationReport {
    let start = Instant::now();
    let mut r = f();
    if timed {
        r.wall_time_ms = start.elapsed().as_millis() as u64;
    }
    r
}
