//! Machine-readable reports with a stable schema: per-check status,
//! replayable counterexample payloads, and timing. Identical runs produce
//! byte-identical reports.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// One named check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// How many cases ran under this check.
    pub cases: usize,
    /// How many of them failed.
    pub failures: usize,
    /// A replayable description of the first failure: seed, case index, and
    /// any inputs needed to rerun it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
}

impl Check {
    pub fn passing(name: impl Into<String>, cases: usize) -> Check {
        Check { name: name.into(), pass: true, cases, failures: 0, counterexample: None }
    }

    pub fn from_flag(name: impl Into<String>, pass: bool, cases: usize) -> Check {
        Check {
            name: name.into(),
            pass,
            cases,
            failures: usize::from(!pass),
            counterexample: None,
        }
    }

    pub fn fail(&mut self, counterexample: serde_json::Value) {
        self.failures += 1;
        if self.pass {
            self.pass = false;
            self.counterexample = Some(counterexample);
        }
    }
}

/// A full suite report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(suite: impl Into<String>, seed: Option<u64>) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            suite: suite.into(),
            seed,
            checks: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// One line per check, `PASS`/`FAIL` first.
    pub fn summary_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{} {} ({} cases, {} failures)",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.cases,
                    c.failures
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_roundtrips_through_json() {
        let mut r = Report::new("demo", Some(7));
        r.push(Check::passing("a", 10));
        let mut c = Check::passing("b", 5);
        c.fail(serde_json::json!({"case": 3}));
        r.push(c);
        assert!(!r.passed());
        let s = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back.checks.len(), 2);
        assert_eq!(back.schema_version, SCHEMA_VERSION);
    }
}
