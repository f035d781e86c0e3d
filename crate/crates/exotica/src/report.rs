//! Verification reports: a flat list of named pass/fail checks.
//!
//! Verifiers in this crate never panic on a failed property; they record a
//! [`CheckResult`] per property, with a printable witness on failure, and the
//! caller decides what to do with the aggregate.

use std::fmt;

/// One named check with an optional failure witness.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "{}: PASS", self.name)
        } else if let Some(w) = &self.witness {
            write!(f, "{}: FAIL ({})", self.name, w)
        } else {
            write!(f, "{}: FAIL", self.name)
        }
    }
}

/// An ordered collection of check results.
#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: &str) {
        self.checks.push(CheckResult { name: name.to_string(), passed: true, witness: None });
    }

    pub fn fail(&mut self, name: &str, witness: String) {
        self.checks.push(CheckResult { name: name.to_string(), passed: false, witness: Some(witness) });
    }

    /// Record `passed`, attaching the witness only on failure.
    pub fn record(&mut self, name: &str, passed: bool, witness: impl FnOnce() -> String) {
        if passed {
            self.pass(name);
        } else {
            self.fail(name, witness());
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn checks(&self) -> &[CheckResult] {
        &self.checks
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}", c)?;
        }
        Ok(())
    }
}
