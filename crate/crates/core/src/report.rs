use std::fmt;

use serde::{Deserialize, Serialize};

use crate::groups::AbInvariants;

/// Outcome of checking one identity between two computed abelian groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub lhs: AbInvariants,
    pub rhs: AbInvariants,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn compare(subject: impl Into<String>, lhs: AbInvariants, rhs: AbInvariants) -> Self {
        let passed = lhs == rhs;
        VerificationReport { subject: subject.into(), lhs, rhs, passed, notes: Vec::new() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{verdict}: {}: {} vs {}", self.subject, self.lhs, self.rhs)?;
        for n in &self.notes {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

/// Aggregate result of a verification suite, in the CLI's report JSON shape.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteReport { suite: suite.into(), ..Default::default() }
    }

    pub fn record(&mut self, ok: bool, description: impl FnOnce() -> String) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(description());
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.passed == self.cases
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}: {}/{} passed", self.suite, self.passed, self.cases)?;
        for fail in &self.failures {
            writeln!(f, "  failed: {fail}")?;
        }
        Ok(())
    }
}
