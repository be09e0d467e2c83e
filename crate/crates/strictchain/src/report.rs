//! Verification reports shared by every check routine.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub input: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

/// Outcome of a verification routine: one entry per checked identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(theorem: impl Into<String>) -> Self {
        VerificationReport { theorem: theorem.into(), parameters: BTreeMap::new(), checks: Vec::new() }
    }

    pub fn with_param(mut self, key: &str, value: impl Display) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn record(&mut self, input: impl Into<String>, expected: impl Display, got: impl Display, pass: bool) {
        self.checks.push(Check { input: input.into(), expected: expected.to_string(), got: got.to_string(), pass });
    }

    /// Records an equality check.
    pub fn check_eq<T: PartialEq + Display>(&mut self, input: impl Into<String>, expected: &T, got: &T) {
        let pass = expected == got;
        self.record(input, expected, got, pass);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    pub fn summary(&self) -> String {
        let failed = self.failures().count();
        format!("{}: {}/{} checks passed", self.theorem, self.checks.len() - failed, self.checks.len())
    }
}
