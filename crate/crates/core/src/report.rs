//! Pass/fail records shared by every validator and certifier.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One identity checked over a family of instances. Only the first failing
/// instance is kept as the witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub identity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub status: Status,
    pub instances: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(identity: impl Into<String>) -> Self {
        Check { identity: identity.into(), degree: None, status: Status::Pass, instances: 0, witness: None }
    }

    pub fn at_degree(identity: impl Into<String>, degree: usize) -> Self {
        Check { degree: Some(degree), ..Check::new(identity) }
    }

    /// Records one instance; `witness` is only evaluated on the first failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.status == Status::Pass {
            self.status = Status::Fail;
            self.witness = Some(witness());
        }
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.instances += 1;
        if self.status == Status::Pass {
            self.status = Status::Fail;
            self.witness = Some(witness.into());
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport { subject: subject.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, identity: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.identity == identity)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            let deg = c.degree.map(|d| format!(" [n={d}]")).unwrap_or_default();
            let st = if c.passed() { "pass" } else { "FAIL" };
            write!(f, "  {st:4} {}{deg} ({} instances)", c.identity, c.instances)?;
            if let Some(w) = &c.witness {
                write!(f, " witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
