//! Validation reports: one entry per checked axiom, with a witness on failure.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub axiom: String,
    pub law: String,
    pub status: Status,
    pub witness: Value,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ValidationReport {
    checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `axiom` as passing when `witness` is `None`, failing otherwise.
    pub fn record(&mut self, axiom: &str, law: &str, witness: Option<Value>) {
        let (status, witness) = match witness {
            None => (Status::Pass, Value::Null),
            Some(w) => (Status::Fail, w),
        };
        self.checks.push(Check {
            axiom: axiom.to_string(),
            law: law.to_string(),
            status,
            witness,
        });
    }

    pub fn pass(&mut self, axiom: &str, law: &str) {
        self.record(axiom, law, None);
    }

    pub fn fail(&mut self, axiom: &str, law: &str, witness: Value) {
        self.record(axiom, law, Some(witness));
    }

    /// Boolean check; a failure carries `details` as its witness.
    pub fn expect(&mut self, axiom: &str, law: &str, ok: bool, details: Value) {
        self.record(axiom, law, (!ok).then_some(details));
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    /// Appends `other` with every axiom name prefixed by `prefix.`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: ValidationReport) {
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.axiom = format!("{prefix}.{}", c.axiom);
            c
        }));
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn is_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, axiom: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn passed(&self, axiom: &str) -> bool {
        self.get(axiom).is_some_and(Check::passed)
    }

    pub fn to_json(&self) -> Value {
        json!(self.checks)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match c.status {
                Status::Pass => writeln!(f, "pass  {}", c.axiom)?,
                Status::Fail => writeln!(f, "FAIL  {}  {}", c.axiom, c.witness)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_shape() {
        let mut r = ValidationReport::new();
        r.pass("Unit", "1·x = x");
        r.fail("Associativity", "(xy)z = x(yz)", json!({"triple": ["a", "b", "c"]}));
        assert!(!r.is_pass());
        let v = r.to_json();
        assert_eq!(v[0]["status"], "pass");
        assert_eq!(v[1]["axiom"], "Associativity");
        assert_eq!(v[1]["witness"]["triple"][1], "b");
        assert_eq!(r.failures().count(), 1);
    }
}
