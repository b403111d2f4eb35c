use std::fmt;

use serde::Serialize;

/// One failed instance of an axiom, with the elements that exhibit it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: witness {:?}", self.axiom, self.witness)
    }
}

/// Outcome of an exhaustive axiom sweep. `passed()` holds iff no violation
/// was recorded.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
    /// Set when more violations existed than were kept.
    pub truncated: bool,
}

/// Per-axiom cap on stored witnesses.
const MAX_PER_AXIOM: usize = 16;

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fail(&mut self, axiom: &str, witness: impl Into<Vec<usize>>) {
        let kept = self.violations.iter().filter(|v| v.axiom == axiom).count();
        if kept >= MAX_PER_AXIOM {
            self.truncated = true;
            return;
        }
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            witness: witness.into(),
        });
    }

    pub fn check(&mut self, ok: bool, axiom: &str, witness: impl Into<Vec<usize>>) {
        if !ok {
            self.fail(axiom, witness);
        }
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.truncated |= other.truncated;
        for v in other.violations {
            self.fail(&v.axiom, v.witness);
        }
    }

    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn first(&self, axiom: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        writeln!(f, "FAIL ({} violations)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        if self.truncated {
            writeln!(f, "  ... (truncated)")?;
        }
        Ok(())
    }
}
