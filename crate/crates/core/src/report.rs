use std::fmt;

use crate::exactmath::rational::fmt_vector;
use crate::Rational;

/// A failing tuple together with the nonzero defect it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// What the indices refer to, e.g. `"basis triple (i,j,k)"`.
    pub label: String,
    pub indices: Vec<usize>,
    pub defect: Vec<Rational>,
}

impl Witness {
    pub fn new(label: impl Into<String>, indices: Vec<usize>, defect: Vec<Rational>) -> Self {
        Witness {
            label: label.into(),
            indices,
            defect,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{} ({})", self.label, idx.join(","))?;
        if !self.defect.is_empty() {
            write!(f, " defect {}", fmt_vector(&self.defect))?;
        }
        Ok(())
    }
}

/// Outcome of an exact identity check. `holds` is true exactly when no
/// witness is present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    witness: Option<Witness>,
}

impl IdentityReport {
    pub fn pass() -> Self {
        IdentityReport { witness: None }
    }

    pub fn fail(witness: Witness) -> Self {
        IdentityReport {
            witness: Some(witness),
        }
    }

    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    /// Keeps the first failure of the two.
    pub fn and(self, other: IdentityReport) -> IdentityReport {
        if self.holds() {
            other
        } else {
            self
        }
    }
}

impl From<Option<Witness>> for IdentityReport {
    fn from(witness: Option<Witness>) -> Self {
        IdentityReport { witness }
    }
}

/// Result of a theorem check that only applies under hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
    NotApplicable(String),
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

impl From<IdentityReport> for Verdict {
    fn from(r: IdentityReport) -> Self {
        match r.witness {
            None => Verdict::Holds,
            Some(w) => Verdict::Fails(w),
        }
    }
}
