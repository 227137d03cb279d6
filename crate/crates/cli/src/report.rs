use std::fmt::Write as _;
use std::time::Duration;

use loday_core::{IdentityReport, Verdict};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    /// A computed value, not a pass/fail outcome.
    Note,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
            Status::Note => "note",
        }
    }
}

/// Facts describe the instance (a failed Jacobi identity is a property of
/// the bracket, not a defect of the tool); verifications assert a
/// statement that must hold, so their failure fails the run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Fact,
    Verification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub role: Role,
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub title: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<CheckRecord>,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            seed: None,
            checks: Vec::new(),
            elapsed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn push(&mut self, check: impl Into<String>, role: Role, status: Status, detail: impl Into<String>) {
        self.checks.push(CheckRecord {
            check: check.into(),
            role,
            status,
            detail: detail.into(),
        });
    }

    pub fn fact(&mut self, check: &str, r: &IdentityReport) {
        let (status, detail) = identity_status(r);
        self.push(check, Role::Fact, status, detail);
    }

    pub fn verify(&mut self, check: &str, r: &IdentityReport) {
        let (status, detail) = identity_status(r);
        self.push(check, Role::Verification, status, detail);
    }

    pub fn verify_bool(&mut self, check: &str, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(check, Role::Verification, status, detail);
    }

    pub fn verdict(&mut self, check: &str, v: &Verdict) {
        let (status, detail) = match v {
            Verdict::Holds => (Status::Pass, String::new()),
            Verdict::Fails(w) => (Status::Fail, w.to_string()),
            Verdict::NotApplicable(why) => (Status::NotApplicable, why.clone()),
        };
        self.push(check, Role::Verification, status, detail);
    }

    pub fn not_applicable(&mut self, check: &str, why: impl Into<String>) {
        self.push(check, Role::Verification, Status::NotApplicable, why);
    }

    pub fn note(&mut self, check: &str, detail: impl Into<String>) {
        self.push(check, Role::Fact, Status::Note, detail);
    }

    pub fn failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.role == Role::Verification && c.status == Status::Fail)
            .count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn render_text(&self, timing: bool) -> String {
        let mut out = String::new();
        let _ = write!(out, "== {}", self.title);
        if let Some(seed) = self.seed {
            let _ = write!(out, " (seed {seed})");
        }
        out.push('\n');
        let width = self.checks.iter().map(|c| c.check.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = match c.role {
                Role::Fact => "fact",
                Role::Verification => "check",
            };
            let _ = write!(out, "  {tag:<5} {:<width$}  {}", c.check, c.status.as_str());
            if !c.detail.is_empty() {
                let _ = write!(out, "  {}", c.detail);
            }
            out.push('\n');
        }
        let verdict = if self.passed() { "ok" } else { "FAILED" };
        let _ = write!(out, "  result: {verdict} ({} failing checks)", self.failures());
        if timing {
            if let Some(d) = self.elapsed {
                let _ = write!(out, ", {} ms", d.as_millis());
            }
        }
        out.push('\n');
        out
    }

    /// One JSON object per check.
    pub fn render_machine(&self, timing: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mut v = serde_json::to_value(c).expect("serializable record");
            let obj = v.as_object_mut().expect("record is an object");
            obj.insert("report".into(), self.title.clone().into());
            if let Some(seed) = self.seed {
                obj.insert("seed".into(), seed.into());
            }
            if timing {
                if let Some(d) = self.elapsed {
                    obj.insert("elapsed_ms".into(), (d.as_millis() as u64).into());
                }
            }
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }
}

fn identity_status(r: &IdentityReport) -> (Status, String) {
    match r.witness() {
        None => (Status::Pass, String::new()),
        Some(w) => (Status::Fail, w.to_string()),
    }
}
