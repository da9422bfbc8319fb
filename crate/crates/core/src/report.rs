//! Check reports with witnesses, shared by every checker and the CLI.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    VacuousPass,
    UnknownUnderBound,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::VacuousPass => "vacuous-pass",
            Verdict::UnknownUnderBound => "unknown-under-bound",
        })
    }
}

/// What the caller expects a check to return.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expect {
    Holds,
    Fails,
    /// Informative only; never counts as unexpected.
    Any,
}

impl Expect {
    pub fn from_flag(holds: bool) -> Self {
        if holds {
            Expect::Holds
        } else {
            Expect::Fails
        }
    }

    pub fn accepts(self, v: Verdict) -> bool {
        match self {
            Expect::Any => true,
            Expect::Holds => matches!(v, Verdict::Holds | Verdict::VacuousPass),
            Expect::Fails => v == Verdict::Fails,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub verdict: Verdict,
    pub expected: Expect,
    pub confirmed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub confirmed: usize,
    pub unexpected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    #[serde(skip)]
    bound: Option<String>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            checks: Vec::new(),
            summary: Summary::default(),
            bound: None,
        }
    }

    /// Every record pushed afterwards carries this bound label.
    pub fn under_bound(mut self, bound: Option<usize>) -> Self {
        self.bound = bound.map(|k| format!("under bound {k}"));
        self
    }

    pub fn bound_label(&self) -> Option<&str> {
        self.bound.as_deref()
    }

    /// Records an outcome. A failing verdict without a witness gets a
    /// placeholder so the invariant "every failure has a witness" holds.
    pub fn record(
        &mut self,
        check: impl Into<String>,
        verdict: Verdict,
        expected: Expect,
        witness: Option<String>,
    ) -> &CheckRecord {
        let witness = match (verdict, witness) {
            (Verdict::Fails, None) => Some("(no witness supplied)".to_string()),
            (_, w) => w,
        };
        let confirmed = expected.accepts(verdict);
        if confirmed {
            self.summary.confirmed += 1;
        } else {
            self.summary.unexpected += 1;
        }
        self.checks.push(CheckRecord {
            check: check.into(),
            verdict,
            expected,
            confirmed,
            witness,
            bound: self.bound.clone(),
        });
        self.checks.last().expect("just pushed")
    }

    pub fn pass(&mut self, check: impl Into<String>) {
        self.record(check, Verdict::Holds, Expect::Holds, None);
    }

    pub fn fail(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.record(check, Verdict::Fails, Expect::Holds, Some(witness.into()));
    }

    /// `Holds` when `witness` is `None`, `Fails` with the witness otherwise.
    pub fn outcome(&mut self, check: impl Into<String>, expected: Expect, witness: Option<String>) {
        let verdict = if witness.is_some() {
            Verdict::Fails
        } else {
            Verdict::Holds
        };
        self.record(check, verdict, expected, witness);
    }

    /// Records an evaluation error. A missing table means the check lies
    /// outside a tabulated universe and is reported as unknown.
    pub fn error(&mut self, e: &crate::error::Error) {
        match e {
            crate::error::Error::MissingTable(t) => {
                self.record(
                    "evaluation outside the tabulated sets",
                    Verdict::UnknownUnderBound,
                    Expect::Any,
                    Some(format!("missing table: {t}")),
                );
            }
            other => self.fail("evaluation", other.to_string()),
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.summary.confirmed += other.summary.confirmed;
        self.summary.unexpected += other.summary.unexpected;
        self.checks.extend(other.checks);
    }

    pub fn all_confirmed(&self) -> bool {
        self.summary.unexpected == 0
    }

    pub fn find(&self, check: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.check == check)
    }

    pub fn first_unexpected(&self) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| !c.confirmed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "subject: {}", self.subject)?;
        for c in &self.checks {
            let mark = if c.confirmed { "ok " } else { "BAD" };
            write!(f, "  [{mark}] {}: {}", c.check, c.verdict)?;
            if c.expected != Expect::Any && !c.confirmed {
                write!(f, " (expected {:?})", c.expected)?;
            }
            if let Some(b) = &c.bound {
                write!(f, " [{b}]")?;
            }
            if let Some(w) = &c.witness {
                write!(f, "\n        witness: {w}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "summary: {} confirmed, {} unexpected",
            self.summary.confirmed, self.summary.unexpected
        )
    }
}
