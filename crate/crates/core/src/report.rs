//! Structured verification reports: named checks with witnesses on failure.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    /// Named values that exhibit a failure; empty on success.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<(String, String)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    /// Informational lines that do not affect the outcome.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new(), notes: Vec::new() }
    }

    /// Records `ok`; the witness closure runs only on failure.
    pub fn record<W>(&mut self, name: impl Into<String>, ok: bool, witness: W) -> bool
    where
        W: FnOnce() -> Vec<(String, String)>,
    {
        let (outcome, witness) = if ok { (Outcome::Pass, Vec::new()) } else { (Outcome::Fail, witness()) };
        self.checks.push(Check { name: name.into(), outcome, witness });
        ok
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.record(name, true, Vec::new);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: Vec<(String, String)>) {
        self.record(name, false, || witness);
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            outcome: Outcome::Skipped { reason: reason.into() },
            witness: Vec::new(),
        });
    }

    /// Appends the checks of `other`, prefixing their names with its title.
    pub fn absorb(&mut self, other: Report) {
        for mut c in other.checks {
            if !other.title.is_empty() {
                c.name = format!("{}: {}", other.title, c.name);
            }
            self.checks.push(c);
        }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// Appends the checks of `other` unchanged, tagging failure witnesses
    /// with its title so they can be traced after [`Report::summarize`].
    pub fn merge(&mut self, other: Report) {
        for mut c in other.checks {
            if c.outcome == Outcome::Fail && !other.title.is_empty() {
                c.witness.insert(0, ("instance".into(), other.title.clone()));
            }
            self.checks.push(c);
        }
        self.notes.extend(other.notes);
    }

    /// Groups checks by name, in order of first appearance. A group fails
    /// if any member fails (keeping the first witness), passes if any member
    /// passes, and is skipped otherwise; names gain a `[passed/total]` tally.
    pub fn summarize(&self) -> Report {
        let mut names: Vec<&str> = Vec::new();
        for c in &self.checks {
            if !names.contains(&c.name.as_str()) {
                names.push(&c.name);
            }
        }
        let mut out = Report::new(self.title.clone());
        out.notes = self.notes.clone();
        for name in names {
            let group: Vec<&Check> = self.checks.iter().filter(|c| c.name == name).collect();
            let passed = group.iter().filter(|c| c.outcome == Outcome::Pass).count();
            let ran = group.iter().filter(|c| matches!(c.outcome, Outcome::Pass | Outcome::Fail)).count();
            let label = format!("{name} [{passed}/{ran}]");
            if let Some(bad) = group.iter().find(|c| c.outcome == Outcome::Fail) {
                out.fail(label, bad.witness.clone());
            } else if passed > 0 {
                out.pass(label);
            } else {
                let reason = match &group[0].outcome {
                    Outcome::Skipped { reason } => reason.clone(),
                    _ => String::new(),
                };
                out.skip(name, reason);
            }
        }
        out
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Fail)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.outcome == Outcome::Pass).count()
    }

    pub fn failed(&self) -> usize {
        self.failures().count()
    }

    pub fn skipped(&self) -> usize {
        self.checks.len() - self.passed() - self.failed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.title.is_empty() {
            writeln!(f, "{}", self.title)?;
        }
        for c in &self.checks {
            match &c.outcome {
                Outcome::Pass => writeln!(f, "  PASS {}", c.name)?,
                Outcome::Fail => {
                    writeln!(f, "  FAIL {}", c.name)?;
                    for (k, v) in &c.witness {
                        writeln!(f, "       {k} = {v}")?;
                    }
                }
                Outcome::Skipped { reason } => writeln!(f, "  SKIP {} ({reason})", c.name)?,
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        write!(f, "{} passed, {} failed, {} skipped", self.passed(), self.failed(), self.skipped())
    }
}
