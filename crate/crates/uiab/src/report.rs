//! Check results and their JSON / Markdown renderings.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::NotApplicable => "n/a",
        }
    }
}

/// First offending input with both sides fully expanded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    /// Inputs on which both sides were compared.
    pub checked: usize,
    /// Inputs skipped because evaluation left the truncation window.
    pub excluded: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        CheckResult { name: name.into(), status, checked: 0, excluded: 0, witness: None, notes: Vec::new() }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        Self::new(name, Status::Pass)
    }

    pub fn fail(name: impl Into<String>, witness: Witness) -> Self {
        let mut r = Self::new(name, Status::Fail);
        r.witness = Some(witness);
        r
    }

    pub fn from_bool(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail })
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// Combines two checks of one property; the first failure wins.
    pub fn merge(mut self, other: CheckResult) -> CheckResult {
        self.checked += other.checked;
        self.excluded += other.excluded;
        if self.status != Status::Fail && other.status == Status::Fail {
            self.status = Status::Fail;
            self.witness = other.witness;
        }
        self.notes.extend(other.notes);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub subject: String,
    pub ring: String,
    pub checks: Vec<CheckResult>,
    /// Wall-clock time, recorded only on request since it breaks byte equality.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Section {
    pub fn new(subject: impl Into<String>, ring: impl Into<String>, checks: Vec<CheckResult>) -> Section {
        Section { subject: subject.into(), ring: ring.into(), checks, elapsed_ms: None }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tool: String,
    pub format_version: u32,
    pub sections: Vec<Section>,
    pub summary: Summary,
}

impl Report {
    pub fn new(sections: Vec<Section>) -> Report {
        let mut summary = Summary { passed: 0, failed: 0, not_applicable: 0 };
        for c in sections.iter().flat_map(|s| &s.checks) {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::NotApplicable => summary.not_applicable += 1,
            }
        }
        Report { tool: "uiab".into(), format_version: 1, sections, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            let _ = writeln!(out, "## {} over {}\n", s.subject, s.ring);
            if let Some(ms) = s.elapsed_ms {
                let _ = writeln!(out, "elapsed: {ms} ms\n");
            }
            let _ = writeln!(out, "| check | status | checked | excluded |");
            let _ = writeln!(out, "|---|---|---|---|");
            for c in &s.checks {
                let name = c.name.replace('|', "\\|");
                let _ = writeln!(out, "| {name} | {} | {} | {} |", c.status.label(), c.checked, c.excluded);
            }
            out.push('\n');
            for c in &s.checks {
                if c.witness.is_none() && c.notes.is_empty() {
                    continue;
                }
                let _ = writeln!(out, "**{}**\n", c.name);
                if let Some(w) = &c.witness {
                    let _ = writeln!(out, "- input: `{}`", w.input);
                    let _ = writeln!(out, "- lhs: `{}`", w.lhs);
                    let _ = writeln!(out, "- rhs: `{}`", w.rhs);
                }
                for n in &c.notes {
                    let _ = writeln!(out, "- {n}");
                }
                out.push('\n');
            }
        }
        let _ = writeln!(
            out,
            "passed {}, failed {}, not applicable {}",
            self.summary.passed, self.summary.failed, self.summary.not_applicable
        );
        out
    }
}
