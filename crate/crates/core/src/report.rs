//! Check results and reports.

use std::fmt::Write as _;
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::scalar::{Backend, Scalar};

/// Outcome of one named check. A failing relation check carries the index
/// tuple of its lexicographically first violation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub witness: Vec<usize>,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass: true,
            witness: Vec::new(),
            violations: 0,
            note: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Vec<usize>) -> Self {
        Self {
            name: name.into(),
            pass: false,
            witness,
            violations: 1,
            note: None,
        }
    }

    /// Pass if `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, witness: Option<Vec<usize>>) -> Self {
        match witness {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, vec![0])
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Evaluate `holds` on every tuple of the box `0..shape[0] × 0..shape[1] × …`
/// (row-major), in parallel over the first axis. The witness is the first
/// failing tuple in row-major order, so results do not depend on scheduling.
pub fn sweep<F>(name: &str, shape: &[usize], holds: F) -> CheckResult
where
    F: Fn(&[usize]) -> bool + Sync,
{
    if shape.is_empty() || shape.contains(&0) {
        return CheckResult::pass(name);
    }
    let per_head: Vec<(usize, Option<Vec<usize>>)> = (0..shape[0])
        .into_par_iter()
        .map(|head| {
            let mut count = 0;
            let mut first = None;
            let mut tuple = vec![0; shape.len()];
            tuple[0] = head;
            loop {
                if !holds(&tuple) {
                    count += 1;
                    if first.is_none() {
                        first = Some(tuple.clone());
                    }
                }
                // odometer over the remaining axes
                let mut axis = shape.len() - 1;
                loop {
                    if axis == 0 {
                        return (count, first);
                    }
                    tuple[axis] += 1;
                    if tuple[axis] < shape[axis] {
                        break;
                    }
                    tuple[axis] = 0;
                    axis -= 1;
                }
            }
        })
        .collect();
    let violations: usize = per_head.iter().map(|(c, _)| c).sum();
    let witness = per_head.into_iter().find_map(|(_, w)| w);
    match witness {
        None => CheckResult::pass(name),
        Some(w) => CheckResult {
            violations,
            ..CheckResult::fail(name, w)
        },
    }
}

/// A named collection of checks.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub subject: String,
    pub backend: Backend,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
    /// Wall time; kept out of JSON so reports stay byte-reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn new<S: Scalar>(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            backend: S::BACKEND,
            tolerance: S::tolerance(),
            pass: true,
            checks: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = CheckResult>) {
        for c in checks {
            self.push(c);
        }
    }

    /// Append another report's checks under `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.pass
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `true` iff the named check exists and passed.
    pub fn check_passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }

    pub fn render_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(5).max(5);
        let mut out = String::new();
        let _ = writeln!(out, "{} [{}]", self.subject, self.backend);
        for c in &self.checks {
            let status = if c.pass { "pass" } else { "FAIL" };
            let _ = write!(out, "  {:<width$}  {status}", c.name);
            if !c.pass {
                let _ = write!(out, "  witness={:?} violations={}", c.witness, c.violations);
            }
            if let Some(note) = &c.note {
                let _ = write!(out, "  ({note})");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "  => {} in {:.3}s",
            if self.pass { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64()
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    #[test]
    fn sweep_reports_first_witness_in_row_major_order() {
        let c = sweep("t", &[3, 4], |t| !(t[0] >= 1 && t[1] == 2));
        assert!(!c.pass);
        assert_eq!(c.witness, vec![1, 2]);
        assert_eq!(c.violations, 2);
        assert!(sweep("t", &[5], |_| true).pass);
        assert!(sweep("t", &[0, 3], |_| false).pass);
    }

    #[test]
    fn report_tracks_overall_pass() {
        let mut r = Report::new::<Exact>("x");
        r.push(CheckResult::pass("a"));
        assert!(r.passed());
        r.push(CheckResult::fail("b", vec![3]));
        assert!(!r.passed());
        assert_eq!(r.failures(), vec!["b"]);
        let json = serde_json::to_string(&r).unwrap();
        assert!(!json.contains("elapsed"));
    }
}
