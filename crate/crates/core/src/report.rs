//! Verification reports: one record per check, stable ordering, JSON as the
//! source of truth and markdown as a rendering of it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INFO")]
    Info,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Info => "INFO",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub paper_anchor: String,
    pub inputs: Value,
    pub verdict: Verdict,
    /// Residual, subspace or derived data; always present on FAIL.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, inputs: Value, verdict: Verdict, witness: Option<Value>) -> Check {
        // a null witness would not survive a JSON round trip
        let witness = witness.filter(|w| !w.is_null());
        let mut c = Check { id: id.into(), paper_anchor: anchor.into(), inputs, verdict, witness };
        if c.verdict == Verdict::Fail && c.witness.is_none() {
            c.witness = Some(Value::String("no further data".into()));
        }
        c
    }

    pub fn pass_fail(id: impl Into<String>, anchor: impl Into<String>, inputs: Value, ok: bool, witness: Value) -> Check {
        Check::new(id, anchor, inputs, Verdict::from_bool(ok), Some(witness))
    }

    pub fn info(id: impl Into<String>, anchor: impl Into<String>, inputs: Value, witness: Value) -> Check {
        Check::new(id, anchor, inputs, Verdict::Info, Some(witness))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub info: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub artifact_version: String,
    pub suite: String,
    pub config: Value,
    pub summary: Summary,
    pub checks: Vec<Check>,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("malformed report: {0}")]
    Parse(#[from] serde_json::Error),
}

impl Report {
    /// Sorts the checks by id; duplicate ids keep their relative order.
    pub fn new(suite: impl Into<String>, config: Value, mut checks: Vec<Check>) -> Report {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary { total: checks.len(), ..Summary::default() };
        for c in &checks {
            match c.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::Info => summary.info += 1,
            }
        }
        Report {
            schema_version: SCHEMA_VERSION,
            artifact_version: ARTIFACT_VERSION.to_string(),
            suite: suite.into(),
            config,
            summary,
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Report, ReportError> {
        let r: Report = serde_json::from_str(s)?;
        if r.schema_version != SCHEMA_VERSION {
            return Err(ReportError::SchemaMismatch(format!(
                "schema version {} (expected {SCHEMA_VERSION})",
                r.schema_version
            )));
        }
        Ok(r)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let s = &self.summary;
        let _ = writeln!(out, "# Report: {}\n", self.suite);
        let _ = writeln!(out, "version {}, schema {}\n", self.artifact_version, self.schema_version);
        let _ = writeln!(out, "{} checks: {} PASS, {} FAIL, {} INFO\n", s.total, s.pass, s.fail, s.info);
        let _ = writeln!(out, "| id | verdict | anchor |");
        let _ = writeln!(out, "|---|---|---|");
        for c in &self.checks {
            let _ = writeln!(out, "| `{}` | {} | {} |", c.id, c.verdict.as_str(), c.paper_anchor.replace('|', "\\|"));
        }
        let failing: Vec<&Check> = self.checks.iter().filter(|c| c.verdict == Verdict::Fail).collect();
        if !failing.is_empty() {
            let _ = writeln!(out, "\n## Failures\n");
            for c in failing {
                let w = c.witness.as_ref().map(|w| serde_json::to_string(w).expect("json")).unwrap_or_default();
                let _ = writeln!(out, "- `{}`: {}", c.id, w);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictChange {
    pub id: String,
    pub before: Verdict,
    pub after: Verdict,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReportDiff {
    pub changed: Vec<VerdictChange>,
    pub added: Vec<String>,
    pub removed: Vec<String>,
    pub unchanged: usize,
}

impl ReportDiff {
    pub fn is_empty(&self) -> bool {
        self.changed.is_empty() && self.added.is_empty() && self.removed.is_empty()
    }
}

/// Verdict-level differences between two runs of the same suite.
pub fn diff_reports(a: &Report, b: &Report) -> Result<ReportDiff, ReportError> {
    if a.schema_version != b.schema_version {
        return Err(ReportError::SchemaMismatch(format!("{} vs {}", a.schema_version, b.schema_version)));
    }
    if a.suite != b.suite {
        return Err(ReportError::SchemaMismatch(format!("suite {} vs {}", a.suite, b.suite)));
    }
    let left: BTreeMap<&str, Verdict> = a.checks.iter().map(|c| (c.id.as_str(), c.verdict)).collect();
    let right: BTreeMap<&str, Verdict> = b.checks.iter().map(|c| (c.id.as_str(), c.verdict)).collect();
    let mut diff = ReportDiff::default();
    for (id, &va) in &left {
        match right.get(id) {
            Some(&vb) if vb == va => diff.unchanged += 1,
            Some(&vb) => diff.changed.push(VerdictChange { id: id.to_string(), before: va, after: vb }),
            None => diff.removed.push(id.to_string()),
        }
    }
    diff.added = right.keys().filter(|id| !left.contains_key(*id)).map(|id| id.to_string()).collect();
    Ok(diff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        Report::new(
            "demo",
            json!({"seed": 1}),
            vec![
                Check::pass_fail("b.two", "x", json!({}), false, json!("r")),
                Check::pass_fail("a.one", "y", json!({}), true, json!(null)),
                Check::info("c.three", "z", json!({}), json!(1)),
            ],
        )
    }

    #[test]
    fn ordering_and_summary() {
        let r = sample();
        let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["a.one", "b.two", "c.three"]);
        assert_eq!(r.summary, Summary { total: 3, pass: 1, fail: 1, info: 1 });
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), r.to_json());
    }

    #[test]
    fn diff_finds_changes() {
        let a = sample();
        let mut b = sample();
        b.checks[1].verdict = Verdict::Pass;
        b.checks.pop();
        b.checks.push(Check::info("d.four", "w", json!({}), json!(2)));
        let d = diff_reports(&a, &b).unwrap();
        assert_eq!(d.changed, vec![VerdictChange { id: "b.two".into(), before: Verdict::Fail, after: Verdict::Pass }]);
        assert_eq!(d.removed, vec!["c.three".to_string()]);
        assert_eq!(d.added, vec!["d.four".to_string()]);
        assert_eq!(d.unchanged, 1);
        let mut c = sample();
        c.suite = "other".into();
        assert!(matches!(diff_reports(&a, &c), Err(ReportError::SchemaMismatch(_))));
    }

    #[test]
    fn fail_always_has_witness() {
        let c = Check::new("x", "a", json!({}), Verdict::Fail, None);
        assert!(c.witness.is_some());
    }
}
