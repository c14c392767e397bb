//! Check results and their JSON and text renderings.
//!
//! Suites and checks are sorted by name, so the same run always produces the
//! same bytes.

use std::fmt;

use serde::Serialize;

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub check: String,
    pub status: Status,
    pub details: String,
    /// Short name of the identity or statement being checked.
    pub anchor: String,
}

impl CheckResult {
    /// A failing check always carries details; an empty diff gets a placeholder.
    pub fn new(suite: &str, check: &str, ok: bool, details: impl Into<String>, anchor: &str) -> Self {
        let mut details = details.into();
        if !ok && details.is_empty() {
            details = "check failed".into();
        }
        CheckResult {
            suite: suite.into(),
            check: check.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            details,
            anchor: anchor.into(),
        }
    }

    pub fn skipped(suite: &str, check: &str, details: impl Into<String>, anchor: &str) -> Self {
        CheckResult {
            suite: suite.into(),
            check: check.into(),
            status: Status::Skipped,
            details: details.into(),
            anchor: anchor.into(),
        }
    }

    /// A check that could not run because of an error counts as a failure.
    pub fn from_error(suite: &str, check: &str, err: &crate::Error, anchor: &str) -> Self {
        Self::new(suite, check, false, format!("error: {err}"), anchor)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}: {} - {}", self.suite, self.check, self.status, self.details)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub version: String,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    /// Groups checks by suite; checks sharing a suite and name keep their input order.
    pub fn from_checks(checks: impl IntoIterator<Item = CheckResult>) -> Self {
        let mut checks: Vec<CheckResult> = checks.into_iter().collect();
        checks.sort_by(|a, b| (&a.suite, &a.check).cmp(&(&b.suite, &b.check)));
        let mut suites: Vec<SuiteReport> = Vec::new();
        for c in checks {
            match suites.last_mut() {
                Some(s) if s.name == c.suite => s.checks.push(c),
                _ => suites.push(SuiteReport {
                    name: c.suite.clone(),
                    checks: vec![c],
                }),
            }
        }
        Report {
            version: REPORT_VERSION.into(),
            suites,
        }
    }

    pub fn checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.suites.iter().flat_map(|s| &s.checks)
    }

    pub fn passed(&self) -> bool {
        self.checks().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        self.checks().map(|c| format!("{c}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_grouped() {
        let r = Report::from_checks(vec![
            CheckResult::new("spin", "b", true, "", "x"),
            CheckResult::new("clifford", "z", true, "ok", "x"),
            CheckResult::new("spin", "a", false, "", "x"),
        ]);
        let names: Vec<_> = r.checks().map(|c| format!("{}/{}", c.suite, c.check)).collect();
        assert_eq!(names, ["clifford/z", "spin/a", "spin/b"]);
        assert!(!r.passed());
        assert_eq!(r.suites[1].checks[0].details, "check failed");
        assert!(r.to_text().starts_with("clifford/z: pass - ok\n"));
    }

    #[test]
    fn json_schema_keys() {
        let r = Report::from_checks(vec![CheckResult::skipped("s", "c", "n/a", "x")]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["version"], "1");
        assert_eq!(v["suites"][0]["name"], "s");
        assert_eq!(v["suites"][0]["checks"][0]["status"], "skipped");
        assert_eq!(r.to_json(), r.clone().to_json());
    }
}
