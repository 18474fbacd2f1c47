//! The bundled regression corpus and its runner.

use serde::{Deserialize, Serialize};

use crate::engine::{Status, Theorem};
use crate::par::{map_ordered, Exec};
use crate::query::{QuerySpec, SCHEMA_VERSION};

const BUNDLED: &str = include_str!("../corpus/regression.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusCase {
    pub id: String,
    pub tags: Vec<String>,
    pub query: QuerySpec,
    pub expected: Status,
    /// Checked only when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<Theorem>,
}

impl CorpusCase {
    /// Case-insensitive match on the id or any tag.
    pub fn matches(&self, filter: &str) -> bool {
        let f = filter.to_lowercase();
        self.id.to_lowercase().contains(&f) || self.tags.iter().any(|t| t.to_lowercase() == f)
    }
}

pub fn bundled() -> Vec<CorpusCase> {
    serde_json::from_str(BUNDLED).expect("bundled corpus is valid")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: String,
    pub expected: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_theorem: Option<Theorem>,
    /// `None` when the query failed before a verdict.
    pub actual: Option<Status>,
    pub theorem: Option<Theorem>,
    pub replay: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub schema: u32,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CaseResult>,
}

impl CorpusReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// Fixed-width table, one row per case in corpus order.
    pub fn table(&self) -> String {
        let width = self.cases.iter().map(|c| c.id.len()).max().unwrap_or(2).max(2);
        let mut out = format!(
            "{:<width$}  {:<20}  {:<20}  {:<30}  result\n",
            "id", "expected", "actual", "theorem"
        );
        for c in &self.cases {
            let actual = c.actual.map_or_else(|| "error".to_string(), |s| format!("{s:?}"));
            let theorem = c.theorem.map_or_else(String::new, |t| t.tag());
            let result = if c.pass { "pass" } else { "FAIL" };
            out += &format!(
                "{:<width$}  {:<20}  {:<20}  {:<30}  {result}\n",
                c.id,
                format!("{:?}", c.expected),
                actual,
                theorem
            );
            if let Some(e) = &c.error {
                out += &format!("{:<width$}  error: {e}\n", "");
            }
        }
        out += &format!("{} passed, {} failed\n", self.passed, self.failed);
        out
    }
}

/// Decides and replays each case; results keep corpus order.
pub fn run_cases(cases: &[CorpusCase], exec: Exec) -> CorpusReport {
    let cases: Vec<CaseResult> = map_ordered(exec, cases, |case| {
        let mut result = CaseResult {
            id: case.id.clone(),
            expected: case.expected,
            expected_theorem: case.theorem,
            actual: None,
            theorem: None,
            replay: false,
            error: None,
            pass: false,
        };
        match case.query.run_with(exec, true) {
            Ok(report) => {
                result.actual = Some(report.status);
                result.theorem = Some(report.theorem);
                result.replay = report.replay;
                result.pass =
                    report.replay && report.status == case.expected && case.theorem.is_none_or(|t| t == report.theorem);
            }
            Err(e) => result.error = Some(e.to_string()),
        }
        result
    });
    let passed = cases.iter().filter(|c| c.pass).count();
    CorpusReport {
        schema: SCHEMA_VERSION,
        passed,
        failed: cases.len() - passed,
        cases,
    }
}

/// Runs the bundled corpus, optionally restricted by [`CorpusCase::matches`].
pub fn run_corpus(filter: Option<&str>, exec: Exec) -> CorpusReport {
    let cases: Vec<CorpusCase> = bundled()
        .into_iter()
        .filter(|c| filter.is_none_or(|f| c.matches(f)))
        .collect();
    run_cases(&cases, exec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_parses() {
        let cases = bundled();
        assert!(cases.len() >= 40);
        let mut ids: Vec<&str> = cases.iter().map(|c| c.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), cases.len(), "duplicate ids");
        for c in &cases {
            c.query.field().unwrap_or_else(|e| panic!("{}: {e}", c.id));
            c.query.group().unwrap_or_else(|e| panic!("{}: {e}", c.id));
        }
    }

    #[test]
    fn filter_is_case_insensitive() {
        let cases = bundled();
        let q16: Vec<&str> = cases
            .iter()
            .filter(|c| c.matches("Q16"))
            .map(|c| c.id.as_str())
            .collect();
        assert!(q16.iter().all(|id| id.starts_with("q16") || id.starts_with("sd16")));
        assert_eq!(q16.len(), 5);
    }
}
