//! Query specifications, their textual flag syntax, and the versioned
//! certificate report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::engine::{decide_with, replay, Blocker, Budgets, EngineError, Hypothesis, Mode, Status, Theorem, Verdict};
use crate::groups::construct::{direct_product, from_permutations, Permutation};
use crate::groups::{FiniteGroup, GroupError, MetacyclicPresentation};
use crate::number_field::{NumberField, NumberFieldError};
use crate::par::Exec;

pub const SCHEMA_VERSION: u32 = 1;

/// A syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what} {input:?}: {message} at position {position}")]
pub struct ParseError {
    pub what: &'static str,
    pub input: String,
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid field: {0}")]
    Field(#[from] NumberFieldError),
    #[error("invalid group: {0}")]
    Group(#[from] GroupError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Metacyclic(MetacyclicPresentation),
    /// Generators in 1-based cycle notation.
    Permutations(Vec<String>),
    Product(Vec<GroupSpec>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub demuskin_nodes: Option<u64>,
}

impl BudgetOverrides {
    pub fn apply(&self, mut budgets: Budgets) -> Budgets {
        if let Some(order) = self.order {
            budgets.order = order;
        }
        if let Some(nodes) = self.demuskin_nodes {
            budgets.demuskin_nodes = nodes;
        }
        budgets
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuerySpec {
    /// Ascending coefficients of a monic irreducible polynomial.
    pub field: Vec<i64>,
    pub group: GroupSpec,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budgets: Option<BudgetOverrides>,
}

fn error(what: &'static str, input: &str, position: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        what,
        input: input.to_string(),
        position,
        message: message.into(),
    }
}

/// Comma-separated integers with the byte offset of each token.
fn int_list(what: &'static str, s: &str) -> Result<Vec<i64>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for tok in s.split(',') {
        let trimmed = tok.trim();
        let at = offset + tok.len() - tok.trim_start().len();
        let v = trimmed
            .parse::<i64>()
            .map_err(|_| error(what, s, at, format!("expected an integer, found {trimmed:?}")))?;
        out.push(v);
        offset += tok.len() + 1;
    }
    Ok(out)
}

/// `1,0,1` for `1 + x²`.
pub fn parse_poly(s: &str) -> Result<Vec<i64>, ParseError> {
    let coeffs = int_list("polynomial", s)?;
    if coeffs.len() < 2 {
        return Err(error("polynomial", s, 0, "need degree at least 1"));
    }
    Ok(coeffs)
}

/// `e,f,i,q`.
pub fn parse_metacyclic(s: &str) -> Result<MetacyclicPresentation, ParseError> {
    let v = int_list("metacyclic presentation", s)?;
    let [e, f, i, q] = v[..] else {
        return Err(error(
            "metacyclic presentation",
            s,
            0,
            format!("expected 4 values e,f,i,q, found {}", v.len()),
        ));
    };
    if e < 1 || f < 1 {
        return Err(error("metacyclic presentation", s, 0, "e and f must be positive"));
    }
    MetacyclicPresentation::new(e as u64, f as u64, i, q)
        .map_err(|err| error("metacyclic presentation", s, 0, err.to_string()))
}

/// Splits at commas outside parentheses: `(1 2 3),(1 2)` is two generators.
fn split_generators(s: &str) -> Result<Vec<(usize, &str)>, ParseError> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(error("permutation", s, i, "unbalanced ')'"));
                }
            }
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(error("permutation", s, s.len(), "unclosed '('"));
    }
    out.push((start, &s[start..]));
    Ok(out.into_iter().filter(|(_, t)| !t.trim().is_empty()).collect())
}

/// Generators such as `(1 2 3 4),(1 3)`.
pub fn parse_permutations(s: &str) -> Result<Vec<String>, ParseError> {
    split_generators(s)?
        .into_iter()
        .map(|(at, t)| {
            Permutation::parse(t, 0)
                .map(|_| t.trim().to_string())
                .map_err(|e| error("permutation", s, at, e.to_string()))
        })
        .collect()
}

/// Factors separated by `;`, each `perm:<generators>` or `meta:e,f,i,q`.
pub fn parse_product(s: &str) -> Result<GroupSpec, ParseError> {
    let mut factors = Vec::new();
    let mut offset = 0;
    for part in s.split(';') {
        let at = offset + part.len() - part.trim_start().len();
        let trimmed = part.trim();
        let factor = if let Some(rest) = trimmed.strip_prefix("perm:") {
            GroupSpec::Permutations(
                parse_permutations(rest).map_err(|e| error("product", s, at + 5 + e.position, e.message))?,
            )
        } else if let Some(rest) = trimmed.strip_prefix("meta:") {
            GroupSpec::Metacyclic(
                parse_metacyclic(rest).map_err(|e| error("product", s, at + 5 + e.position, e.message))?,
            )
        } else {
            return Err(error("product", s, at, "expected 'perm:' or 'meta:'"));
        };
        factors.push(factor);
        offset += part.len() + 1;
    }
    Ok(GroupSpec::Product(factors))
}

/// `a^(n-1) f(y/a)` for leading coefficient `a`: a monic integral
/// polynomial defining the same field. `None` on overflow.
pub fn monic_model(coeffs: &[i64]) -> Option<Vec<i64>> {
    let n = coeffs.len().checked_sub(1)?;
    let a = *coeffs.last()?;
    if a == 0 {
        return None;
    }
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let scale = (a as i128).checked_pow((n - i).saturating_sub(1) as u32)?;
            let v = if i == n { 1 } else { (c as i128).checked_mul(scale)? };
            i64::try_from(v).ok()
        })
        .collect()
}

/// Any linear polynomial defines ℚ. Higher degrees are replaced by their
/// monic model and must be irreducible.
pub fn field_from_coeffs(coeffs: &[i64]) -> Result<NumberField, NumberFieldError> {
    if coeffs.len() == 2 && coeffs[1] != 0 {
        return Ok(NumberField::rationals());
    }
    if coeffs.len() < 2 || coeffs.last() == Some(&0) {
        return Err(NumberFieldError::Constant);
    }
    NumberField::from_coeffs(&monic_model(coeffs).ok_or(NumberFieldError::NotMonic)?)
}

impl GroupSpec {
    pub fn build(&self, budget: usize) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSpec::Metacyclic(p) => p.build(budget),
            GroupSpec::Permutations(gens) => {
                let perms = gens
                    .iter()
                    .map(|g| Permutation::parse(g, 0))
                    .collect::<Result<Vec<_>, _>>()?;
                from_permutations(&perms, budget)
            }
            GroupSpec::Product(factors) => {
                let groups = factors.iter().map(|f| f.build(budget)).collect::<Result<Vec<_>, _>>()?;
                direct_product(&groups, budget)
            }
        }
    }
}

impl QuerySpec {
    pub fn budgets(&self) -> Budgets {
        self.budgets.unwrap_or_default().apply(Budgets::default())
    }

    pub fn field(&self) -> Result<NumberField, NumberFieldError> {
        field_from_coeffs(&self.field)
    }

    pub fn group(&self) -> Result<FiniteGroup, GroupError> {
        self.group.build(self.budgets().order)
    }

    /// Decides the query; with `replay` every hypothesis is re-evaluated.
    pub fn run(&self, replay_checks: bool) -> Result<VerdictReport, QueryError> {
        self.run_with(Exec::default(), replay_checks)
    }

    pub fn run_with(&self, exec: Exec, replay_checks: bool) -> Result<VerdictReport, QueryError> {
        let k = self.field()?;
        let budgets = Budgets { exec, ..self.budgets() };
        let g = match self.group.build(budgets.order) {
            Ok(g) => g,
            Err(e @ GroupError::OrderBudgetExceeded { .. }) => {
                let blocker = Blocker::Budget { detail: e.to_string() };
                let verdict = Verdict::undetermined(Theorem::None, blocker, Vec::new());
                return Ok(VerdictReport::new(verdict, replay_checks.then(Vec::new)));
            }
            Err(e) => return Err(e.into()),
        };
        let verdict = decide_with(&g, &k, self.mode, &budgets);
        let replayed = if replay_checks {
            let report = replay(&verdict, &g, &k, &budgets)?;
            Some(report.mismatches)
        } else {
            None
        };
        Ok(VerdictReport::new(verdict, replayed))
    }
}

/// The certificate as printed: `{schema, status, theorem, witnesses,
/// hypotheses_checked, replay}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub schema: u32,
    pub status: Status,
    pub theorem: Theorem,
    pub witnesses: BTreeMap<String, Value>,
    pub hypotheses_checked: Vec<Hypothesis>,
    /// True when every hypothesis was re-evaluated and reproduced.
    pub replay: bool,
    #[serde(skip)]
    pub verdict: Option<Verdict>,
}

impl VerdictReport {
    /// `replayed` holds the mismatching hypothesis indices when a replay ran.
    pub fn new(verdict: Verdict, replayed: Option<Vec<usize>>) -> Self {
        let mut witnesses = verdict.certificate.witnesses.clone();
        if let Some(m) = replayed.as_ref().filter(|m| !m.is_empty()) {
            witnesses.insert("replay_mismatches".into(), serde_json::to_value(m).expect("indices"));
        }
        VerdictReport {
            schema: SCHEMA_VERSION,
            status: verdict.status,
            theorem: verdict.certificate.theorem,
            witnesses,
            hypotheses_checked: verdict.certificate.hypotheses_checked.clone(),
            replay: replayed.is_some_and(|m| m.is_empty()),
            verdict: Some(verdict),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsers() {
        assert_eq!(parse_poly("1, 0,1").unwrap(), vec![1, 0, 1]);
        let e = parse_poly("1,x,1").unwrap_err();
        assert_eq!(e.position, 2);
        assert!(parse_poly("5").is_err());
        let m = parse_metacyclic("8,2,4,7").unwrap();
        assert_eq!((m.e, m.f, m.i, m.q), (8, 2, 4, 7));
        assert!(parse_metacyclic("4,2,0").is_err());
        assert!(parse_metacyclic("4,2,1,3").is_err());
        assert_eq!(
            parse_permutations("(1 2 3 4),(1 3)").unwrap(),
            vec!["(1 2 3 4)", "(1 3)"]
        );
        assert_eq!(parse_permutations("(1 2 0)").unwrap_err().position, 0);
        assert!(parse_permutations("(1 2").is_err());
    }

    #[test]
    fn monic_models() {
        assert_eq!(monic_model(&[1, 0, -5]).unwrap(), vec![-5, 0, 1]);
        assert_eq!(monic_model(&[1, 0, 0, -2]).unwrap(), vec![4, 0, 0, 1]);
        assert_eq!(monic_model(&[3, 2, 1]).unwrap(), vec![3, 2, 1]);
        let k = field_from_coeffs(&[1, 0, 0, -2]).unwrap();
        assert_eq!(k.degree(), 3);
        assert!(!k.is_galois());
        assert_eq!(field_from_coeffs(&[1, -1]).unwrap().degree(), 1);
        assert!(field_from_coeffs(&[1, 0, 0]).is_err());
    }

    #[test]
    fn product_syntax() {
        let g = parse_product("perm:(1 2 3);meta:4,2,0,3").unwrap();
        let GroupSpec::Product(f) = &g else { panic!() };
        assert_eq!(f.len(), 2);
        assert_eq!(g.build(4096).unwrap().order(), 24);
        let e = parse_product("perm:(1 2 3);meta:4,2,x,3").unwrap_err();
        assert_eq!(e.position, 22);
        let e = parse_product("perm:(1 2);cyc:3").unwrap_err();
        assert_eq!(e.position, 11);
    }

    #[test]
    fn spec_round_trip() {
        let spec = QuerySpec {
            field: vec![1, 0, 1],
            group: parse_product("perm:(1 2 3),(1 2);meta:8,2,4,7").unwrap(),
            mode: Mode::Tame,
            budgets: Some(BudgetOverrides {
                order: Some(1000),
                demuskin_nodes: None,
            }),
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<QuerySpec>(&json).unwrap(), spec);
    }

    #[test]
    fn report_shape() {
        let spec = QuerySpec {
            field: vec![1, 0, 1],
            group: GroupSpec::Metacyclic(parse_metacyclic("4,2,0,3").unwrap()),
            mode: Mode::Tame,
            budgets: None,
        };
        let r = spec.run(true).unwrap();
        assert!(r.replay);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            [
                "hypotheses_checked",
                "replay",
                "schema",
                "status",
                "theorem",
                "witnesses"
            ]
        );
        assert_eq!(v["status"], "NotTamelyAdmissible");
        assert_eq!(v["theorem"], "NEFTIN_T13");
        assert_eq!(v["schema"], 1);
    }
}
