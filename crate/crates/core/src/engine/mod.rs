//! The decision pipeline: applies criteria in precedence order and returns a
//! [`Verdict`] whose certificate lists replayable hypotheses.
//!
//! Precedence: iff criteria, then obstructions, then sufficient conditions.
//! Anything outside every criterion's hypotheses is `Undetermined`.

mod check;
mod fastpath;
mod obstruct;
mod tame;
mod wild;

use std::cell::OnceCell;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::primes::factorize;
use crate::cyclotomic::CyclotomicError;
use crate::groups::demuskin::{DEFAULT_DEMUSKIN_NODES, DEFAULT_DEMUSKIN_ORDER};
use crate::groups::sylow::sylow_subgroup;
use crate::groups::{d_of_group, is_metacyclic, FiniteGroup, GroupError, MetacyclicPresentation, DEFAULT_ORDER_BUDGET};
use crate::local_analysis::LocalError;
use crate::number_field::{NumberField, NumberFieldError};
use crate::par::Exec;

pub use check::{replay, Check, Hypothesis, NamedGroup, ReplayReport};
pub use tame::{all_metacyclic_tame_predicate, liedahl_search, LiedahlSearch, TamePredicate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Admissible,
    Tame,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Admissible,
    NotAdmissible,
    TamelyAdmissible,
    NotTamelyAdmissible,
    Undetermined,
}

impl Status {
    pub fn is_definite(self) -> bool {
        self != Status::Undetermined
    }
}

/// The criterion a verdict rests on. Wire names are fixed by the
/// certificate schema.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    /// Odd metacyclic p-groups: admissible iff `p` decomposes or a Liedahl
    /// presentation exists.
    #[serde(rename = "LIEDAHL_T30")]
    OddMetacyclicCriterion,
    /// Solvable groups: tamely admissible iff every Sylow subgroup has a
    /// Liedahl presentation.
    #[serde(rename = "NEFTIN_T13")]
    TameSylowCriterion,
    /// Every metacyclic 2-group is tamely admissible iff none of `√-1, √2,
    /// √-2` lies in `K`.
    #[serde(rename = "MAIN_THM_II")]
    AllMetacyclicTwoGroups,
    /// Every metacyclic p-group (odd `p`) is tamely admissible iff `α_p ∉ K`.
    #[serde(rename = "MAIN_THM_III")]
    AllMetacyclicOddGroups,
    /// Rank bound `d(G) <= [K_𝔭₂:ℚ_p] + 1` with zeta-freeness settled by the
    /// local root-of-unity test.
    #[serde(rename = "WILD_ADM")]
    WildRankBound,
    #[serde(rename = "LOCAL_NO_UNITY_I")]
    WildRankBoundUnramified,
    #[serde(rename = "LOCAL_NO_UNITY_II")]
    WildRankBoundLocalDegrees,
    #[serde(rename = "LOCAL_NO_UNITY_III")]
    WildRankBoundGaloisDegree,
    /// Galois `K` with `ζ_p ∈ K_𝔭 \ K`: a Demuškin quotient decides.
    #[serde(rename = "WILD_LOCAL_UNITY")]
    WildDemuskin,
    #[serde(rename = "QUADRATIC_COR")]
    QuadraticField,
    #[serde(rename = "CUBIC_PROP")]
    CubicField,
    #[serde(rename = "QUARTIC_PROP")]
    QuarticField,
    #[serde(rename = "ODD_DEGREE_THM")]
    OddDegreeGalois,
    #[serde(rename = "GALOIS_COR")]
    UnramifiedGalois,
    #[serde(rename = "DEGREE_TWO_POWER_COR")]
    TwoPowerDegreeGalois,
    #[serde(rename = "NILPOTENT_REDUCTION")]
    NilpotentReduction,
    #[serde(rename = "SYLOW_META_NECESSITY")]
    SylowMetacyclicNecessity,
    #[serde(rename = "ROOTS_UNITY_OBSTRUCTION")]
    RootsOfUnityObstruction,
    #[serde(rename = "Q16_OBSTRUCTION")]
    Q16Obstruction,
    #[serde(rename = "SD16_OBSTRUCTION")]
    Sd16Obstruction,
    /// `ℤ/l² ⋊ ℤ/l` over the degree-`l` subfield of `ℚ(ζ_{l²})`.
    #[serde(rename = "DIHEDRAL_GENERAL_OBSTRUCTION")]
    ModularGroupObstruction,
    /// A prime with a unique place forces a metacyclic Sylow subgroup.
    #[serde(rename = "SCHACHER_METACYCLIC_NECESSITY")]
    UniquePlaceMetacyclic,
    #[serde(rename = "TRIVIAL_GROUP")]
    TrivialGroup,
    #[serde(rename = "SOLVABLE_PROP")]
    SolvableRankBound,
    #[serde(rename = "HALF_DEGREE_PROP")]
    HalfDegreeRankBound,
    #[serde(rename = "NONE")]
    None,
}

impl Theorem {
    pub fn tag(self) -> String {
        match serde_json::to_value(self) {
            Ok(Value::String(s)) => s,
            _ => unreachable!("unit variants serialize as strings"),
        }
    }
}

/// Why a verdict is `Undetermined`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Blocker {
    /// A hypothesis no criterion covers, named.
    Hypothesis {
        name: String,
    },
    Budget {
        detail: String,
    },
    /// The field arithmetic could not be certified.
    Arithmetic {
        detail: String,
    },
    Invalid {
        detail: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub theorem: Theorem,
    pub witnesses: BTreeMap<String, Value>,
    pub hypotheses_checked: Vec<Hypothesis>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Certificate,
    pub blocker: Option<Blocker>,
}

impl Verdict {
    pub(crate) fn definite(status: Status, theorem: Theorem, hypotheses: Vec<Hypothesis>) -> Self {
        Verdict {
            status,
            certificate: Certificate {
                theorem,
                witnesses: BTreeMap::new(),
                hypotheses_checked: hypotheses,
            },
            blocker: None,
        }
    }

    pub(crate) fn undetermined(theorem: Theorem, blocker: Blocker, hypotheses: Vec<Hypothesis>) -> Self {
        let mut v = Verdict::definite(Status::Undetermined, theorem, hypotheses);
        v.certificate
            .witnesses
            .insert("blocking".into(), serde_json::to_value(&blocker).expect("plain data"));
        v.blocker = Some(blocker);
        v
    }

    pub(crate) fn witness(mut self, key: &str, value: impl Serialize) -> Self {
        self.certificate
            .witnesses
            .insert(key.into(), serde_json::to_value(value).expect("plain data"));
        self
    }

    pub fn theorem(&self) -> Theorem {
        self.certificate.theorem
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub order: usize,
    pub demuskin_order: usize,
    /// Node budget per first-generator candidate.
    pub demuskin_nodes: u64,
    pub exec: Exec,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            order: DEFAULT_ORDER_BUDGET,
            demuskin_order: DEFAULT_DEMUSKIN_ORDER,
            demuskin_nodes: DEFAULT_DEMUSKIN_NODES,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] NumberFieldError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
}

impl EngineError {
    fn blocker(&self) -> Blocker {
        let detail = self.to_string();
        match self {
            EngineError::Group(GroupError::SearchBudgetExceeded { .. } | GroupError::OrderBudgetExceeded { .. }) => {
                Blocker::Budget { detail }
            }
            EngineError::Field(NumberFieldError::IndexObstruction { .. })
            | EngineError::Local(LocalError::Field(NumberFieldError::IndexObstruction { .. }))
            | EngineError::Local(LocalError::CompositumFailed) => Blocker::Arithmetic { detail },
            _ => Blocker::Invalid { detail },
        }
    }
}

/// Per-query state: the inputs plus lazily computed Sylow data.
pub(crate) struct Ctx<'a> {
    pub g: &'a FiniteGroup,
    pub k: &'a NumberField,
    pub budgets: &'a Budgets,
    primes: Vec<u64>,
    sylows: BTreeMap<u64, OnceCell<FiniteGroup>>,
    metacyclic: BTreeMap<u64, OnceCell<Option<MetacyclicPresentation>>>,
    ranks: BTreeMap<u64, OnceCell<u32>>,
}

impl<'a> Ctx<'a> {
    pub fn new(g: &'a FiniteGroup, k: &'a NumberField, budgets: &'a Budgets) -> Self {
        let primes: Vec<u64> = factorize(g.order() as u64).into_iter().map(|(p, _)| p).collect();
        let cells = || primes.iter().map(|&p| (p, OnceCell::new())).collect();
        Ctx {
            g,
            k,
            budgets,
            sylows: cells(),
            metacyclic: primes.iter().map(|&p| (p, OnceCell::new())).collect(),
            ranks: primes.iter().map(|&p| (p, OnceCell::new())).collect(),
            primes,
        }
    }

    /// Primes dividing `|G|`, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    fn require_prime(&self, p: u64) -> Result<(), EngineError> {
        if self.primes.contains(&p) {
            Ok(())
        } else {
            Err(GroupError::PrimeDoesNotDivideOrder {
                p,
                order: self.g.order(),
            }
            .into())
        }
    }

    /// `G` itself when `G` is a p-group, so witness indices refer to `G`.
    pub fn sylow(&self, p: u64) -> Result<&FiniteGroup, EngineError> {
        self.require_prime(p)?;
        if self.primes.len() == 1 {
            return Ok(self.g);
        }
        let cell = &self.sylows[&p];
        if let Some(s) = cell.get() {
            return Ok(s);
        }
        let s = sylow_subgroup(self.g, p)?;
        Ok(cell.get_or_init(|| s))
    }

    pub fn sylow_metacyclic(&self, p: u64) -> Result<Option<MetacyclicPresentation>, EngineError> {
        let s = self.sylow(p)?;
        Ok(*self.metacyclic[&p].get_or_init(|| is_metacyclic(s)))
    }

    pub fn sylow_rank(&self, p: u64) -> Result<u32, EngineError> {
        let s = self.sylow(p)?;
        if let Some(&d) = self.ranks[&p].get() {
            return Ok(d);
        }
        let d = d_of_group(s)?;
        Ok(*self.ranks[&p].get_or_init(|| d))
    }

    pub fn decomposes(&self, p: u64) -> Result<bool, EngineError> {
        Ok(self.k.p_decomposes(p)?)
    }
}

pub fn decide(g: &FiniteGroup, k: &NumberField, mode: Mode) -> Verdict {
    decide_with(g, k, mode, &Budgets::default())
}

/// Lower-module errors surface as `Undetermined` with the cause attached.
pub fn decide_with(g: &FiniteGroup, k: &NumberField, mode: Mode, budgets: &Budgets) -> Verdict {
    let ctx = Ctx::new(g, k, budgets);
    let result = if g.order() > budgets.order {
        Err(GroupError::OrderBudgetExceeded { budget: budgets.order }.into())
    } else {
        match mode {
            Mode::Tame => tame::tame_verdict(&ctx),
            Mode::Admissible => admissible(&ctx),
        }
    };
    result.unwrap_or_else(|e| Verdict::undetermined(Theorem::None, e.blocker(), Vec::new()))
}

fn admissible(ctx: &Ctx) -> Result<Verdict, EngineError> {
    let g = ctx.g;
    if g.is_trivial() {
        return Ok(trivial_verdict(Mode::Admissible));
    }
    if let [p] = ctx.primes() {
        let v = if *p == 2 {
            wild::two_group(ctx)?
        } else {
            wild::wild_p_group(ctx, *p)?
        };
        return fastpath::with_cross_checks(ctx, v);
    }
    if g.is_nilpotent() {
        return nilpotent(ctx);
    }
    if let Some(v) = obstruct::obstruction(ctx)? {
        return Ok(v);
    }
    if !g.is_solvable() {
        return Ok(Verdict::undetermined(
            Theorem::None,
            Blocker::Hypothesis {
                name: "solvable".into(),
            },
            vec![Hypothesis::new(Check::Solvable, false)],
        ));
    }
    let tame = tame::tame_verdict(ctx)?;
    if tame.status == Status::TamelyAdmissible {
        let mut v = tame;
        v.status = Status::Admissible;
        return Ok(v);
    }
    if let Some(v) = wild::solvable_rank_bounds(ctx)? {
        return Ok(v);
    }
    Ok(Verdict::undetermined(
        Theorem::None,
        Blocker::Hypothesis {
            name: "no applicable criterion for solvable non-nilpotent group".into(),
        },
        vec![
            Hypothesis::new(Check::Solvable, true),
            Hypothesis::new(Check::Nilpotent, false),
        ],
    )
    .witness("tame_status", tame.status))
}

pub(crate) fn trivial_verdict(mode: Mode) -> Verdict {
    let status = match mode {
        Mode::Admissible => Status::Admissible,
        Mode::Tame => Status::TamelyAdmissible,
    };
    Verdict::definite(
        status,
        Theorem::TrivialGroup,
        vec![Hypothesis::new(Check::TrivialGroup, true)],
    )
}

/// A nilpotent group is admissible iff every Sylow subgroup is.
fn nilpotent(ctx: &Ctx) -> Result<Verdict, EngineError> {
    let mut hyps = vec![Hypothesis::new(Check::Nilpotent, true)];
    let mut parts = BTreeMap::new();
    let mut all_admissible = true;
    let mut refuted = None;
    for &p in ctx.primes() {
        let sylow = ctx.sylow(p)?;
        let sub = Ctx::new(sylow, ctx.k, ctx.budgets);
        let v = admissible(&sub)?;
        hyps.extend(v.certificate.hypotheses_checked.iter().cloned());
        match v.status {
            Status::Admissible => {}
            Status::NotAdmissible => {
                all_admissible = false;
                refuted.get_or_insert(p);
            }
            _ => all_admissible = false,
        }
        parts.insert(p.to_string(), sub_summary(&v));
    }
    let v = match (refuted, all_admissible) {
        (Some(_), _) => Verdict::definite(Status::NotAdmissible, Theorem::NilpotentReduction, hyps),
        (None, true) => Verdict::definite(Status::Admissible, Theorem::NilpotentReduction, hyps),
        (None, false) => Verdict::undetermined(
            Theorem::NilpotentReduction,
            Blocker::Hypothesis {
                name: "undetermined Sylow subgroup".into(),
            },
            hyps,
        ),
    };
    Ok(v.witness("sylow", parts))
}

fn sub_summary(v: &Verdict) -> Value {
    serde_json::json!({
        "status": v.status,
        "theorem": v.certificate.theorem,
        "witnesses": v.certificate.witnesses,
    })
}

#[cfg(test)]
mod tests;
