//! Typed hypotheses. Each one re-evaluates against the lower modules, so a
//! certificate replays by recomputing every recorded truth value.

use serde::{Deserialize, Serialize};

use super::{Budgets, Ctx, EngineError, Verdict};
use crate::algebra::IntPoly;
use crate::cyclotomic::liedahl_condition;
use crate::groups::construct::{modular_p_cubed, quaternion16, semidihedral16};
use crate::groups::demuskin::{check_witness, demuskin_search, DemuskinOptions, DemuskinQuery};
use crate::groups::{is_isomorphic, Elem, FiniteGroup, MetacyclicPresentation};
use crate::local_analysis::{wild_hypotheses, zeta_in_completion, ZetaFreeClause};
use crate::number_field::NumberField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum NamedGroup {
    Q16,
    Sd16,
    /// `ℤ/p² ⋊ ℤ/p`, nonabelian.
    Modular {
        p: u64,
    },
}

impl NamedGroup {
    pub fn build(self) -> FiniteGroup {
        match self {
            NamedGroup::Q16 => quaternion16(),
            NamedGroup::Sd16 => semidihedral16(),
            NamedGroup::Modular { p } => modular_p_cubed(p),
        }
    }
}

/// A statement about `(G, K)`. Sylow statements refer to the subgroup the
/// engine computes, which is `G` itself for a p-group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "hypothesis", rename_all = "snake_case")]
pub enum Check {
    TrivialGroup,
    Solvable,
    Nilpotent,
    OddOrder,
    FieldGalois,
    FieldDegree {
        n: usize,
    },
    PDecomposes {
        p: u64,
    },
    PUnramified {
        p: u64,
    },
    RootInField {
        poly: IntPoly,
    },
    /// The clause applies and every completion above `p` lacks `ζ_p`.
    ZetaFree {
        p: u64,
        clause: ZetaFreeClause,
    },
    ZetaInCompletion {
        p: u64,
        s: u32,
    },
    /// Second entry of the descending local degrees above `p`.
    SecondLocalDegree {
        p: u64,
        degree: u32,
    },
    /// Every local degree above `p` equals `degree`.
    LocalDegree {
        p: u64,
        degree: u32,
    },
    SylowMetacyclic {
        p: u64,
    },
    SylowAbelian {
        p: u64,
    },
    SylowOrderAtMost {
        p: u64,
        bound: u64,
    },
    SylowRankAtMost {
        p: u64,
        bound: u32,
    },
    SylowIsomorphicTo {
        p: u64,
        group: NamedGroup,
    },
    /// The presentation builds a group isomorphic to the Sylow subgroup and
    /// satisfies the fixed-field condition for `K`.
    LiedahlPresentation {
        p: u64,
        presentation: MetacyclicPresentation,
    },
    /// Exhaustive: no presentation of the Sylow subgroup satisfies it.
    NoLiedahlPresentation {
        p: u64,
    },
    DemuskinRelation {
        p: u64,
        n: usize,
        s: u32,
        tuple: Vec<Elem>,
    },
    NoDemuskinQuotient {
        p: u64,
        n: usize,
        s: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub check: Check,
    pub holds: bool,
}

impl Hypothesis {
    pub fn new(check: Check, holds: bool) -> Self {
        Hypothesis { check, holds }
    }
}

impl Check {
    pub(crate) fn evaluate(&self, ctx: &Ctx) -> Result<bool, EngineError> {
        let (g, k) = (ctx.g, ctx.k);
        Ok(match self {
            Check::TrivialGroup => g.is_trivial(),
            Check::Solvable => g.is_solvable(),
            Check::Nilpotent => g.is_nilpotent(),
            Check::OddOrder => g.order() % 2 == 1,
            Check::FieldGalois => k.is_galois(),
            Check::FieldDegree { n } => k.degree() == *n,
            Check::PDecomposes { p } => k.p_decomposes(*p)?,
            Check::PUnramified { p } => k.decompose_prime(*p)?.is_unramified(),
            Check::RootInField { poly } => k.has_root_in_field(poly),
            Check::ZetaFree { p, clause } => {
                let h = wild_hypotheses(k, *p)?;
                h.clauses.contains(clause) && h.all_completions_zeta_free == Some(true)
            }
            Check::ZetaInCompletion { p, s } => zeta_in_completion(k, *p, *s)?.present,
            Check::SecondLocalDegree { p, degree } => k.decompose_prime(*p)?.local_degrees().get(1) == Some(degree),
            Check::LocalDegree { p, degree } => k.decompose_prime(*p)?.local_degrees().iter().all(|d| d == degree),
            Check::SylowMetacyclic { p } => ctx.sylow_metacyclic(*p)?.is_some(),
            Check::SylowAbelian { p } => ctx.sylow(*p)?.is_abelian(),
            Check::SylowOrderAtMost { p, bound } => ctx.sylow(*p)?.order() as u64 <= *bound,
            Check::SylowRankAtMost { p, bound } => ctx.sylow_rank(*p)? <= *bound,
            Check::SylowIsomorphicTo { p, group } => is_isomorphic(ctx.sylow(*p)?, &group.build()),
            Check::LiedahlPresentation { p, presentation } => {
                presentation_matches(ctx.sylow(*p)?, presentation, ctx.budgets)?
                    && liedahl_condition(k, presentation.e, presentation.q as i64)?
            }
            Check::NoLiedahlPresentation { p } => super::tame::liedahl_search(ctx.sylow(*p)?, k)?.found.is_none(),
            Check::DemuskinRelation { p, n, s, tuple } => {
                let q = DemuskinQuery::relation(*n, *s)?;
                check_witness(ctx.sylow(*p)?, &q, tuple)?
            }
            Check::NoDemuskinQuotient { p, n, s } => {
                let q = DemuskinQuery::relation(*n, *s)?;
                demuskin_search(ctx.sylow(*p)?, &q, *p, &demuskin_options(ctx.budgets))?.is_none()
            }
        })
    }
}

fn presentation_matches(
    sylow: &FiniteGroup,
    pres: &MetacyclicPresentation,
    budgets: &Budgets,
) -> Result<bool, EngineError> {
    let built = pres.build(budgets.order)?;
    Ok(is_isomorphic(&built, sylow))
}

pub(crate) fn demuskin_options(budgets: &Budgets) -> DemuskinOptions {
    DemuskinOptions {
        max_order: budgets.demuskin_order,
        node_budget: budgets.demuskin_nodes,
        exec: budgets.exec,
        shortcuts: true,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub checked: usize,
    /// Indices into `hypotheses_checked` whose value did not reproduce.
    pub mismatches: Vec<usize>,
}

impl ReplayReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Re-evaluates every hypothesis of the certificate against `(G, K)`.
pub fn replay(
    verdict: &Verdict,
    g: &FiniteGroup,
    k: &NumberField,
    budgets: &Budgets,
) -> Result<ReplayReport, EngineError> {
    let ctx = Ctx::new(g, k, budgets);
    let hyps = &verdict.certificate.hypotheses_checked;
    let mut mismatches = Vec::new();
    for (i, h) in hyps.iter().enumerate() {
        if h.check.evaluate(&ctx)? != h.holds {
            mismatches.push(i);
        }
    }
    Ok(ReplayReport {
        checked: hyps.len(),
        mismatches,
    })
}
