//! Tame admissibility: the Sylow-metacyclic gate and the per-Sylow
//! Liedahl-presentation search.

use serde::{Deserialize, Serialize};

use super::{trivial_verdict, Blocker, Check, Ctx, EngineError, Hypothesis, Mode, Status, Theorem, Verdict};
use crate::algebra::IntPoly;
use crate::cyclotomic::{alpha_min_poly, liedahl_check};
use crate::groups::{enumerate_metacyclic_presentations, FiniteGroup, MetacyclicPresentation};
use crate::number_field::NumberField;

/// One tried presentation and, when the condition fails, the minimal
/// polynomial of a subfield of `K ∩ ℚ(ζ_e)` not fixed by `σ_{e,q}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiedahlAttempt {
    pub presentation: MetacyclicPresentation,
    pub violator: Option<IntPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiedahlSearch {
    pub found: Option<MetacyclicPresentation>,
    /// Every attempt up to and including the first success.
    pub attempts: Vec<LiedahlAttempt>,
}

/// Tries the presentations of a metacyclic p-group in ascending order.
pub fn liedahl_search(p_group: &FiniteGroup, k: &NumberField) -> Result<LiedahlSearch, EngineError> {
    let mut attempts = Vec::new();
    for pres in enumerate_metacyclic_presentations(p_group)? {
        let chk = liedahl_check(k, pres.e, pres.q as i64)?;
        attempts.push(LiedahlAttempt {
            presentation: pres,
            violator: chk.violator.map(|v| v.min_poly),
        });
        if chk.holds {
            return Ok(LiedahlSearch {
                found: Some(pres),
                attempts,
            });
        }
    }
    Ok(LiedahlSearch { found: None, attempts })
}

/// Whether every metacyclic p-group is tamely admissible over `K`, with the
/// polynomials whose roots were tested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TamePredicate {
    pub p: u64,
    pub holds: bool,
    pub tested: Vec<IntPoly>,
    /// A tested polynomial with a root in `K`.
    pub witness: Option<IntPoly>,
}

/// For `p = 2`: none of `x²+1, x²-2, x²+2` has a root in `K`. For odd `p`:
/// the degree-`p` subfield of `ℚ(ζ_{p²})` is not contained in `K`.
pub fn all_metacyclic_tame_predicate(k: &NumberField, p: u64) -> TamePredicate {
    let tested = if p == 2 {
        vec![
            IntPoly::from_i64(&[1, 0, 1]),
            IntPoly::from_i64(&[-2, 0, 1]),
            IntPoly::from_i64(&[2, 0, 1]),
        ]
    } else {
        vec![alpha_min_poly(p)]
    };
    let witness = tested
        .iter()
        .filter(|f| k.degree().is_multiple_of(f.deg()))
        .find(|f| k.has_root_in_field(f))
        .cloned();
    TamePredicate {
        p,
        holds: witness.is_none(),
        tested,
        witness,
    }
}

pub(crate) fn tame_verdict(ctx: &Ctx) -> Result<Verdict, EngineError> {
    if ctx.g.is_trivial() {
        return Ok(trivial_verdict(Mode::Tame));
    }
    let mut hyps = Vec::new();
    for &p in ctx.primes() {
        let meta = ctx.sylow_metacyclic(p)?.is_some();
        hyps.push(Hypothesis::new(Check::SylowMetacyclic { p }, meta));
        if !meta {
            return Ok(
                Verdict::definite(Status::NotTamelyAdmissible, Theorem::SylowMetacyclicNecessity, hyps)
                    .witness("prime", p),
            );
        }
    }
    let p_group = ctx.primes().len() == 1;
    if !p_group {
        let solvable = ctx.g.is_solvable();
        hyps.push(Hypothesis::new(Check::Solvable, solvable));
        if !solvable {
            return Ok(Verdict::undetermined(
                Theorem::None,
                Blocker::Hypothesis {
                    name: "solvable".into(),
                },
                hyps,
            ));
        }
    }
    let mut presentations = serde_json::Map::new();
    for &p in ctx.primes() {
        let search = liedahl_search(ctx.sylow(p)?, ctx.k)?;
        match search.found {
            Some(pres) => {
                hyps.push(Hypothesis::new(
                    Check::LiedahlPresentation { p, presentation: pres },
                    true,
                ));
                presentations.insert(p.to_string(), pres.to_string().into());
            }
            None => {
                hyps.push(Hypothesis::new(Check::NoLiedahlPresentation { p }, true));
                return Ok(
                    Verdict::definite(Status::NotTamelyAdmissible, Theorem::TameSylowCriterion, hyps)
                        .witness("prime", p)
                        .witness("exhausted", &search.attempts),
                );
            }
        }
    }
    let mut theorem = Theorem::TameSylowCriterion;
    if let [p] = ctx.primes() {
        let pred = all_metacyclic_tame_predicate(ctx.k, *p);
        if pred.holds {
            for poly in pred.tested {
                hyps.push(Hypothesis::new(Check::RootInField { poly }, false));
            }
            theorem = if *p == 2 {
                Theorem::AllMetacyclicTwoGroups
            } else {
                Theorem::AllMetacyclicOddGroups
            };
        }
    }
    Ok(Verdict::definite(Status::TamelyAdmissible, theorem, hyps).witness("liedahl_presentations", presentations))
}
