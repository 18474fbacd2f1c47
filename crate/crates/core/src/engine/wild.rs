//! Admissibility of p-groups (wild ramification allowed) and the rank-bound
//! sufficient conditions for solvable groups.

use super::check::demuskin_options;
use super::obstruct::obstruction;
use super::tame::liedahl_search;
use super::{Blocker, Check, Ctx, EngineError, Hypothesis, Status, Theorem, Verdict};
use crate::algebra::IntPoly;
use crate::groups::demuskin::{demuskin_search, DemuskinQuery};
use crate::groups::GroupError;
use crate::local_analysis::{wild_hypotheses, ZetaFreeClause};

fn admissible_if(ok: bool) -> Status {
    if ok {
        Status::Admissible
    } else {
        Status::NotAdmissible
    }
}

fn clause_theorem(clause: ZetaFreeClause) -> Theorem {
    match clause {
        ZetaFreeClause::Unramified => Theorem::WildRankBoundUnramified,
        ZetaFreeClause::LocalDegrees => Theorem::WildRankBoundLocalDegrees,
        ZetaFreeClause::GaloisDegree => Theorem::WildRankBoundGaloisDegree,
        ZetaFreeClause::LocalTest => Theorem::WildRankBound,
    }
}

/// An odd p-group `G`.
pub(crate) fn wild_p_group(ctx: &Ctx, p: u64) -> Result<Verdict, EngineError> {
    let k = ctx.k;
    let h = wild_hypotheses(k, p)?;
    let d = ctx.sylow_rank(p)?;
    if !h.decomposes {
        return unique_place(ctx, p);
    }
    let mut hyps = vec![Hypothesis::new(Check::PDecomposes { p }, true)];
    match h.all_completions_zeta_free {
        Some(true) => {
            let clause = h.clauses[0];
            let second = h.second_local_degree.expect("p decomposes");
            let bound = second + 1;
            hyps.push(Hypothesis::new(Check::ZetaFree { p, clause }, true));
            hyps.push(Hypothesis::new(Check::SecondLocalDegree { p, degree: second }, true));
            hyps.push(Hypothesis::new(Check::SylowRankAtMost { p, bound }, d <= bound));
            return Ok(
                Verdict::definite(admissible_if(d <= bound), clause_theorem(clause), hyps)
                    .witness("d", d)
                    .witness("local_degrees", &h.local_degrees),
            );
        }
        Some(false) if h.galois && !h.zeta_p_global => {
            let (local, s) = h.galois_profile.expect("Galois field");
            return demuskin_branch(ctx, p, local, s, hyps);
        }
        _ => {}
    }
    // metacyclic groups are admissible whenever p decomposes
    if let Some(pres) = ctx.sylow_metacyclic(p)? {
        hyps.push(Hypothesis::new(Check::SylowMetacyclic { p }, true));
        return Ok(
            Verdict::definite(Status::Admissible, Theorem::OddMetacyclicCriterion, hyps)
                .witness("presentation", pres.to_string()),
        );
    }
    hyps.push(Hypothesis::new(Check::SylowMetacyclic { p }, false));
    let name = if h.zeta_p_global {
        hyps.push(Hypothesis::new(
            Check::RootInField {
                poly: IntPoly::cyclotomic(p),
            },
            true,
        ));
        "zeta_p in K"
    } else {
        hyps.push(Hypothesis::new(Check::FieldGalois, false));
        "local roots of unity over a non-Galois field"
    };
    Ok(Verdict::undetermined(
        Theorem::None,
        Blocker::Hypothesis { name: name.into() },
        hyps,
    ))
}

/// `p` has a single place: the Sylow subgroup must be metacyclic, and then
/// the odd metacyclic criterion is an iff.
fn unique_place(ctx: &Ctx, p: u64) -> Result<Verdict, EngineError> {
    let mut hyps = vec![Hypothesis::new(Check::PDecomposes { p }, false)];
    if ctx.sylow_metacyclic(p)?.is_none() {
        hyps.push(Hypothesis::new(Check::SylowMetacyclic { p }, false));
        return Ok(Verdict::definite(
            Status::NotAdmissible,
            Theorem::UniquePlaceMetacyclic,
            hyps,
        ));
    }
    hyps.push(Hypothesis::new(Check::SylowMetacyclic { p }, true));
    let search = liedahl_search(ctx.sylow(p)?, ctx.k)?;
    Ok(match search.found {
        Some(presentation) => {
            hyps.push(Hypothesis::new(Check::LiedahlPresentation { p, presentation }, true));
            Verdict::definite(Status::Admissible, Theorem::OddMetacyclicCriterion, hyps)
                .witness("presentation", presentation.to_string())
        }
        None => {
            hyps.push(Hypothesis::new(Check::NoLiedahlPresentation { p }, true));
            Verdict::definite(Status::NotAdmissible, Theorem::OddMetacyclicCriterion, hyps)
                .witness("exhausted", &search.attempts)
        }
    })
}

/// Galois `K`, `p` decomposes, `ζ_p ∈ K_𝔭` but `ζ_p ∉ K`.
fn demuskin_branch(ctx: &Ctx, p: u64, local: u32, s: u32, mut hyps: Vec<Hypothesis>) -> Result<Verdict, EngineError> {
    let n = local as usize + 2;
    hyps.extend([
        Hypothesis::new(Check::FieldGalois, true),
        Hypothesis::new(
            Check::RootInField {
                poly: IntPoly::cyclotomic(p),
            },
            false,
        ),
        Hypothesis::new(Check::LocalDegree { p, degree: local }, true),
        Hypothesis::new(Check::ZetaInCompletion { p, s }, true),
        Hypothesis::new(Check::ZetaInCompletion { p, s: s + 1 }, false),
    ]);
    let query = DemuskinQuery::relation(n, s)?;
    let found = match demuskin_search(ctx.sylow(p)?, &query, p, &demuskin_options(ctx.budgets)) {
        Ok(found) => found,
        Err(e @ (GroupError::SearchBudgetExceeded { .. } | GroupError::OrderBudgetExceeded { .. })) => {
            return Ok(Verdict::undetermined(
                Theorem::WildDemuskin,
                Blocker::Budget { detail: e.to_string() },
                hyps,
            ))
        }
        Err(e) => return Err(e.into()),
    };
    let v = match found {
        Some(w) => {
            hyps.push(Hypothesis::new(
                Check::DemuskinRelation {
                    p,
                    n,
                    s,
                    tuple: w.tuple.clone(),
                },
                true,
            ));
            Verdict::definite(Status::Admissible, Theorem::WildDemuskin, hyps)
                .witness("demuskin_tuple", &w.tuple)
                .witness("demuskin_route", w.route)
        }
        None => {
            hyps.push(Hypothesis::new(Check::NoDemuskinQuotient { p, n, s }, true));
            Verdict::definite(Status::NotAdmissible, Theorem::WildDemuskin, hyps)
        }
    };
    Ok(v.witness("commutator_convention", "[a,b] = a^-1 b^-1 a b")
        .witness("n", n)
        .witness("s", s))
}

/// A 2-group: tame sufficiency, then obstructions; no wild criterion
/// covers `p = 2`.
pub(crate) fn two_group(ctx: &Ctx) -> Result<Verdict, EngineError> {
    let p = 2;
    if ctx.sylow_metacyclic(p)?.is_some() {
        let search = liedahl_search(ctx.sylow(p)?, ctx.k)?;
        if let Some(presentation) = search.found {
            let hyps = vec![
                Hypothesis::new(Check::SylowMetacyclic { p }, true),
                Hypothesis::new(Check::LiedahlPresentation { p, presentation }, true),
            ];
            return Ok(Verdict::definite(Status::Admissible, Theorem::TameSylowCriterion, hyps)
                .witness("presentation", presentation.to_string()));
        }
    }
    if let Some(v) = obstruction(ctx)? {
        return Ok(v);
    }
    let decomposes = ctx.decomposes(p)?;
    let meta = ctx.sylow_metacyclic(p)?.is_some();
    let hyps = vec![
        Hypothesis::new(Check::PDecomposes { p }, decomposes),
        Hypothesis::new(Check::SylowMetacyclic { p }, meta),
    ];
    let name = if meta {
        "metacyclic 2-group without a Liedahl presentation and no obstruction"
    } else {
        "2 decomposes and the group is not metacyclic"
    };
    Ok(Verdict::undetermined(
        Theorem::None,
        Blocker::Hypothesis { name: name.into() },
        hyps,
    ))
}

/// Galois `K`, `|G|` odd, and a per-prime rank bound. Two variants: the full
/// local degree when every completion is zeta-free by unramifiedness or
/// degree, and half the local degree when only `ζ_p ∉ K` is known.
pub(crate) fn solvable_rank_bounds(ctx: &Ctx) -> Result<Option<Verdict>, EngineError> {
    let k = ctx.k;
    if !k.is_galois() || ctx.g.order().is_multiple_of(2) {
        return Ok(None);
    }
    let base = vec![
        Hypothesis::new(Check::FieldGalois, true),
        Hypothesis::new(Check::OddOrder, true),
    ];
    let mut full = Some(base.clone());
    let mut half = Some(base);
    for &p in ctx.primes() {
        if !ctx.decomposes(p)? {
            return Ok(None);
        }
        let dec = k.decompose_prime(p)?;
        let local = dec.local_degrees()[0];
        let d = ctx.sylow_rank(p)?;
        let common = [
            Hypothesis::new(Check::PDecomposes { p }, true),
            Hypothesis::new(Check::LocalDegree { p, degree: local }, true),
        ];
        if let Some(h) = full.as_mut() {
            let clause = if dec.is_unramified() {
                Some(ZetaFreeClause::Unramified)
            } else if !(k.degree() as u64).is_multiple_of(p - 1) {
                Some(ZetaFreeClause::GaloisDegree)
            } else {
                None
            };
            match clause {
                Some(clause) if d <= local + 1 => {
                    h.extend(common.iter().cloned());
                    h.push(Hypothesis::new(Check::ZetaFree { p, clause }, true));
                    h.push(Hypothesis::new(Check::SylowRankAtMost { p, bound: local + 1 }, true));
                }
                _ => full = None,
            }
        }
        if let Some(h) = half.as_mut() {
            let zeta_global = k.has_root_in_field(&IntPoly::cyclotomic(p));
            if !zeta_global && d <= local / 2 + 1 {
                h.extend(common.iter().cloned());
                h.push(Hypothesis::new(
                    Check::RootInField {
                        poly: IntPoly::cyclotomic(p),
                    },
                    false,
                ));
                h.push(Hypothesis::new(
                    Check::SylowRankAtMost {
                        p,
                        bound: local / 2 + 1,
                    },
                    true,
                ));
            } else {
                half = None;
            }
        }
    }
    Ok(match (full, half) {
        (Some(h), _) => Some(Verdict::definite(Status::Admissible, Theorem::SolvableRankBound, h)),
        (None, Some(h)) => Some(Verdict::definite(Status::Admissible, Theorem::HalfDegreeRankBound, h)),
        (None, None) => None,
    })
}
