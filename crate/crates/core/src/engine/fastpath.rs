//! Closed-form criteria for special fields, evaluated next to the general
//! pipeline on odd p-groups. A definite disagreement is a bug and panics.

use serde::Serialize;

use super::obstruct::obstruction;
use super::tame::liedahl_search;
use super::{Ctx, EngineError, Status, Theorem, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub theorem: Theorem,
    pub expected: Status,
    /// `None` when the pipeline is undetermined.
    pub agrees: Option<bool>,
}

/// `(criterion, admissible?)` for every closed form whose hypotheses hold.
fn closed_forms(ctx: &Ctx, p: u64) -> Result<Vec<(Theorem, bool)>, EngineError> {
    let k = ctx.k;
    let n = k.degree();
    let dec = k.decompose_prime(p)?;
    let decomposes = dec.decomposes();
    let unramified = dec.is_unramified();
    let local = dec.local_degrees();
    let min_local = *local.iter().min().expect("at least one place");
    let d = ctx.sylow_rank(p)?;
    let meta = ctx.sylow_metacyclic(p)?.is_some();
    let galois = k.is_galois();
    let mut out = Vec::new();
    if n == 2 {
        out.push((Theorem::QuadraticField, if decomposes { d <= 2 } else { meta }));
    }
    if n == 3 && p > 3 {
        out.push((Theorem::CubicField, if decomposes { d <= 2 } else { meta }));
    }
    if n == 4 && p > 3 {
        out.push((
            Theorem::QuarticField,
            if decomposes { d <= min_local + 1 } else { meta },
        ));
    }
    if galois && n > 1 && n % 2 == 1 {
        let ok = if decomposes {
            d <= local[0] + 1
        } else {
            liedahl_search(ctx.sylow(p)?, k)?.found.is_some()
        };
        out.push((Theorem::OddDegreeGalois, ok));
    }
    if galois && unramified {
        let f = dec.pairs[0].1;
        out.push((Theorem::UnramifiedGalois, if decomposes { d <= f + 1 } else { meta }));
    }
    if galois && n >= 2 && n.is_power_of_two() {
        if !decomposes {
            out.push((Theorem::TwoPowerDegreeGalois, meta));
        } else if unramified || !(local[0] as u64).is_multiple_of(p - 1) {
            out.push((Theorem::TwoPowerDegreeGalois, d <= local[0] + 1));
        }
    }
    if let Some(v) = obstruction(ctx)? {
        out.push((v.theorem(), false));
    }
    Ok(out)
}

pub(crate) fn cross_checks(ctx: &Ctx, status: Status) -> Vec<CrossCheck> {
    let [p] = ctx.primes() else {
        return Vec::new();
    };
    if *p == 2 {
        return Vec::new();
    }
    // a closed form that cannot be evaluated is skipped, not reported
    let Ok(forms) = closed_forms(ctx, *p) else {
        return Vec::new();
    };
    forms
        .into_iter()
        .map(|(theorem, admissible)| {
            let expected = if admissible {
                Status::Admissible
            } else {
                Status::NotAdmissible
            };
            let agrees = status.is_definite().then_some(status == expected);
            assert_ne!(
                agrees,
                Some(false),
                "{} predicts {expected:?} but the pipeline gives {status:?} for a group of order {} over {}",
                theorem.tag(),
                ctx.g.order(),
                ctx.k.label()
            );
            CrossCheck {
                theorem,
                expected,
                agrees,
            }
        })
        .collect()
}

pub(crate) fn with_cross_checks(ctx: &Ctx, v: Verdict) -> Result<Verdict, EngineError> {
    let checks = cross_checks(ctx, v.status);
    Ok(if checks.is_empty() {
        v
    } else {
        v.witness("cross_checks", checks)
    })
}
