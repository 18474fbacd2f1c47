//! Necessary conditions. Each obstruction concerns a single prime `p` with
//! a unique place above it, so one of the two places an adequate extension
//! needs has residue characteristic different from `p`.

use super::{Check, Ctx, EngineError, Hypothesis, NamedGroup, Status, Theorem, Verdict};
use crate::algebra::primes::euler_phi;
use crate::algebra::IntPoly;
use crate::cyclotomic::alpha_min_poly;
use crate::groups::is_isomorphic;

/// First applicable obstruction, if any: the metacyclic necessity, then the
/// order-16 families, the modular group, and roots of unity.
pub(crate) fn obstruction(ctx: &Ctx) -> Result<Option<Verdict>, EngineError> {
    let not_admissible = |theorem, hyps| Some(Verdict::definite(Status::NotAdmissible, theorem, hyps));
    let unique: Vec<u64> = ctx
        .primes()
        .iter()
        .copied()
        .filter_map(|p| ctx.decomposes(p).map(|dec| (!dec).then_some(p)).transpose())
        .collect::<Result<_, _>>()?;
    for &p in &unique {
        if ctx.sylow_metacyclic(p)?.is_none() {
            return Ok(not_admissible(
                Theorem::UniquePlaceMetacyclic,
                vec![
                    Hypothesis::new(Check::PDecomposes { p }, false),
                    Hypothesis::new(Check::SylowMetacyclic { p }, false),
                ],
            ));
        }
    }
    if unique.contains(&2) && ctx.sylow(2)?.order() == 16 {
        let sylow = ctx.sylow(2)?;
        let families = [
            (NamedGroup::Q16, Theorem::Q16Obstruction, &[[1, 0, 1], [2, 0, 1]][..]),
            (NamedGroup::Sd16, Theorem::Sd16Obstruction, &[[-2, 0, 1]][..]),
        ];
        for (group, theorem, polys) in families {
            if !is_isomorphic(sylow, &group.build()) {
                continue;
            }
            if let Some(poly) = polys
                .iter()
                .map(|c| IntPoly::from_i64(c))
                .find(|f| ctx.k.has_root_in_field(f))
            {
                return Ok(not_admissible(
                    theorem,
                    vec![
                        Hypothesis::new(Check::PDecomposes { p: 2 }, false),
                        Hypothesis::new(Check::SylowIsomorphicTo { p: 2, group }, true),
                        Hypothesis::new(Check::RootInField { poly }, true),
                    ],
                ));
            }
        }
    }
    for &p in &unique {
        let sylow = ctx.sylow(p)?;
        if sylow.order() as u64 != p * p * p || ctx.k.degree() as u64 != p {
            continue;
        }
        let group = NamedGroup::Modular { p };
        let alpha = alpha_min_poly(p);
        if !sylow.is_abelian() && is_isomorphic(sylow, &group.build()) && ctx.k.has_root_in_field(&alpha) {
            return Ok(not_admissible(
                Theorem::ModularGroupObstruction,
                vec![
                    Hypothesis::new(Check::PDecomposes { p }, false),
                    Hypothesis::new(Check::SylowIsomorphicTo { p, group }, true),
                    Hypothesis::new(Check::FieldDegree { n: p as usize }, true),
                    Hypothesis::new(Check::RootInField { poly: alpha }, true),
                ],
            ));
        }
    }
    for &p in &unique {
        let sylow = ctx.sylow(p)?;
        if sylow.is_abelian() {
            continue;
        }
        let n = global_zeta_exponent(ctx, p);
        if n == 0 {
            continue;
        }
        let bound = p.pow(n + 1);
        if sylow.order() as u64 <= bound {
            return Ok(not_admissible(
                Theorem::RootsOfUnityObstruction,
                vec![
                    Hypothesis::new(Check::PDecomposes { p }, false),
                    Hypothesis::new(
                        Check::RootInField {
                            poly: IntPoly::cyclotomic(p.pow(n)),
                        },
                        true,
                    ),
                    Hypothesis::new(Check::SylowAbelian { p }, false),
                    Hypothesis::new(Check::SylowOrderAtMost { p, bound }, true),
                ],
            )
            .map(|v| v.witness("zeta_exponent", n)));
        }
    }
    Ok(None)
}

/// Largest `n` with `ζ_{p^n} ∈ K`.
fn global_zeta_exponent(ctx: &Ctx, p: u64) -> u32 {
    let deg = ctx.k.degree() as u64;
    let mut n = 0;
    while deg.is_multiple_of(euler_phi(p.pow(n + 1))) && ctx.k.has_root_in_field(&IntPoly::cyclotomic(p.pow(n + 1))) {
        n += 1;
    }
    n
}
