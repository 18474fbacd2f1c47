//! Sylow subgroups by growth inside normalizers.

use super::{Elem, FiniteGroup, GroupError, Subgroup};
use crate::algebra::primes::valuation;

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// A Sylow `p`-subgroup as a subset of `G`.
///
/// A p-subgroup `P` that is not Sylow is proper in a p-subgroup of its
/// normalizer, so `N(P)/P` has an element of order `p`; the p-part of any
/// lift is a p-element of `N(P)` outside `P`.
pub fn sylow_subset(g: &FiniteGroup, p: u64) -> Result<Subgroup, GroupError> {
    let order = g.order() as u64;
    if p < 2 || !order.is_multiple_of(p) {
        return Err(GroupError::PrimeDoesNotDivideOrder { p, order: g.order() });
    }
    let target = p.pow(valuation(order, p));
    let p_element = |x: Elem| x != 0 && is_p_power(g.element_order(x) as u64, p);
    let first = g.elements().find(|&x| p_element(x)).expect("Cauchy");
    let mut sylow = g.closure(&[first]);
    while (sylow.order() as u64) < target {
        let normalizer = g.normalizer(&sylow);
        let next = normalizer
            .elements()
            .iter()
            .copied()
            .find(|&x| p_element(x) && !sylow.contains(x))
            .expect("a non-Sylow p-subgroup grows inside its normalizer");
        let mut gens = sylow.generators().to_vec();
        gens.push(next);
        sylow = g.closure(&gens);
    }
    debug_assert_eq!(sylow.order() as u64, target);
    Ok(sylow)
}

pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Result<FiniteGroup, GroupError> {
    let s = sylow_subset(g, p)?;
    Ok(g.subgroup_as_group(&s, format!("Sylow {p}-subgroup of a group of order {}", g.order())))
}
