//! Group families shared by the integration tests.
#![allow(dead_code)]

use admissibility::groups::construct::{
    abelian, cyclic, cyclic_extension, dihedral, elementary_abelian, heisenberg, modular_p_cubed,
};
use admissibility::groups::iso::automorphisms;
use admissibility::groups::{d_of_group, is_isomorphic, Elem, FiniteGroup, MetacyclicPresentation};

pub fn meta(e: u64, f: u64, i: i64, q: i64) -> FiniteGroup {
    MetacyclicPresentation::new(e, f, i, q).unwrap().build(4096).unwrap()
}

/// Generalized quaternion group of order `2^k`.
pub fn quaternion(k: u32) -> FiniteGroup {
    let e = 1u64 << (k - 1);
    meta(e, 2, (e / 2) as i64, -1)
}

/// Semidihedral group of order `2^k`, `k >= 4`.
pub fn semidihedral(k: u32) -> FiniteGroup {
    let e = 1u64 << (k - 1);
    meta(e, 2, 0, (e / 2 - 1) as i64)
}

type Invariant = (Vec<(u32, usize)>, usize, usize, u32);

fn invariant(g: &FiniteGroup) -> Invariant {
    (
        g.order_profile().into_iter().collect(),
        g.center().order(),
        g.derived_subgroup().order(),
        d_of_group(g).unwrap(),
    )
}

/// Adds `g` unless an isomorphic group is already present.
fn insert_class(classes: &mut Vec<(Invariant, FiniteGroup)>, g: FiniteGroup) -> bool {
    let inv = invariant(&g);
    if classes.iter().any(|(i, h)| *i == inv && is_isomorphic(h, &g)) {
        return false;
    }
    classes.push((inv, g));
    true
}

pub fn groups_of_order_27() -> Vec<(String, FiniteGroup)> {
    vec![
        ("C27".into(), cyclic(27)),
        ("C9xC3".into(), abelian(&[9, 3])),
        ("M27".into(), modular_p_cubed(3)),
        ("Heis3".into(), heisenberg(3)),
        ("C3^3".into(), elementary_abelian(3, 3)),
    ]
}

/// The 15 groups of order 81, as extensions `N⟨t⟩` of a group of order 27
/// by an automorphism `α` and `t³ = z` with `α(z) = z` and `α³ = (x ↦ z x z⁻¹)`.
/// Stops once 15 isomorphism classes are found.
pub fn groups_of_order_81() -> Vec<FiniteGroup> {
    let mut classes = Vec::new();
    for (_, n) in groups_of_order_27() {
        for alpha in automorphisms(&n) {
            let alpha3: Vec<Elem> = n
                .elements()
                .map(|x| alpha[alpha[alpha[x as usize] as usize] as usize])
                .collect();
            for z in n.elements() {
                if alpha[z as usize] != z || n.elements().any(|x| alpha3[x as usize] != n.conjugate(z, x)) {
                    continue;
                }
                let g = cyclic_extension(&n, &alpha, 3, z, 4096).expect("valid extension data");
                insert_class(&mut classes, g);
                if classes.len() == 15 {
                    return classes.into_iter().map(|(_, g)| g).collect();
                }
            }
        }
    }
    panic!("found only {} groups of order 81", classes.len());
}

/// Every group of order 1, 3, 9, 27 and 81.
pub fn groups_of_order_dividing_81() -> Vec<FiniteGroup> {
    let mut out = vec![FiniteGroup::trivial(), cyclic(3), cyclic(9), abelian(&[3, 3])];
    out.extend(groups_of_order_27().into_iter().map(|(_, g)| g));
    out.extend(groups_of_order_81());
    out
}

/// Abelian, dihedral, quaternion, semidihedral and `ℤ/p² ⋊ ℤ/p` groups of
/// order at most 128.
pub fn small_named_groups() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    let abelian_types: &[&[u64]] = &[
        &[2],
        &[4],
        &[2, 2],
        &[8],
        &[4, 2],
        &[2, 2, 2],
        &[16],
        &[8, 2],
        &[4, 4],
        &[4, 2, 2],
        &[2, 2, 2, 2],
        &[32],
        &[8, 4],
        &[4, 2, 2, 2],
        &[2, 2, 2, 2, 2],
        &[8, 8],
        &[4, 4, 4],
        &[16, 4, 2],
        &[3, 3],
        &[9, 3],
        &[3, 3, 3],
        &[27, 3],
        &[9, 9],
        &[3, 3, 3, 3],
        &[5, 5],
        &[25, 5],
        &[7, 7],
        &[11, 11],
    ];
    for t in abelian_types {
        out.push((format!("abelian{t:?}"), abelian(t)));
    }
    for n in [2u64, 4, 8, 16, 32, 64] {
        out.push((format!("D{}", 2 * n), dihedral(n)));
    }
    for k in 3..=7 {
        out.push((format!("Q{}", 1 << k), quaternion(k)));
    }
    for k in 4..=7 {
        out.push((format!("SD{}", 1 << k), semidihedral(k)));
    }
    for p in [2u64, 3, 5] {
        out.push((format!("C{}:C{p}", p * p), modular_p_cubed(p)));
    }
    out
}

/// Smallest size of a generating set, by depth-first search over index-
/// increasing tuples whose every entry lies outside the span of the earlier
/// ones.
pub fn brute_force_rank(g: &FiniteGroup) -> u32 {
    fn search(g: &FiniteGroup, chosen: &mut Vec<Elem>, start: Elem, k: usize) -> bool {
        let span = g.closure(chosen);
        if span.order() == g.order() {
            return true;
        }
        if chosen.len() == k {
            return false;
        }
        for x in start..g.order() as Elem {
            if span.contains(x) {
                continue;
            }
            chosen.push(x);
            let found = search(g, chosen, x + 1, k);
            chosen.pop();
            if found {
                return true;
            }
        }
        false
    }
    (0..).find(|&k| search(g, &mut Vec::new(), 1, k)).unwrap() as u32
}
