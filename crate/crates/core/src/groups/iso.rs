//! Isomorphism testing by backtracking over images of a generating set.

use std::ops::ControlFlow;

use super::{Elem, FiniteGroup};

const UNSET: Elem = Elem::MAX;

/// Cheap invariants that must agree before any search.
fn invariants_match(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    g.order() == h.order()
        && g.order_profile() == h.order_profile()
        && g.is_abelian() == h.is_abelian()
        && g.center().order() == h.center().order()
        && g.derived_subgroup().order() == h.derived_subgroup().order()
}

/// Extends `map` from `⟨gens[..k]⟩` to `⟨gens[..=k]⟩` by breadth-first
/// search; fails on any inconsistency or collision.
fn extend(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[Elem],
    images: &[Elem],
    map: &mut [Elem],
    used: &mut [bool],
) -> bool {
    let mut queue: Vec<Elem> = g.elements().filter(|&x| map[x as usize] != UNSET).collect();
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let img = h.mul(map[x as usize], t);
            match map[y as usize] {
                UNSET => {
                    if used[img as usize] {
                        return false;
                    }
                    map[y as usize] = img;
                    used[img as usize] = true;
                    queue.push(y);
                }
                existing if existing != img => return false,
                _ => {}
            }
        }
    }
    true
}

fn search<F>(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[Elem],
    images: &mut Vec<Elem>,
    map: &[Elem],
    used: &[bool],
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Elem]) -> ControlFlow<()>,
{
    let k = images.len();
    if k == gens.len() {
        return visit(map);
    }
    let want = g.element_order(gens[k]);
    for t in h
        .elements()
        .filter(|&t| h.element_order(t) == want && !used[t as usize])
    {
        let mut m = map.to_vec();
        let mut u = used.to_vec();
        images.push(t);
        if extend(g, h, &gens[..=k], images, &mut m, &mut u) {
            search(g, h, gens, images, &m, &u, visit)?;
        }
        images.pop();
    }
    ControlFlow::Continue(())
}

/// Calls `visit` with every isomorphism `G → H` (as a table of images)
/// until it breaks.
pub fn for_each_isomorphism<F>(g: &FiniteGroup, h: &FiniteGroup, mut visit: F)
where
    F: FnMut(&[Elem]) -> ControlFlow<()>,
{
    if !invariants_match(g, h) {
        return;
    }
    let gens = g.generators().to_vec();
    let mut map = vec![UNSET; g.order()];
    let mut used = vec![false; h.order()];
    map[0] = 0;
    used[0] = true;
    let _ = search(g, h, &gens, &mut Vec::new(), &map, &used, &mut visit);
}

pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<Elem>> {
    let mut found = None;
    for_each_isomorphism(g, h, |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    });
    found
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    find_isomorphism(g, h).is_some()
}

pub fn automorphisms(g: &FiniteGroup) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    for_each_isomorphism(g, g, |m| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    });
    out
}
