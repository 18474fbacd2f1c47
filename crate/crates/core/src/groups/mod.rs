//! Finite groups as dense Cayley tables over `u32` element indices.
//!
//! Index 0 is always the identity. Tables are validated on construction and
//! immutable afterwards.

pub mod construct;
pub mod demuskin;
pub mod frattini;
pub mod iso;
pub mod metacyclic;
pub mod sylow;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::primes;

pub use construct::Permutation;
pub use demuskin::{demuskin_quotient_test, DemuskinExponent, DemuskinQuery, DemuskinWitness};
pub use frattini::d_of_group;
pub use iso::is_isomorphic;
pub use metacyclic::{enumerate_metacyclic_presentations, is_metacyclic, MetacyclicPresentation};
pub use sylow::sylow_subgroup;

pub type Elem = u32;

/// Largest order materialized by the constructors unless overridden.
pub const DEFAULT_ORDER_BUDGET: usize = 4096;
const FULL_ASSOCIATIVITY_LIMIT: usize = 512;
const ASSOCIATIVITY_SAMPLES: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("inconsistent metacyclic presentation: {0}")]
    InconsistentPresentation(String),
    #[error("group order exceeds the budget of {budget}")]
    OrderBudgetExceeded { budget: usize },
    #[error("group of order {order} is not a p-group")]
    NotPGroup { order: usize },
    #[error("{p} does not divide the group order {order}")]
    PrimeDoesNotDivideOrder { p: u64, order: usize },
    #[error("search exceeded its budget of {budget} nodes")]
    SearchBudgetExceeded { budget: u64 },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
}

/// How a group was entered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSource {
    MetacyclicParams {
        presentation: MetacyclicPresentation,
    },
    PermutationGenerators {
        degree: usize,
        generators: Vec<String>,
    },
    DirectProduct {
        factors: Vec<GroupSource>,
    },
    /// Subgroups, quotients and extensions built from other groups.
    Derived {
        description: String,
    },
}

/// A subset closed under the group law, with the generators it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<bool>,
    elements: Vec<Elem>,
    gens: Vec<Elem>,
}

impl Subgroup {
    pub fn contains(&self, x: Elem) -> bool {
        self.members[x as usize]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Ascending; starts with the identity.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

pub struct FiniteGroup {
    order: usize,
    table: Vec<Elem>,
    inverses: Vec<Elem>,
    element_orders: Vec<u32>,
    source: GroupSource,
    generators: OnceLock<Vec<Elem>>,
}

impl FiniteGroup {
    /// Validates the group axioms: full associativity up to order 512,
    /// seeded random triples above.
    pub fn from_table(order: usize, table: Vec<Elem>, source: GroupSource) -> Result<Self, GroupError> {
        if order == 0 || table.len() != order * order {
            return Err(GroupError::InvalidTable(format!(
                "expected {} entries, got {}",
                order * order,
                table.len()
            )));
        }
        if table.iter().any(|&x| x as usize >= order) {
            return Err(GroupError::InvalidTable("entry out of range".into()));
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(GroupError::InvalidTable("element 0 is not the identity".into()));
            }
        }
        // Latin square: every row and column is a permutation
        let mut seen = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                let r = at(a, b);
                if seen[r] == a {
                    return Err(GroupError::InvalidTable(format!("row {a} repeats {r}")));
                }
                seen[r] = a;
            }
        }
        let mut seen = vec![usize::MAX; order];
        for b in 0..order {
            for a in 0..order {
                let r = at(a, b);
                if seen[r] == b {
                    return Err(GroupError::InvalidTable(format!("column {b} repeats {r}")));
                }
                seen[r] = b;
            }
        }
        let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if order <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 1..order {
                for b in 1..order {
                    let ab = at(a, b);
                    for c in 1..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(GroupError::InvalidTable(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xa550c ^ order as u64);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if !assoc(a, b, c) {
                    return Err(GroupError::InvalidTable(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                }
            }
        }
        let mut inverses = vec![0; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            inverses[a] = row.iter().position(|&x| x == 0).expect("latin row") as Elem;
        }
        let element_orders = (0..order)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != 0 {
                    x = at(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        Ok(FiniteGroup {
            order,
            table,
            inverses,
            element_orders,
            source,
            generators: OnceLock::new(),
        })
    }

    pub fn trivial() -> Self {
        Self::from_table(1, vec![0], GroupSource::DirectProduct { factors: Vec::new() }).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn source(&self) -> &GroupSource {
        &self.source
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a as usize]
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let ord = self.element_orders[a as usize] as i64;
        let mut e = k.rem_euclid(ord);
        let (mut base, mut acc) = (a, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> u32 {
        self.element_orders[a as usize]
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// `Some(p)` when the order is a nontrivial power of `p`.
    pub fn p_group_prime(&self) -> Option<u64> {
        primes::prime_power(self.order as u64).map(|(p, _)| p)
    }

    pub fn require_p_group(&self) -> Result<(u64, u32), GroupError> {
        if self.order == 1 {
            return Ok((1, 0));
        }
        primes::prime_power(self.order as u64).ok_or(GroupError::NotPGroup { order: self.order })
    }

    /// Counts of elements by order.
    pub fn order_profile(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for &o in &self.element_orders {
            *out.entry(o).or_insert(0) += 1;
        }
        out
    }

    /// A small generating set: elements of largest order first, each kept
    /// only if it enlarges the subgroup generated so far.
    pub fn generators(&self) -> &[Elem] {
        self.generators.get_or_init(|| {
            let mut by_order: Vec<Elem> = self.elements().skip(1).collect();
            by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
            let mut gens = Vec::new();
            let mut current = self.closure(&[]);
            for a in by_order {
                if current.order() == self.order {
                    break;
                }
                if !current.contains(a) {
                    gens.push(a);
                    current = self.closure(&gens);
                }
            }
            gens
        })
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Subgroup {
        let mut members = vec![false; self.order];
        members[0] = true;
        let mut elements = vec![0];
        let mut queue = VecDeque::from([0]);
        let gens: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !members[y as usize] {
                    members[y as usize] = true;
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
        elements.sort_unstable();
        Subgroup {
            members,
            elements,
            gens,
        }
    }

    pub fn whole(&self) -> Subgroup {
        self.closure(self.generators())
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[Elem]) -> Subgroup {
        let mut h = self.closure(gens);
        loop {
            let outside = self
                .generators()
                .iter()
                .find_map(|&s| h.gens.iter().map(|&x| self.conjugate(s, x)).find(|&c| !h.contains(c)));
            match outside {
                Some(c) => {
                    let mut g = h.gens.clone();
                    g.push(c);
                    h = self.closure(&g);
                }
                None => return h,
            }
        }
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generators()
            .iter()
            .all(|&s| h.gens.iter().all(|&x| h.contains(self.conjugate(s, x))))
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = self
            .elements()
            .filter(|&g| h.gens.iter().all(|&x| h.contains(self.conjugate(g, x))))
            .collect();
        self.closure(&gens)
    }

    pub fn centralizer(&self, xs: &[Elem]) -> Subgroup {
        let gens: Vec<Elem> = self
            .elements()
            .filter(|&g| xs.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        self.closure(&gens)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(self.generators())
    }

    /// `[A, B]` for normal subgroups `A`, `B`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let comms: Vec<Elem> = a
            .gens
            .iter()
            .flat_map(|&x| b.gens.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect();
        self.normal_closure(&comms)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_subgroup(&g, &g)
    }

    /// `G = G⁽⁰⁾ ⊇ G⁽¹⁾ ⊇ …` until it stabilizes.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.commutator_subgroup_of(last);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// `[H, H]` for an arbitrary subgroup `H`: the closure of commutators of
    /// its generators under conjugation by `H`.
    fn commutator_subgroup_of(&self, h: &Subgroup) -> Subgroup {
        let mut comms: Vec<Elem> = Vec::new();
        for &x in &h.gens {
            for &y in &h.gens {
                comms.push(self.commutator(x, y));
            }
        }
        let mut c = self.closure(&comms);
        loop {
            let outside = h
                .gens
                .iter()
                .find_map(|&s| c.gens.iter().map(|&x| self.conjugate(s, x)).find(|&y| !c.contains(y)));
            match outside {
                Some(y) => {
                    let mut g = c.gens.clone();
                    g.push(y);
                    c = self.closure(&g);
                }
                None => return c,
            }
        }
    }

    /// `G = γ₁ ⊇ γ₂ = [G, G] ⊇ γ₃ = [G, γ₂] ⊇ …` until it stabilizes.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let g = self.whole();
        let mut series = vec![g.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.commutator_subgroup(&g, last);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().expect("nonempty").is_trivial()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().expect("nonempty").is_trivial()
    }

    /// Conjugacy classes ordered by their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for x in self.elements() {
            if class_of[x as usize] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let mut class = vec![x];
            class_of[x as usize] = idx;
            let mut i = 0;
            while i < class.len() {
                let y = class[i];
                for &s in self.generators() {
                    let z = self.conjugate(s, y);
                    if class_of[z as usize] == usize::MAX {
                        class_of[z as usize] = idx;
                        class.push(z);
                    }
                }
                i += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// The subgroup as a group in its own right; element `k` of the result
    /// is `h.elements()[k]`.
    pub fn subgroup_as_group(&self, h: &Subgroup, description: impl Into<String>) -> FiniteGroup {
        let n = h.order();
        let mut index = vec![Elem::MAX; self.order];
        for (k, &x) in h.elements.iter().enumerate() {
            index[x as usize] = k as Elem;
        }
        let mut table = Vec::with_capacity(n * n);
        for &a in &h.elements {
            for &b in &h.elements {
                table.push(index[self.mul(a, b) as usize]);
            }
        }
        FiniteGroup::from_table(
            n,
            table,
            GroupSource::Derived {
                description: description.into(),
            },
        )
        .expect("a subgroup of a valid group is a group")
    }

    /// `G/N` for normal `N`, cosets ordered by their smallest element.
    pub fn quotient(&self, n: &Subgroup, description: impl Into<String>) -> Result<FiniteGroup, GroupError> {
        if !self.is_normal(n) {
            return Err(GroupError::InvalidQuery("quotient by a non-normal subgroup".into()));
        }
        let mut coset = vec![Elem::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset[g as usize] != Elem::MAX {
                continue;
            }
            let idx = reps.len() as Elem;
            for &x in &n.elements {
                coset[self.mul(g, x) as usize] = idx;
            }
            reps.push(g);
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(coset[self.mul(a, b) as usize]);
            }
        }
        FiniteGroup::from_table(
            m,
            table,
            GroupSource::Derived {
                description: description.into(),
            },
        )
    }

    /// Raw table row, for callers that scan products of a fixed left factor.
    pub fn row(&self, a: Elem) -> &[Elem] {
        &self.table[a as usize * self.order..(a as usize + 1) * self.order]
    }
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            order: self.order,
            table: self.table.clone(),
            inverses: self.inverses.clone(),
            element_orders: self.element_orders.clone(),
            source: self.source.clone(),
            generators: self.generators.clone(),
        }
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("source", &self.source)
            .finish()
    }
}
