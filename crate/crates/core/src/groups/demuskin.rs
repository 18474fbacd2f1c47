//! Surjections onto a p-group from the one-relator pro-p group
//! `⟨x₁, …, x_n | x₁^(p^s) [x₁, x₂] [x₃, x₄] ⋯ [x_{n-1}, x_n]⟩`,
//! or from the free pro-p group on `n` generators.
//!
//! Commutators are `[a, b] = a⁻¹ b⁻¹ a b`. A tuple is a witness when it
//! satisfies the relation and generates `G`; generation is read off the
//! Frattini quotient.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::frattini::{Echelon, FrattiniQuotient};
use super::{Elem, FiniteGroup, GroupError};
use crate::par::{self, Exec};

pub const DEFAULT_DEMUSKIN_ORDER: usize = 2187;
pub const DEFAULT_DEMUSKIN_NODES: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DemuskinExponent {
    /// The power term `x₁^(p^s)` with `s >= 1`.
    Power(u32),
    /// No relation at all.
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DemuskinQuery {
    pub n: usize,
    pub s: DemuskinExponent,
}

impl DemuskinQuery {
    /// The relation needs an even `n >= 4` and `s >= 1`; the free query
    /// accepts any `n >= 1`.
    pub fn new(n: usize, s: DemuskinExponent) -> Result<Self, GroupError> {
        match s {
            DemuskinExponent::Power(0) => Err(GroupError::InvalidQuery("s must be positive".into())),
            DemuskinExponent::Power(_) if n < 4 || n % 2 == 1 => Err(GroupError::InvalidQuery(format!(
                "n must be even and at least 4, got {n}"
            ))),
            DemuskinExponent::Free if n == 0 => Err(GroupError::InvalidQuery("n must be positive".into())),
            _ => Ok(DemuskinQuery { n, s }),
        }
    }

    pub fn relation(n: usize, s: u32) -> Result<Self, GroupError> {
        Self::new(n, DemuskinExponent::Power(s))
    }

    pub fn free(n: usize) -> Result<Self, GroupError> {
        Self::new(n, DemuskinExponent::Free)
    }
}

impl fmt::Display for DemuskinQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.s {
            DemuskinExponent::Power(s) => write!(f, "n={}, s={s}", self.n),
            DemuskinExponent::Free => write!(f, "n={}, free", self.n),
        }
    }
}

/// How a witness was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DemuskinRoute {
    /// `d(G) <= n/2`: even slots carry a basis, odd slots are trivial.
    /// Covers every metacyclic group once `n >= 4`.
    HalfRank,
    /// Abelian `G`: the relation reduces to `x₁^(p^s) = 1`.
    Abelian,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemuskinWitness {
    pub tuple: Vec<Elem>,
    pub route: DemuskinRoute,
}

#[derive(Clone, Copy, Debug)]
pub struct DemuskinOptions {
    pub max_order: usize,
    /// Node budget per choice of `x₁`.
    pub node_budget: u64,
    pub exec: Exec,
    /// Allow the half-rank and abelian closed forms.
    pub shortcuts: bool,
}

impl Default for DemuskinOptions {
    fn default() -> Self {
        DemuskinOptions {
            max_order: DEFAULT_DEMUSKIN_ORDER,
            node_budget: DEFAULT_DEMUSKIN_NODES,
            exec: Exec::default(),
            shortcuts: true,
        }
    }
}

/// `x₁^(p^s) [x₁, x₂] ⋯ [x_{n-1}, x_n]`, or the identity for the free query.
pub fn relator(g: &FiniteGroup, query: &DemuskinQuery, p: u64, tuple: &[Elem]) -> Elem {
    let DemuskinExponent::Power(s) = query.s else {
        return 0;
    };
    let mut acc = tuple[0];
    for _ in 0..s {
        acc = g.pow(acc, p as i64);
    }
    tuple
        .chunks(2)
        .fold(acc, |acc, pair| g.mul(acc, g.commutator(pair[0], pair[1])))
}

/// Replays a witness: right length, relation, generation.
pub fn check_witness(g: &FiniteGroup, query: &DemuskinQuery, tuple: &[Elem]) -> Result<bool, GroupError> {
    let (p, _) = g.require_p_group()?;
    if tuple.len() != query.n || tuple.iter().any(|&x| x as usize >= g.order()) {
        return Ok(false);
    }
    let fq = FrattiniQuotient::new(g)?;
    Ok(relator(g, query, p, tuple) == 0 && fq.generates(tuple))
}

pub fn demuskin_quotient_test(
    g: &FiniteGroup,
    query: &DemuskinQuery,
    p: u64,
) -> Result<Option<DemuskinWitness>, GroupError> {
    demuskin_search(g, query, p, &DemuskinOptions::default())
}

pub fn demuskin_search(
    g: &FiniteGroup,
    query: &DemuskinQuery,
    p: u64,
    opts: &DemuskinOptions,
) -> Result<Option<DemuskinWitness>, GroupError> {
    let (gp, _) = g.require_p_group()?;
    if !g.is_trivial() && gp != p {
        return Err(GroupError::NotPGroup { order: g.order() });
    }
    if g.order() > opts.max_order {
        return Err(GroupError::OrderBudgetExceeded { budget: opts.max_order });
    }
    let n = query.n;
    let fq = FrattiniQuotient::new(g)?;
    let d = fq.rank() as usize;
    let witness = |tuple: Vec<Elem>, route| {
        debug_assert!(relator(g, query, p, &tuple) == 0 && fq.generates(&tuple));
        Some(DemuskinWitness { tuple, route })
    };
    if let (true, DemuskinExponent::Power(s)) = (opts.shortcuts, query.s) {
        if 2 * d <= n {
            let mut tuple = vec![0; n];
            for (k, &b) in fq.basis().iter().enumerate() {
                tuple[2 * k + 1] = b;
            }
            return Ok(witness(tuple, DemuskinRoute::HalfRank));
        }
        if g.is_abelian() {
            return Ok(abelian_closed_form(g, &fq, n, p, s).and_then(|t| witness(t, DemuskinRoute::Abelian)));
        }
    }
    if d > n {
        return Ok(None);
    }
    let search = Search::new(g, query, p, &fq, opts.node_budget);
    let reps: Vec<Elem> = g.conjugacy_classes().iter().map(|c| c[0]).collect();
    let found = par::find_map_first(opts.exec, &reps, |&x1| match search.search_from(x1) {
        Ok(Some(t)) => Some(Ok(t)),
        Ok(None) => None,
        Err(e) => Some(Err(e)),
    });
    match found {
        Some(Ok(tuple)) => Ok(witness(tuple, DemuskinRoute::Search)),
        Some(Err(e)) => Err(e),
        None => Ok(None),
    }
}

/// For abelian `G` a generating `n`-tuple with `x₁^(p^s) = 1` exists iff
/// `d < n`, or `d = n` and some element outside `Φ(G)` has order dividing
/// `p^s` (elements outside `Φ(G)` have order at least the smallest
/// invariant factor).
fn abelian_closed_form(g: &FiniteGroup, fq: &FrattiniQuotient, n: usize, p: u64, s: u32) -> Option<Vec<Elem>> {
    let d = fq.rank() as usize;
    if d > n {
        return None;
    }
    let mut tuple = vec![0; n];
    if d < n {
        tuple[1..=d].copy_from_slice(fq.basis());
        return Some(tuple);
    }
    let bound = p.checked_pow(s).unwrap_or(u64::MAX);
    let x1 = g
        .elements()
        .filter(|&x| fq.coords(x).iter().any(|&c| c != 0))
        .filter(|&x| bound.is_multiple_of(g.element_order(x) as u64))
        .min_by_key(|&x| (g.element_order(x), x))?;
    tuple[0] = x1;
    let mut ech = Echelon::new(d, p);
    ech.insert(fq.coords(x1));
    let mut slot = 1;
    for &b in fq.basis() {
        if ech.insert(fq.coords(b)) {
            tuple[slot] = b;
            slot += 1;
        }
    }
    debug_assert_eq!(slot, n);
    Some(tuple)
}

/// Backtracking over `x₂, …, x_{n-2}`; the last pair is read from the
/// fibers of the commutator map.
struct Search<'a> {
    g: &'a FiniteGroup,
    query: &'a DemuskinQuery,
    p: u64,
    fq: &'a FrattiniQuotient,
    budget: u64,
    /// `fibers[c]` lists the pairs `(a, b)` with `[a, b] = c`.
    fibers: Vec<Vec<(Elem, Elem)>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a FiniteGroup, query: &'a DemuskinQuery, p: u64, fq: &'a FrattiniQuotient, budget: u64) -> Self {
        let fibers = match query.s {
            DemuskinExponent::Power(_) => {
                let mut fibers = vec![Vec::new(); g.order()];
                for a in g.elements() {
                    for b in g.elements() {
                        fibers[g.commutator(a, b) as usize].push((a, b));
                    }
                }
                fibers
            }
            DemuskinExponent::Free => Vec::new(),
        };
        Search {
            g,
            query,
            p,
            fq,
            budget,
            fibers,
        }
    }

    fn search_from(&self, x1: Elem) -> Result<Option<Vec<Elem>>, GroupError> {
        let mut nodes = 0u64;
        let mut tuple = vec![x1];
        let mut ech = Echelon::new(self.fq.rank() as usize, self.fq.p());
        ech.insert(self.fq.coords(x1));
        let start = match self.query.s {
            DemuskinExponent::Power(s) => (0..s).fold(x1, |acc, _| self.g.pow(acc, self.p as i64)),
            DemuskinExponent::Free => 0,
        };
        if self.extend(&mut tuple, &ech, start, &mut nodes)? {
            Ok(Some(tuple))
        } else {
            Ok(None)
        }
    }

    /// `acc` is the relator prefix over completed pairs, with `x₁`'s power
    /// term included; an odd-length tuple has an open pair.
    fn extend(&self, tuple: &mut Vec<Elem>, ech: &Echelon, acc: Elem, nodes: &mut u64) -> Result<bool, GroupError> {
        *nodes += 1;
        if *nodes > self.budget {
            return Err(GroupError::SearchBudgetExceeded { budget: self.budget });
        }
        let n = self.query.n;
        let d = self.fq.rank() as usize;
        let k = tuple.len();
        if ech.rank() + (n - k) < d {
            return Ok(false);
        }
        if k == n {
            return Ok(acc == 0 && ech.rank() == d);
        }
        let relation = matches!(self.query.s, DemuskinExponent::Power(_));
        if relation && k == n - 2 {
            // need [a, b] = acc⁻¹
            for &(a, b) in &self.fibers[self.g.inv(acc) as usize] {
                let mut e = ech.clone();
                e.insert(self.fq.coords(a));
                e.insert(self.fq.coords(b));
                if e.rank() == d {
                    tuple.extend([a, b]);
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        for x in self.g.elements() {
            let mut e = ech.clone();
            let grew = e.insert(self.fq.coords(x));
            // in the free case only rank matters, so skip non-growing choices
            // while rank is still short
            if !relation && !grew && e.rank() < d {
                continue;
            }
            let next_acc = if relation && k % 2 == 1 {
                self.g.mul(acc, self.g.commutator(tuple[k - 1], x))
            } else {
                acc
            };
            tuple.push(x);
            if self.extend(tuple, &e, next_acc, nodes)? {
                return Ok(true);
            }
            tuple.pop();
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::construct::{abelian, elementary_abelian, heisenberg, modular_p_cubed};
    use crate::groups::construct::{cyclic, direct_product};

    fn rel(n: usize, s: u32) -> DemuskinQuery {
        DemuskinQuery::relation(n, s).unwrap()
    }

    #[test]
    fn query_validation() {
        assert!(DemuskinQuery::relation(3, 1).is_err());
        assert!(DemuskinQuery::relation(2, 1).is_err());
        assert!(DemuskinQuery::relation(4, 0).is_err());
        assert!(DemuskinQuery::free(2).is_ok());
    }

    #[test]
    fn elementary_abelian_cases() {
        let g = elementary_abelian(3, 4);
        let w = demuskin_quotient_test(&g, &rel(4, 1), 3).unwrap().unwrap();
        assert!(check_witness(&g, &rel(4, 1), &w.tuple).unwrap());
        let g5 = elementary_abelian(3, 5);
        assert!(demuskin_quotient_test(&g5, &rel(4, 1), 3).unwrap().is_none());
    }

    #[test]
    fn metacyclic_short_circuit() {
        let g = modular_p_cubed(3);
        let w = demuskin_quotient_test(&g, &rel(4, 1), 3).unwrap().unwrap();
        assert_eq!(w.route, DemuskinRoute::HalfRank);
        assert_eq!((w.tuple[0], w.tuple[2]), (0, 0));
        assert!(check_witness(&g, &rel(4, 1), &w.tuple).unwrap());
    }

    #[test]
    fn abelian_closed_form_matches_search() {
        let opts = DemuskinOptions {
            shortcuts: false,
            ..DemuskinOptions::default()
        };
        for orders in [&[9u64, 3, 3, 3][..], &[9, 9, 3, 3], &[3, 3, 3, 3], &[9, 3, 3]] {
            let g = abelian(orders);
            for s in 1..=2 {
                let q = rel(4, s);
                let fast = demuskin_quotient_test(&g, &q, 3).unwrap();
                let slow = demuskin_search(&g, &q, 3, &opts).unwrap();
                assert_eq!(fast.is_some(), slow.is_some(), "{orders:?} s={s}");
            }
        }
    }

    #[test]
    fn search_on_nonabelian_rank_three() {
        let g = direct_product(&[heisenberg(3), cyclic(3)], 4096).unwrap();
        let opts = DemuskinOptions {
            shortcuts: false,
            ..DemuskinOptions::default()
        };
        let q = rel(4, 1);
        let w = demuskin_search(&g, &q, 3, &opts).unwrap().unwrap();
        assert!(check_witness(&g, &q, &w.tuple).unwrap());
        // sequential and parallel give the same witness
        let seq = demuskin_search(
            &g,
            &q,
            3,
            &DemuskinOptions {
                exec: Exec::Sequential,
                ..opts
            },
        )
        .unwrap();
        assert_eq!(seq.unwrap().tuple, w.tuple);
    }

    #[test]
    fn witnesses_extend_by_identity_pairs() {
        let g = direct_product(&[heisenberg(3), cyclic(3)], 4096).unwrap();
        let w = demuskin_quotient_test(&g, &rel(4, 1), 3).unwrap().unwrap();
        let mut t = w.tuple.clone();
        t.extend([0, 0]);
        assert!(check_witness(&g, &rel(6, 1), &t).unwrap());
    }

    #[test]
    fn free_query_matches_rank() {
        for g in [
            elementary_abelian(3, 2),
            elementary_abelian(3, 3),
            heisenberg(3),
            modular_p_cubed(3),
        ] {
            let d = crate::groups::d_of_group(&g).unwrap() as usize;
            for n in [1, 2, 4] {
                let w = demuskin_quotient_test(&g, &DemuskinQuery::free(n).unwrap(), 3).unwrap();
                assert_eq!(w.is_some(), d <= n);
            }
        }
    }

    #[test]
    fn budget_is_reported() {
        let g = direct_product(&[heisenberg(3), cyclic(3)], 4096).unwrap();
        let opts = DemuskinOptions {
            shortcuts: false,
            node_budget: 3,
            ..DemuskinOptions::default()
        };
        assert!(matches!(
            demuskin_search(&g, &rel(4, 1), 3, &opts),
            Err(GroupError::SearchBudgetExceeded { budget: 3 })
        ));
    }
}
