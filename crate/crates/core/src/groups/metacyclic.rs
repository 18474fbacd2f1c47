//! Metacyclic presentations `⟨x, y | xᵉ = 1, y^f = xⁱ, y x y⁻¹ = x^q⟩`:
//! construction in normal form `xᵃ yᵇ`, detection, and exhaustive
//! enumeration for a given group.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Elem, FiniteGroup, GroupError, GroupSource};
use crate::algebra::primes::gcd_u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MetacyclicPresentation {
    pub e: u64,
    pub f: u64,
    pub i: u64,
    pub q: u64,
}

impl MetacyclicPresentation {
    /// Reduces `i` and `q` mod `e` and checks consistency.
    pub fn new(e: u64, f: u64, i: i64, q: i64) -> Result<Self, GroupError> {
        if e == 0 || f == 0 {
            return Err(GroupError::InconsistentPresentation("e and f must be positive".into()));
        }
        let pres = MetacyclicPresentation {
            e,
            f,
            i: i.rem_euclid(e as i64) as u64,
            q: q.rem_euclid(e as i64) as u64,
        };
        pres.validate()?;
        Ok(pres)
    }

    /// `gcd(q, e) = 1`, `q^f ≡ 1` and `i (q - 1) ≡ 0 (mod e)`.
    pub fn validate(&self) -> Result<(), GroupError> {
        let (e, f, i, q) = (self.e, self.f, self.i % self.e.max(1), self.q % self.e.max(1));
        if e == 1 {
            return Ok(());
        }
        if gcd_u64(q, e) != 1 {
            return Err(GroupError::InconsistentPresentation(format!("gcd(q={q}, e={e}) ≠ 1")));
        }
        if pow_mod(q, f, e) != 1 {
            return Err(GroupError::InconsistentPresentation(format!(
                "q^f = {q}^{f} ≢ 1 mod {e}"
            )));
        }
        if !(i as u128 * ((q + e - 1) % e) as u128).is_multiple_of(e as u128) {
            return Err(GroupError::InconsistentPresentation(format!(
                "y^f = x^{i} is not fixed by conjugation (q = {q}, e = {e})"
            )));
        }
        Ok(())
    }

    pub fn order(&self) -> u64 {
        self.e * self.f
    }

    /// Representative under the dedup used by the enumeration: `f = 1`
    /// forces `y ∈ ⟨x⟩` and `e = 1` makes `x` trivial, so in both cases the
    /// pair `(i, q)` carries no information and is written `(0, 1)`.
    pub fn canonical(self) -> Self {
        if self.f == 1 || self.e == 1 {
            MetacyclicPresentation {
                e: self.e,
                f: self.f,
                i: 0,
                q: 1,
            }
        } else {
            self
        }
    }

    /// The group on normal forms `xᵃ yᵇ` (`0 <= a < e`, `0 <= b < f`), with
    /// element index `a + e b`.
    pub fn build(&self, budget: usize) -> Result<FiniteGroup, GroupError> {
        self.validate()?;
        let (e, f) = (self.e as usize, self.f as usize);
        let n = e
            .checked_mul(f)
            .filter(|&n| n <= budget)
            .ok_or(GroupError::OrderBudgetExceeded { budget })?;
        let (i, q) = (self.i as usize % e, self.q as usize % e);
        // q^b mod e
        let mut qpow = vec![1 % e; f];
        for b in 1..f {
            qpow[b] = qpow[b - 1] * q % e;
        }
        let mut table = Vec::with_capacity(n * n);
        for b1 in 0..f {
            for a1 in 0..e {
                for b2 in 0..f {
                    for a2 in 0..e {
                        // xᵃ¹ yᵇ¹ xᵃ² yᵇ² = x^(a1 + a2 q^b1) y^(b1 + b2)
                        let mut a = (a1 + a2 * qpow[b1]) % e;
                        let mut b = b1 + b2;
                        if b >= f {
                            b -= f;
                            a = (a + i) % e;
                        }
                        table.push((a + e * b) as Elem);
                    }
                }
            }
        }
        // rows were emitted in index order a1 + e*b1, columns a2 + e*b2
        FiniteGroup::from_table(n, table, GroupSource::MetacyclicParams { presentation: *self })
            .map_err(|err| GroupError::InconsistentPresentation(format!("normal form does not give a group: {err}")))
    }
}

impl fmt::Display for MetacyclicPresentation {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fmt, "{},{},{},{}", self.e, self.f, self.i, self.q)
    }
}

impl FromStr for MetacyclicPresentation {
    type Err = GroupError;

    /// `e,f,i,q`; `i` and `q` may be negative.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || GroupError::InvalidQuery(format!("expected e,f,i,q, got {s:?}"));
        if parts.len() != 4 {
            return Err(bad());
        }
        let e: u64 = parts[0].parse().map_err(|_| bad())?;
        let f: u64 = parts[1].parse().map_err(|_| bad())?;
        let i: i64 = parts[2].parse().map_err(|_| bad())?;
        let q: i64 = parts[3].parse().map_err(|_| bad())?;
        MetacyclicPresentation::new(e, f, i, q)
    }
}

fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    crate::algebra::primes::pow_mod(base % m, exp, m)
}

/// Exponents of `x` on `⟨x⟩`, `u32::MAX` elsewhere.
fn discrete_log_table(g: &FiniteGroup, x: Elem) -> Vec<u32> {
    let mut log = vec![u32::MAX; g.order()];
    let mut y = 0;
    for k in 0..g.element_order(x) {
        log[y as usize] = k;
        y = g.mul(y, x);
    }
    log
}

/// Cyclic subgroups, one generator each, by descending order then index.
fn cyclic_subgroup_generators(g: &FiniteGroup) -> Vec<Elem> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    let mut by_order: Vec<Elem> = g.elements().collect();
    by_order.sort_by_key(|&a| (std::cmp::Reverse(g.element_order(a)), a));
    for x in by_order {
        if seen[x as usize] {
            continue;
        }
        let ord = g.element_order(x) as u64;
        let mut y = 0;
        for k in 0..ord {
            if gcd_u64(k, ord) == 1 {
                seen[y as usize] = true;
            }
            y = g.mul(y, x);
        }
        out.push(x);
    }
    out
}

/// Order of `yN` in `G/N`, where `log` marks `N`.
fn coset_order(g: &FiniteGroup, y: Elem, log: &[u32]) -> u64 {
    let mut z = y;
    let mut k = 1;
    while log[z as usize] == u32::MAX {
        z = g.mul(z, y);
        k += 1;
    }
    k
}

fn normal_cyclic(g: &FiniteGroup, x: Elem) -> bool {
    let n = g.closure(&[x]);
    g.is_normal(&n)
}

fn read_presentation(g: &FiniteGroup, x: Elem, y: Elem, log: &[u32]) -> MetacyclicPresentation {
    let e = g.element_order(x) as u64;
    let f = g.order() as u64 / e;
    let i = log[g.pow(y, f as i64) as usize] as u64;
    let q = log[g.conjugate(y, x) as usize] as u64;
    MetacyclicPresentation { e, f, i, q }
}

/// A witness presentation if some cyclic normal `⟨x⟩` has cyclic quotient.
pub fn is_metacyclic(g: &FiniteGroup) -> Option<MetacyclicPresentation> {
    if g.is_trivial() {
        return Some(MetacyclicPresentation { e: 1, f: 1, i: 0, q: 1 });
    }
    for x in cyclic_subgroup_generators(g) {
        if !normal_cyclic(g, x) {
            continue;
        }
        let log = discrete_log_table(g, x);
        let f = g.order() as u64 / g.element_order(x) as u64;
        if let Some(y) = g.elements().find(|&y| coset_order(g, y, &log) == f) {
            let pres = read_presentation(g, x, y, &log);
            debug_assert!(pres.validate().is_ok());
            return Some(pres);
        }
    }
    None
}

/// All presentations of `G` up to `(e, f, i mod e, q mod e)`, sorted.
///
/// Every pair `(x, y)` with `⟨x⟩` normal of order `e` and `y⟨x⟩` generating
/// the cyclic quotient gives one; conversely every presentation of `G` of
/// this shape arises from such a pair.
pub fn enumerate_metacyclic_presentations(g: &FiniteGroup) -> Result<Vec<MetacyclicPresentation>, GroupError> {
    g.require_p_group()?;
    let mut out = BTreeSet::new();
    if g.is_trivial() {
        out.insert(MetacyclicPresentation { e: 1, f: 1, i: 0, q: 1 });
        return Ok(out.into_iter().collect());
    }
    for x0 in cyclic_subgroup_generators(g) {
        if !normal_cyclic(g, x0) {
            continue;
        }
        let e = g.element_order(x0) as u64;
        let f = g.order() as u64 / e;
        let log0 = discrete_log_table(g, x0);
        let ys: Vec<Elem> = g.elements().filter(|&y| coset_order(g, y, &log0) == f).collect();
        if ys.is_empty() {
            continue;
        }
        // each generator x = x0^k of the same subgroup
        for k in (1..e.max(2)).filter(|&k| gcd_u64(k, e) == 1) {
            let x = g.pow(x0, k as i64);
            let log = discrete_log_table(g, x);
            for &y in &ys {
                out.insert(read_presentation(g, x, y, &log).canonical());
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::construct::{cyclic, dihedral, elementary_abelian};
    use crate::groups::iso::is_isomorphic;

    fn pres(e: u64, f: u64, i: i64, q: i64) -> MetacyclicPresentation {
        MetacyclicPresentation::new(e, f, i, q).unwrap()
    }

    #[test]
    fn named_groups_from_parameters() {
        let d8 = pres(4, 2, 0, 3).build(4096).unwrap();
        assert!(is_isomorphic(&d8, &dihedral(4)));
        let q16 = pres(8, 2, 4, 7).build(4096).unwrap();
        assert_eq!(q16.order(), 16);
        // Q16 has a single involution
        assert_eq!(q16.order_profile()[&2], 1);
        let sd16 = pres(8, 2, 0, 3).build(4096).unwrap();
        assert_eq!(sd16.order_profile()[&2], 5);
        // (4,2,2,3) has one involution too: it is Q8, not D8
        let q8 = pres(4, 2, 2, 3).build(4096).unwrap();
        assert_eq!(q8.order_profile()[&2], 1);
        assert!(!is_isomorphic(&q8, &d8));
    }

    #[test]
    fn inconsistent_parameters_rejected() {
        assert!(matches!(
            MetacyclicPresentation::new(4, 2, 1, 3),
            Err(GroupError::InconsistentPresentation(_))
        ));
        assert!(MetacyclicPresentation::new(9, 3, 0, 2).is_err());
        assert!(MetacyclicPresentation::new(6, 2, 0, 3).is_err());
        assert!(matches!(
            pres(64, 64, 0, 1).build(100),
            Err(GroupError::OrderBudgetExceeded { budget: 100 })
        ));
    }

    #[test]
    fn detection() {
        let d8 = dihedral(4);
        let w = is_metacyclic(&d8).unwrap();
        assert_eq!((w.e, w.f), (4, 2));
        assert!(is_metacyclic(&elementary_abelian(3, 3)).is_none());
        let c6 = is_metacyclic(&cyclic(6)).unwrap();
        assert_eq!((c6.e, c6.f), (6, 1));
    }

    #[test]
    fn enumeration_round_trips() {
        let d8 = dihedral(4);
        let all = enumerate_metacyclic_presentations(&d8).unwrap();
        assert!(all.contains(&pres(4, 2, 0, 3)));
        for p in &all {
            assert!(is_isomorphic(&p.build(4096).unwrap(), &d8), "{p}");
        }
        let c3 = enumerate_metacyclic_presentations(&cyclic(3)).unwrap();
        assert_eq!(c3, vec![pres(1, 3, 0, 0).canonical(), pres(3, 1, 0, 1)]);
        let q16 = pres(8, 2, 4, 7).build(4096).unwrap();
        let all = enumerate_metacyclic_presentations(&q16).unwrap();
        assert!(all.contains(&pres(8, 2, 4, 7)));
        for p in &all {
            assert!(is_isomorphic(&p.build(4096).unwrap(), &q16), "{p}");
        }
    }

    #[test]
    fn parse_and_display() {
        let p: MetacyclicPresentation = "8,2,4,-1".parse().unwrap();
        assert_eq!(p, pres(8, 2, 4, 7));
        assert_eq!(p.to_string(), "8,2,4,7");
        assert!("8,2,4".parse::<MetacyclicPresentation>().is_err());
    }
}
