//! Group constructors: permutation closure, direct products, cyclic
//! extensions and a few named families.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::metacyclic::MetacyclicPresentation;
use super::{Elem, FiniteGroup, GroupError, GroupSource, DEFAULT_ORDER_BUDGET};

/// A permutation of `{0, …, m-1}`; parsed and printed in 1-based cycle
/// notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            match seen.get_mut(x as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(GroupError::InvalidPermutation(format!("{images:?} is not a bijection"))),
            }
        }
        Ok(Permutation(images))
    }

    /// Parses cycles such as `(1 2 3)(4 5)` on `degree` points; `degree` 0
    /// means "largest point mentioned".
    pub fn parse(s: &str, degree: usize) -> Result<Self, GroupError> {
        let bad = |why: &str| GroupError::InvalidPermutation(format!("{s:?}: {why}"));
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let points = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<u32>() {
                    Ok(0) | Err(_) => Err(bad("points are positive integers")),
                    Ok(v) => Ok(v - 1),
                })
                .collect::<Result<Vec<_>, _>>()?;
            cycles.push(points);
            rest = body[close + 1..].trim_start();
        }
        let max_point = cycles.iter().flatten().map(|&x| x as usize + 1).max().unwrap_or(0);
        let degree = if degree == 0 { max_point } else { degree };
        if max_point > degree {
            return Err(bad("point exceeds the degree"));
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in &cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if std::mem::replace(&mut touched[a as usize], true) {
                    return Err(bad("cycles are not disjoint"));
                }
                images[a as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    fn padded(&self, degree: usize) -> Permutation {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..degree as u32);
        Permutation(v)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Permutation::parse(s, 0)
    }
}

pub fn from_metacyclic(pres: &MetacyclicPresentation, budget: usize) -> Result<FiniteGroup, GroupError> {
    pres.build(budget)
}

/// Closure of the generated permutation group, breadth first from the
/// identity. Each element is recorded as (parent, generator), so the table
/// is filled with lookups only.
pub fn from_permutations(gens: &[Permutation], budget: usize) -> Result<FiniteGroup, GroupError> {
    let degree = gens.iter().map(Permutation::degree).max().unwrap_or(0);
    let gens: Vec<Permutation> = gens.iter().map(|g| g.padded(degree)).collect();
    let mut index: HashMap<Permutation, Elem> = HashMap::new();
    let mut elements = vec![Permutation::identity(degree)];
    index.insert(elements[0].clone(), 0);
    // right[x][s] = index of x·gens[s]
    let mut right: Vec<Vec<Elem>> = Vec::new();
    let mut next = 0;
    while next < elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for g in &gens {
            let y = elements[next].then(g);
            let idx = match index.get(&y) {
                Some(&i) => i,
                None => {
                    if elements.len() >= budget {
                        return Err(GroupError::OrderBudgetExceeded { budget });
                    }
                    let i = elements.len() as Elem;
                    index.insert(y.clone(), i);
                    elements.push(y);
                    i
                }
            };
            row.push(idx);
        }
        right.push(row);
        next += 1;
    }
    let n = elements.len();
    // word for each element: parent and last generator in the BFS tree
    let mut parent = vec![(0 as Elem, usize::MAX); n];
    let mut reached = vec![false; n];
    reached[0] = true;
    for x in 0..n {
        for (s, &y) in right[x].iter().enumerate() {
            if !reached[y as usize] {
                reached[y as usize] = true;
                parent[y as usize] = (x as Elem, s);
            }
        }
    }
    // a·b = (a·parent(b))·s, filled in BFS order of b
    let mut table = vec![0 as Elem; n * n];
    for a in 0..n {
        table[a * n] = a as Elem;
    }
    for b in 1..n {
        let (pb, s) = parent[b];
        for a in 0..n {
            let ap = table[a * n + pb as usize];
            table[a * n + b] = right[ap as usize][s];
        }
    }
    let source = GroupSource::PermutationGenerators {
        degree,
        generators: gens.iter().map(ToString::to_string).collect(),
    };
    FiniteGroup::from_table(n, table, source)
}

pub fn from_permutation_strings(gens: &[&str], degree: usize) -> Result<FiniteGroup, GroupError> {
    let perms = gens
        .iter()
        .map(|s| Permutation::parse(s, degree))
        .collect::<Result<Vec<_>, _>>()?;
    from_permutations(&perms, DEFAULT_ORDER_BUDGET)
}

/// `G₁ × … × G_k` with mixed-radix indices (last factor fastest).
pub fn direct_product(factors: &[FiniteGroup], budget: usize) -> Result<FiniteGroup, GroupError> {
    let n = factors
        .iter()
        .try_fold(1usize, |acc, g| acc.checked_mul(g.order()))
        .filter(|&n| n <= budget)
        .ok_or(GroupError::OrderBudgetExceeded { budget })?;
    let digits = |mut x: usize| -> Vec<usize> {
        let mut out = vec![0; factors.len()];
        for (k, g) in factors.iter().enumerate().rev() {
            out[k] = x % g.order();
            x /= g.order();
        }
        out
    };
    let all: Vec<Vec<usize>> = (0..n).map(digits).collect();
    let mut table = Vec::with_capacity(n * n);
    for a in &all {
        for b in &all {
            let mut idx = 0;
            for (k, g) in factors.iter().enumerate() {
                idx = idx * g.order() + g.mul(a[k] as Elem, b[k] as Elem) as usize;
            }
            table.push(idx as Elem);
        }
    }
    let source = GroupSource::DirectProduct {
        factors: factors.iter().map(|g| g.source().clone()).collect(),
    };
    FiniteGroup::from_table(n, table, source)
}

/// `G = N⟨t⟩` with `t n t⁻¹ = α(n)` and `t^m = c`, where `α` is given by
/// its values on every element of `N`. Element `(n, j)` is `n tʲ`, index
/// `n + |N| j`. Requires `α(c) = c` and `α^m` = conjugation by `c`.
pub fn cyclic_extension(
    n: &FiniteGroup,
    alpha: &[Elem],
    m: usize,
    c: Elem,
    budget: usize,
) -> Result<FiniteGroup, GroupError> {
    let k = n.order();
    let total = k
        .checked_mul(m)
        .filter(|&t| t <= budget)
        .ok_or(GroupError::OrderBudgetExceeded { budget })?;
    if alpha.len() != k || m == 0 {
        return Err(GroupError::InvalidQuery(
            "automorphism must list an image for every element".into(),
        ));
    }
    // alpha^j as tables
    let mut powers: Vec<Vec<Elem>> = vec![n.elements().collect()];
    for j in 1..m {
        let prev = &powers[j - 1];
        powers.push(prev.iter().map(|&x| alpha[x as usize]).collect());
    }
    let mut table = Vec::with_capacity(total * total);
    for j1 in 0..m {
        for n1 in 0..k as Elem {
            for j2 in 0..m {
                for n2 in 0..k as Elem {
                    // n1 t^j1 n2 t^j2 = n1 α^j1(n2) t^(j1+j2)
                    let mut x = n.mul(n1, powers[j1][n2 as usize]);
                    let mut j = j1 + j2;
                    if j >= m {
                        j -= m;
                        x = n.mul(x, c);
                    }
                    table.push(x + (k * j) as Elem);
                }
            }
        }
    }
    FiniteGroup::from_table(
        total,
        table,
        GroupSource::Derived {
            description: format!("cyclic extension of order {total}"),
        },
    )
}

pub fn cyclic(n: u64) -> FiniteGroup {
    MetacyclicPresentation::new(n, 1, 0, 1)
        .and_then(|p| p.build(usize::MAX))
        .expect("cyclic groups are metacyclic")
}

/// Direct product of cyclic groups of the given orders.
pub fn abelian(orders: &[u64]) -> FiniteGroup {
    let factors: Vec<FiniteGroup> = orders.iter().map(|&n| cyclic(n)).collect();
    direct_product(&factors, usize::MAX).expect("valid product")
}

pub fn elementary_abelian(p: u64, rank: usize) -> FiniteGroup {
    abelian(&vec![p; rank])
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: u64) -> FiniteGroup {
    MetacyclicPresentation::new(n, 2, 0, -1)
        .and_then(|p| p.build(usize::MAX))
        .expect("dihedral parameters")
}

pub fn quaternion16() -> FiniteGroup {
    MetacyclicPresentation::new(8, 2, 4, 7)
        .and_then(|p| p.build(usize::MAX))
        .expect("Q16 parameters")
}

pub fn semidihedral16() -> FiniteGroup {
    MetacyclicPresentation::new(8, 2, 0, 3)
        .and_then(|p| p.build(usize::MAX))
        .expect("SD16 parameters")
}

/// The nonabelian group `ℤ/p² ⋊ ℤ/p` with `y x y⁻¹ = x^(1+p)`.
pub fn modular_p_cubed(p: u64) -> FiniteGroup {
    MetacyclicPresentation::new(p * p, p, 0, (1 + p) as i64)
        .and_then(|pres| pres.build(usize::MAX))
        .expect("metacyclic parameters")
}

/// Unitriangular 3×3 matrices over `F_p`, as a cyclic extension of
/// `ℤ/p × ℤ/p`.
pub fn heisenberg(p: u64) -> FiniteGroup {
    // N = ⟨a⟩ × ⟨z⟩, index u p + v standing for aᵘ zᵛ; t a t⁻¹ = a z, t z t⁻¹ = z
    let n = abelian(&[p, p]);
    let pu = p as usize;
    let alpha: Vec<Elem> = (0..pu * pu)
        .map(|idx| {
            let (u, v) = (idx / pu, idx % pu);
            (u * pu + (v + u) % pu) as Elem
        })
        .collect();
    cyclic_extension(&n, &alpha, pu, 0, usize::MAX).expect("Heisenberg extension")
}

pub fn symmetric(n: usize) -> FiniteGroup {
    if n <= 1 {
        return FiniteGroup::trivial();
    }
    let cycle = Permutation::from_images((0..n as u32).map(|x| (x + 1) % n as u32).collect()).expect("cycle");
    let mut swap: Vec<u32> = (0..n as u32).collect();
    swap.swap(0, 1);
    from_permutations(&[cycle, Permutation(swap)], usize::MAX).expect("symmetric group")
}
