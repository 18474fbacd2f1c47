//! Frattini subgroup `Gᵖ[G, G]` of a p-group and coordinates on the
//! quotient `G/Φ(G) ≅ F_p^d`.

use super::{Elem, FiniteGroup, GroupError, Subgroup};

/// `Φ(G)` as the normal closure of `sᵖ` and `[s, t]` over a generating set:
/// modulo `[G, G]` the group is abelian, so the p-th powers of generators
/// already generate `Gᵖ[G, G] / [G, G]`.
pub fn frattini_subgroup(g: &FiniteGroup) -> Result<Subgroup, GroupError> {
    let (p, _) = g.require_p_group()?;
    if g.is_trivial() {
        return Ok(g.closure(&[]));
    }
    let gens = g.generators();
    let mut seeds: Vec<Elem> = gens.iter().map(|&s| g.pow(s, p as i64)).collect();
    for (k, &a) in gens.iter().enumerate() {
        for &b in &gens[k + 1..] {
            seeds.push(g.commutator(a, b));
        }
    }
    Ok(g.normal_closure(&seeds))
}

/// Minimal number of generators of a p-group.
pub fn d_of_group(g: &FiniteGroup) -> Result<u32, GroupError> {
    Ok(FrattiniQuotient::new(g)?.rank())
}

/// Coordinates of every element in `G/Φ(G)` with respect to a basis of
/// coset representatives.
#[derive(Clone, Debug)]
pub struct FrattiniQuotient {
    p: u64,
    d: usize,
    basis: Vec<Elem>,
    coords: Vec<u8>,
}

impl FrattiniQuotient {
    pub fn new(g: &FiniteGroup) -> Result<Self, GroupError> {
        let (p, _) = g.require_p_group()?;
        let phi = frattini_subgroup(g)?;
        let mut basis = Vec::new();
        let mut span = phi.clone();
        for x in g.elements() {
            if span.order() == g.order() {
                break;
            }
            if !span.contains(x) {
                basis.push(x);
                let gens: Vec<Elem> = phi.generators().iter().chain(&basis).copied().collect();
                span = g.closure(&gens);
            }
        }
        let d = basis.len();
        debug_assert_eq!(phi.order() * (p as usize).pow(d as u32), g.order());
        let mut coords = vec![0u8; g.order() * d];
        let mut digits = vec![0u64; d];
        loop {
            let rep = basis
                .iter()
                .zip(&digits)
                .fold(0, |acc, (&b, &c)| g.mul(acc, g.pow(b, c as i64)));
            for &f in phi.elements() {
                let x = g.mul(rep, f) as usize;
                for (k, &c) in digits.iter().enumerate() {
                    coords[x * d + k] = c as u8;
                }
            }
            // next digit vector in base p
            let mut k = 0;
            while k < d {
                digits[k] += 1;
                if digits[k] < p {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == d {
                break;
            }
        }
        Ok(FrattiniQuotient {
            p: p.max(2),
            d,
            basis,
            coords,
        })
    }

    pub fn rank(&self) -> u32 {
        self.d as u32
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Coset representatives whose images form the standard basis.
    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn coords(&self, x: Elem) -> &[u8] {
        &self.coords[x as usize * self.d..(x as usize + 1) * self.d]
    }

    /// Dimension of the span of the images of `xs`.
    pub fn rank_of(&self, xs: &[Elem]) -> usize {
        let mut echelon = Echelon::new(self.d, self.p);
        for &x in xs {
            echelon.insert(self.coords(x));
        }
        echelon.rank()
    }

    pub fn generates(&self, xs: &[Elem]) -> bool {
        self.rank_of(xs) == self.d
    }
}

/// Row echelon form over `F_p`, built one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u64,
    /// `rows[k]` has its pivot at `pivots[k]` with value 1.
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    dim: usize,
}

impl Echelon {
    pub fn new(dim: usize, p: u64) -> Self {
        Echelon {
            p,
            rows: Vec::new(),
            pivots: Vec::new(),
            dim,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Returns whether the vector enlarged the span.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        let p = self.p;
        let mut v: Vec<u64> = v.iter().map(|&c| c as u64).collect();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = (*a + (p - c) * b) % p;
                }
            }
        }
        let Some(piv) = (0..self.dim).find(|&k| v[k] != 0) else {
            return false;
        };
        let inv = crate::algebra::primes::inv_mod(v[piv], p).expect("prime modulus");
        for a in v.iter_mut() {
            *a = *a * inv % p;
        }
        self.rows.push(v);
        self.pivots.push(piv);
        true
    }
}
