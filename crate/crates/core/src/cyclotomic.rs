//! Subfields of prime-power cyclotomic fields via Gaussian periods, and the
//! fixed-field test `K ∩ ℚ(ζ_e) ⊆ Fix(σ_{e,q})`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::primes::{euler_phi, gcd_u64, mul_mod, pow_mod, prime_power};
use crate::algebra::IntPoly;
use crate::number_field::{FieldElement, NumberField};

const MAX_PERTURBATION: i64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("conductor {0} is not a prime power")]
    CompositeConductor(u64),
    #[error("{q} is not a unit modulo {e}")]
    NotCoprime { e: u64, q: i64 },
    #[error("residues do not form a subgroup of (Z/{0})^x")]
    NotSubgroup(u64),
    #[error("no squarefree period polynomial found for conductor {0}")]
    DegenerateGenerator(u64),
}

/// `σ_{e,q}: ζ_e ↦ ζ_e^q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicAutomorphism {
    e: u64,
    q: u64,
}

impl CyclotomicAutomorphism {
    pub fn new(e: u64, q: i64) -> Result<Self, CyclotomicError> {
        let r = q.rem_euclid(e as i64) as u64;
        if gcd_u64(r, e) != 1 && e > 1 {
            return Err(CyclotomicError::NotCoprime { e, q });
        }
        Ok(CyclotomicAutomorphism {
            e,
            q: if e == 1 { 0 } else { r },
        })
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// The subfield of `ℚ(ζ_e)` fixed by `subgroup`, with the minimal
/// polynomial of a period generating it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfieldDescriptor {
    pub e: u64,
    pub subgroup: Vec<u64>,
    pub min_poly: IntPoly,
}

impl SubfieldDescriptor {
    pub fn degree(&self) -> usize {
        self.min_poly.deg()
    }
}

/// Units modulo `e`, ascending.
pub fn units(e: u64) -> Vec<u64> {
    if e <= 2 {
        return vec![1];
    }
    (1..e).filter(|&a| gcd_u64(a, e) == 1).collect()
}

/// `⟨gens⟩ ≤ (ℤ/e)^×`, ascending.
pub fn generated_subgroup(gens: &[u64], e: u64) -> Vec<u64> {
    if e <= 2 {
        return vec![1];
    }
    let mut set = BTreeSet::from([1u64]);
    let mut frontier = vec![1u64];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = mul_mod(x, g % e, e);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

/// Every subgroup of `(ℤ/e)^×` for a prime power `e`, as joins of at most
/// two cyclic subgroups; sorted by order, then lexicographically.
pub fn all_subgroups(e: u64) -> Vec<Vec<u64>> {
    let cyclic: BTreeSet<Vec<u64>> = units(e).into_iter().map(|a| generated_subgroup(&[a], e)).collect();
    let cyclic: Vec<Vec<u64>> = cyclic.into_iter().collect();
    let mut all: BTreeSet<Vec<u64>> = cyclic.iter().cloned().collect();
    for (i, a) in cyclic.iter().enumerate() {
        for b in &cyclic[i + 1..] {
            let gens: Vec<u64> = a.iter().chain(b.iter()).copied().filter(|&x| x != 1).collect();
            all.insert(generated_subgroup(&gens, e));
        }
    }
    let mut out: Vec<Vec<u64>> = all.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn check_conductor(e: u64) -> Result<(), CyclotomicError> {
    if e > 1 && prime_power(e).is_none() {
        return Err(CyclotomicError::CompositeConductor(e));
    }
    Ok(())
}

fn is_subgroup(h: &[u64], e: u64) -> bool {
    let set: BTreeSet<u64> = h.iter().map(|x| x % e).collect();
    set.contains(&(1 % e))
        && set.iter().all(|&a| gcd_u64(a, e) == 1 || e <= 2)
        && set
            .iter()
            .all(|&a| set.iter().all(|&b| set.contains(&mul_mod(a, b, e))))
}

/// Arithmetic in `ℤ[x]/(Φ_e)`.
struct CycloRing {
    e: u64,
    phi: IntPoly,
}

impl CycloRing {
    fn new(e: u64) -> Self {
        CycloRing {
            e,
            phi: IntPoly::cyclotomic(e),
        }
    }

    fn reduce(&self, a: &IntPoly) -> IntPoly {
        a.divmod(&self.phi).expect("monic").1
    }

    fn zeta_pow(&self, k: u64) -> IntPoly {
        let mut c = vec![BigInt::zero(); (k % self.e) as usize + 1];
        c[(k % self.e) as usize] = BigInt::one();
        self.reduce(&IntPoly::new(c))
    }

    fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        self.reduce(&a.mul(b))
    }
}

/// Minimal polynomial of the Gaussian period `sum_{h in H} ζ_e^h`
/// (perturbed to `sum_h ζ^h + t ζ^{2h}` when periods collide).
pub fn gaussian_period_min_poly(e: u64, h: &[u64]) -> Result<IntPoly, CyclotomicError> {
    check_conductor(e)?;
    if e <= 2 {
        return Ok(IntPoly::from_i64(&[-1, 1]));
    }
    if !is_subgroup(h, e) {
        return Err(CyclotomicError::NotSubgroup(e));
    }
    let hset: BTreeSet<u64> = h.iter().map(|x| x % e).collect();
    let ring = CycloRing::new(e);
    // coset representatives: smallest element of each coset
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for c in units(e) {
        if seen.contains(&c) {
            continue;
        }
        reps.push(c);
        seen.extend(hset.iter().map(|&x| mul_mod(c, x, e)));
    }
    for t in 0..=MAX_PERTURBATION {
        let periods: Vec<IntPoly> = reps
            .iter()
            .map(|&c| {
                hset.iter().fold(IntPoly::zero(), |acc, &x| {
                    let k = mul_mod(c, x, e);
                    let term = ring.zeta_pow(k);
                    let term = if t == 0 {
                        term
                    } else {
                        term.add(&ring.zeta_pow(mul_mod(2, k, e)).scale(&BigInt::from(t)))
                    };
                    acc.add(&term)
                })
            })
            .collect();
        let distinct: BTreeSet<Vec<BigInt>> = periods.iter().map(|p| p.coeffs().to_vec()).collect();
        if distinct.len() != periods.len() {
            continue;
        }
        // prod (X - eta_c) with coefficients in ℤ[x]/(Φ_e)
        let mut prod: Vec<IntPoly> = vec![IntPoly::one()];
        for eta in &periods {
            let mut next = vec![IntPoly::zero(); prod.len() + 1];
            for (i, c) in prod.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c);
                next[i] = next[i].sub(&ring.mul(c, eta));
            }
            prod = next;
        }
        let coeffs = prod
            .iter()
            .map(|c| match c.deg() {
                0 => Some(c.coeff(0)),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .expect("period polynomial is rational");
        return Ok(IntPoly::new(coeffs));
    }
    Err(CyclotomicError::DegenerateGenerator(e))
}

/// The fixed field of `⟨q⟩`.
pub fn fixed_field_subgroup(sigma: CyclotomicAutomorphism) -> Result<SubfieldDescriptor, CyclotomicError> {
    let e = sigma.e();
    let subgroup = generated_subgroup(&[sigma.q()], e);
    let min_poly = gaussian_period_min_poly(e, &subgroup)?;
    Ok(SubfieldDescriptor { e, subgroup, min_poly })
}

/// Subfields `F ⊆ ℚ(ζ_e)` minimal with `F ⊄ Fix(σ_{e,q})`: fixed fields of
/// the maximal subgroups not containing `q`.
pub fn minimal_violators(e: u64, q: u64) -> Result<Vec<SubfieldDescriptor>, CyclotomicError> {
    check_conductor(e)?;
    if e <= 2 {
        return Ok(Vec::new());
    }
    let subgroups = all_subgroups(e);
    let q = q % e;
    let avoiding: Vec<&Vec<u64>> = subgroups.iter().filter(|h| h.binary_search(&q).is_err()).collect();
    let maximal: Vec<&Vec<u64>> = avoiding
        .iter()
        .filter(|h| {
            !avoiding
                .iter()
                .any(|g| g.len() > h.len() && h.iter().all(|x| g.binary_search(x).is_ok()))
        })
        .copied()
        .collect();
    maximal
        .into_iter()
        .map(|h| {
            Ok(SubfieldDescriptor {
                e,
                subgroup: h.clone(),
                min_poly: gaussian_period_min_poly(e, h)?,
            })
        })
        .collect()
}

/// Outcome of the fixed-field test, with the violating subfield and its
/// root in K when the condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiedahlCheck {
    pub e: u64,
    pub q: u64,
    pub holds: bool,
    pub violator: Option<SubfieldDescriptor>,
    pub root: Option<FieldElement>,
}

pub fn liedahl_check(k: &NumberField, e: u64, q: i64) -> Result<LiedahlCheck, CyclotomicError> {
    check_conductor(e)?;
    let sigma = CyclotomicAutomorphism::new(e, q)?;
    let n = k.degree() as u64;
    let mut out = LiedahlCheck {
        e,
        q: sigma.q(),
        holds: true,
        violator: None,
        root: None,
    };
    if k.is_rationals() {
        return Ok(out);
    }
    for f in minimal_violators(e, sigma.q())? {
        // a subfield of K has degree dividing [K:ℚ]
        if !n.is_multiple_of(f.degree() as u64) {
            continue;
        }
        if let Some(root) = k.find_root(&f.min_poly) {
            out.holds = false;
            out.violator = Some(f);
            out.root = Some(root);
            break;
        }
    }
    Ok(out)
}

/// `K ∩ ℚ(ζ_e) ⊆ Fix(σ_{e,q})`.
pub fn liedahl_condition(k: &NumberField, e: u64, q: i64) -> Result<bool, CyclotomicError> {
    Ok(liedahl_check(k, e, q)?.holds)
}

/// Minimal polynomial of a generator of the degree-`p` subfield of
/// `ℚ(ζ_{p^2})`.
pub fn alpha_min_poly(p: u64) -> IntPoly {
    let e = p * p;
    let h: Vec<u64> = units(e).into_iter().filter(|&a| pow_mod(a, p - 1, e) == 1).collect();
    debug_assert_eq!(euler_phi(e) / h.len() as u64, p);
    gaussian_period_min_poly(e, &h).expect("prime-square conductor")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn period_examples() {
        assert_eq!(gaussian_period_min_poly(9, &[1, 8]).unwrap(), p(&[1, -3, 0, 1]));
        assert_eq!(gaussian_period_min_poly(8, &[1, 7]).unwrap(), p(&[-2, 0, 1]));
        assert_eq!(gaussian_period_min_poly(4, &[1]).unwrap(), p(&[1, 0, 1]));
        // {1,5} mod 8: ζ + ζ^5 = 0, degenerate; perturbed period generates Q(i)
        let g = gaussian_period_min_poly(8, &[1, 5]).unwrap();
        assert_eq!(g.deg(), 2);
        assert!(NumberField::from_coeffs(&[1, 0, 1]).unwrap().has_root_in_field(&g));
        assert_eq!(
            gaussian_period_min_poly(12, &[1]).unwrap_err(),
            CyclotomicError::CompositeConductor(12)
        );
        assert_eq!(
            gaussian_period_min_poly(9, &[1, 2]).unwrap_err(),
            CyclotomicError::NotSubgroup(9)
        );
    }

    #[test]
    fn fixed_fields() {
        let d = fixed_field_subgroup(CyclotomicAutomorphism::new(8, 7).unwrap()).unwrap();
        assert_eq!(d.subgroup, vec![1, 7]);
        assert_eq!(d.min_poly, p(&[-2, 0, 1]));
        let d = fixed_field_subgroup(CyclotomicAutomorphism::new(4, 1).unwrap()).unwrap();
        assert_eq!(d.subgroup, vec![1]);
        assert_eq!(d.min_poly, p(&[1, 0, 1]));
        let d = fixed_field_subgroup(CyclotomicAutomorphism::new(9, 8).unwrap()).unwrap();
        assert_eq!(d.subgroup, vec![1, 8]);
        assert_eq!(d.degree(), 3);
    }

    #[test]
    fn subgroup_lattices() {
        // (Z/16)^x = C2 x C4 has 8 subgroups; (Z/27)^x = C18 has 6
        assert_eq!(all_subgroups(16).len(), 8);
        assert_eq!(all_subgroups(27).len(), 6);
        assert_eq!(all_subgroups(8).len(), 5);
    }

    #[test]
    fn liedahl_examples() {
        let q = NumberField::rationals();
        assert!(liedahl_condition(&q, 8, 3).unwrap());
        let gauss = NumberField::from_coeffs(&[1, 0, 1]).unwrap();
        let chk = liedahl_check(&gauss, 8, 7).unwrap();
        assert!(!chk.holds);
        assert_eq!(chk.violator.unwrap().min_poly.deg(), 2);
        let r5 = NumberField::from_coeffs(&[-5, 0, 1]).unwrap();
        for q in [1, 3, 5, 7] {
            assert!(liedahl_condition(&r5, 8, q).unwrap());
        }
        assert!(liedahl_condition(&gauss, 8, 1).unwrap());
        assert_eq!(
            liedahl_condition(&gauss, 8, 2).unwrap_err(),
            CyclotomicError::NotCoprime { e: 8, q: 2 }
        );
    }

    #[test]
    fn alpha_polys() {
        assert_eq!(alpha_min_poly(3), p(&[1, -3, 0, 1]));
        assert_eq!(alpha_min_poly(5).deg(), 5);
        assert_eq!(alpha_min_poly(7).deg(), 7);
    }
}
