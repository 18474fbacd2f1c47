//! Local data at a rational prime: place profiles, roots of unity in the
//! completions of a Galois field, and the zeta-freeness clauses used by the
//! wild branches of the engine.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::primes::euler_phi;
use crate::algebra::{factor_over_q, IntPoly};
use crate::number_field::trager::squarefree_norm;
use crate::number_field::{NumberField, NumberFieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("the field is not Galois over Q")]
    NotGaloisField,
    #[error("local root-of-unity analysis needs an odd prime, got {0}")]
    EvenPrime(u64),
    #[error("no squarefree norm found while building the compositum")]
    CompositumFailed,
    #[error(transparent)]
    Field(#[from] NumberFieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalPlaceProfile {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub local_degree: u32,
}

/// Which test settled a local root-of-unity question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum UnityMethod {
    Unramified,
    DegreeObstruction,
    CompositumTest,
    GlobalRoot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalUnity {
    pub present: bool,
    pub method: UnityMethod,
}

/// `s_max` is the largest `s` with `ζ_{p^s}` in the completion (0 if none).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalUnityReport {
    pub p: u64,
    pub s_max: u32,
    pub method: UnityMethod,
    pub ramification: u32,
    pub local_degree: u32,
}

pub fn local_degree_profile(k: &NumberField, p: u64) -> Result<Vec<LocalPlaceProfile>, NumberFieldError> {
    Ok(k.decompose_prime(p)?
        .pairs
        .into_iter()
        .map(|(e, f)| LocalPlaceProfile {
            p,
            e,
            f,
            local_degree: e * f,
        })
        .collect())
}

/// `ζ_{p^s} ∈ K_𝔭` for Galois `K` and odd `p` (all places above `p` are
/// conjugate, so the answer does not depend on `𝔭`).
pub fn zeta_in_completion(k: &NumberField, p: u64, s: u32) -> Result<LocalUnity, LocalError> {
    if p == 2 {
        return Err(LocalError::EvenPrime(p));
    }
    if !k.is_galois() {
        return Err(LocalError::NotGaloisField);
    }
    assert!(s >= 1, "s must be positive");
    k.zeta_memo.get_or_insert_with((p, s), || zeta_uncached(k, p, s))
}

fn zeta_uncached(k: &NumberField, p: u64, s: u32) -> Result<LocalUnity, LocalError> {
    let decided = |present, method| Ok(LocalUnity { present, method });
    let dec = k.decompose_prime(p)?;
    let (e, f) = dec.pairs[0];
    let phi = euler_phi(p.pow(s));
    // cheap necessary conditions before any global root search
    if dec.is_unramified() {
        return decided(false, UnityMethod::Unramified);
    }
    if !((e * f) as u64).is_multiple_of(phi) || !(e as u64).is_multiple_of(phi) {
        return decided(false, UnityMethod::DegreeObstruction);
    }
    let cyc = IntPoly::cyclotomic(p.pow(s));
    if k.has_root_in_field(&cyc) {
        return decided(true, UnityMethod::GlobalRoot);
    }
    // L = K(ζ): a ℚ-irreducible factor of the squarefree norm defines it
    let (_, norm) = squarefree_norm(k.defining_poly(), &cyc).ok_or(LocalError::CompositumFailed)?;
    let fac = factor_over_q(&norm).map_err(NumberFieldError::from)?;
    let l_poly = fac.factors[0].0.clone();
    let l = NumberField::new(l_poly)?;
    let l_local = l.decompose_prime(p)?.local_degrees()[0];
    decided(l_local == e * f, UnityMethod::CompositumTest)
}

/// Largest `s` with `ζ_{p^s} ∈ K_𝔭`, searching only while `φ(p^s) <= [K:ℚ]`.
pub fn local_unity_report(k: &NumberField, p: u64) -> Result<LocalUnityReport, LocalError> {
    let dec = k.decompose_prime(p)?;
    let (e, f) = dec.pairs[0];
    let mut s_max = 0;
    let mut method = UnityMethod::DegreeObstruction;
    let mut s = 1;
    loop {
        if euler_phi(p.pow(s)) > k.degree() as u64 {
            if s_max > 0 {
                method = UnityMethod::DegreeObstruction;
            }
            break;
        }
        let r = zeta_in_completion(k, p, s)?;
        method = r.method;
        if !r.present {
            break;
        }
        s_max = s;
        s += 1;
    }
    Ok(LocalUnityReport {
        p,
        s_max,
        method,
        ramification: e,
        local_degree: e * f,
    })
}

/// The clause that certifies zeta-freeness of every completion above `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaFreeClause {
    /// `p` unramified.
    Unramified,
    /// `p - 1` divides no local degree.
    LocalDegrees,
    /// `K` Galois and `p - 1` does not divide `[K:ℚ]`.
    GaloisDegree,
    /// Settled by the local root-of-unity test.
    LocalTest,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WildHypotheses {
    pub p: u64,
    pub decomposes: bool,
    /// `None` when undecidable (non-Galois field, no clause applies).
    pub all_completions_zeta_free: Option<bool>,
    /// Every clause that holds, in evaluation order.
    pub clauses: Vec<ZetaFreeClause>,
    pub second_local_degree: Option<u32>,
    pub local_degrees: Vec<u32>,
    pub galois: bool,
    /// `(local degree, s_max)` for Galois fields.
    pub galois_profile: Option<(u32, u32)>,
    pub zeta_p_global: bool,
}

pub fn wild_hypotheses(k: &NumberField, p: u64) -> Result<WildHypotheses, LocalError> {
    if p == 2 {
        return Err(LocalError::EvenPrime(p));
    }
    let dec = k.decompose_prime(p)?;
    let degrees = dec.local_degrees();
    let galois = k.is_galois();
    let n = k.degree() as u64;
    let mut clauses = Vec::new();
    if dec.is_unramified() {
        clauses.push(ZetaFreeClause::Unramified);
    }
    if degrees.iter().all(|&d| !(d as u64).is_multiple_of(p - 1)) {
        clauses.push(ZetaFreeClause::LocalDegrees);
    }
    if galois && !n.is_multiple_of(p - 1) {
        clauses.push(ZetaFreeClause::GaloisDegree);
    }
    let zeta_p_global = k.has_root_in_field(&IntPoly::cyclotomic(p));
    let (zeta_free, profile) = match (clauses.is_empty(), galois) {
        (false, true) => (Some(true), Some((degrees[0], 0))),
        (false, false) => (Some(true), None),
        (true, true) => {
            let report = local_unity_report(k, p)?;
            clauses.push(ZetaFreeClause::LocalTest);
            (Some(report.s_max == 0), Some((report.local_degree, report.s_max)))
        }
        // a global p-th root of unity lies in every completion
        (true, false) if zeta_p_global => (Some(false), None),
        (true, false) => (None, None),
    };
    Ok(WildHypotheses {
        p,
        decomposes: dec.decomposes(),
        all_completions_zeta_free: zeta_free,
        clauses,
        second_local_degree: degrees.get(1).copied(),
        local_degrees: degrees,
        galois,
        galois_profile: profile,
        zeta_p_global,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(c: &[i64]) -> NumberField {
        NumberField::from_coeffs(c).unwrap()
    }

    #[test]
    fn profiles() {
        let p = local_degree_profile(&k(&[1, 0, 1]), 5).unwrap();
        assert_eq!(p.iter().map(|x| (x.e, x.f)).collect::<Vec<_>>(), vec![(1, 1), (1, 1)]);
        let z9 = NumberField::new(IntPoly::cyclotomic(9)).unwrap();
        let p = local_degree_profile(&z9, 3).unwrap();
        assert_eq!((p[0].e, p[0].f, p[0].local_degree), (6, 1, 6));
        let p = local_degree_profile(&NumberField::rationals(), 13).unwrap();
        assert_eq!((p[0].e, p[0].f), (1, 1));
    }

    #[test]
    fn zeta_examples() {
        let z3 = k(&[1, 1, 1]);
        let r = zeta_in_completion(&z3, 3, 1).unwrap();
        assert!(r.present);
        assert_eq!(r.method, UnityMethod::GlobalRoot);
        let r = zeta_in_completion(&k(&[1, 0, 1]), 3, 1).unwrap();
        assert!(!r.present);
        assert_eq!(r.method, UnityMethod::Unramified);
        let z9 = NumberField::new(IntPoly::cyclotomic(9)).unwrap();
        assert!(zeta_in_completion(&z9, 3, 2).unwrap().present);
        assert_eq!(local_unity_report(&z9, 3).unwrap().s_max, 2);
        assert_eq!(
            zeta_in_completion(&k(&[-2, 0, 0, 1]), 3, 1).unwrap_err(),
            LocalError::NotGaloisField
        );
    }

    #[test]
    fn compositum_route() {
        // Q(√-3·7): ζ3 is not global, but Q_3(√-21) = Q_3(√-3) contains it
        let kk = k(&[21, 0, 1]);
        let r = zeta_in_completion(&kk, 3, 1).unwrap();
        assert_eq!(
            r,
            LocalUnity {
                present: true,
                method: UnityMethod::CompositumTest
            }
        );
        // Q(√3): Q_3(√3) does not contain √-3
        let r = zeta_in_completion(&k(&[-3, 0, 1]), 3, 1).unwrap();
        assert_eq!(
            r,
            LocalUnity {
                present: false,
                method: UnityMethod::CompositumTest
            }
        );
    }

    /// For squarefree `d` with `3 | d`: `Q_3(√d)` holds `√-3` iff `-d/3` is a
    /// square mod 3.
    #[test]
    fn compositum_matches_quadratic_oracle() {
        for d in [-30i64, -21, -15, -6, -3, 3, 6, 15, 21, 30, 33, 39, -33, -39] {
            let expected = (-d / 3).rem_euclid(3) == 1;
            let r = zeta_in_completion(&k(&[-d, 0, 1]), 3, 1).unwrap();
            assert_eq!(r.present, expected, "d = {d}");
        }
    }

    #[test]
    fn wild_examples() {
        let h = wild_hypotheses(&k(&[-7, 0, 1]), 3).unwrap();
        assert!(h.decomposes);
        assert_eq!(h.all_completions_zeta_free, Some(true));
        assert_eq!(h.clauses[0], ZetaFreeClause::Unramified);
        assert_eq!(h.second_local_degree, Some(1));
        let h = wild_hypotheses(&k(&[1, 0, 1]), 5).unwrap();
        assert!(h.decomposes);
        assert_eq!(h.second_local_degree, Some(1));
        let h = wild_hypotheses(&k(&[1, -3, 0, 1]), 5).unwrap();
        assert_eq!(h.all_completions_zeta_free, Some(true));
        assert!(h.clauses.contains(&ZetaFreeClause::GaloisDegree));
        assert!(h.clauses.contains(&ZetaFreeClause::Unramified));
    }
}
