//! Splitting of a rational prime in `ℚ[t]/(f)`.
//!
//! Three certified routes, tried in order: Dedekind's criterion on `f`,
//! first-order Newton polygons with separable residual polynomials (Ore),
//! and the same two tests on the characteristic polynomial of an
//! alternative integral generator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::NumberFieldError;
use crate::algebra::residue::{FqPoly, ResidueField};
use crate::algebra::{IntPoly, ModPoly};

/// How a decomposition was certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecompositionMethod {
    Dedekind,
    NewtonPolygon,
    /// The tests succeeded on the minimal polynomial of
    /// `generator(t) / denominator`.
    AlternativeGenerator {
        generator: IntPoly,
        denominator: u64,
        min_poly: IntPoly,
        inner: Box<DecompositionMethod>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeDecomposition {
    pub p: u64,
    /// `(e, f)` per prime above `p`; descending by `e*f`, then by `e`.
    pub pairs: Vec<(u32, u32)>,
    pub certified: bool,
    pub method: DecompositionMethod,
}

impl PrimeDecomposition {
    pub fn decomposes(&self) -> bool {
        self.pairs.len() >= 2
    }

    pub fn local_degrees(&self) -> Vec<u32> {
        self.pairs.iter().map(|(e, f)| e * f).collect()
    }

    pub fn is_unramified(&self) -> bool {
        self.pairs.iter().all(|&(e, _)| e == 1)
    }

    pub fn total_degree(&self) -> u32 {
        self.pairs.iter().map(|(e, f)| e * f).sum()
    }
}

pub(crate) fn sort_pairs(pairs: &mut [(u32, u32)]) {
    pairs.sort_by(|a, b| (b.0 * b.1).cmp(&(a.0 * a.1)).then(b.0.cmp(&a.0)).then(b.1.cmp(&a.1)));
}

pub(crate) fn decompose(f: &IntPoly, p: u64) -> Result<PrimeDecomposition, NumberFieldError> {
    let n = f.deg();
    let finish = |mut pairs: Vec<(u32, u32)>, method| {
        sort_pairs(&mut pairs);
        let out = PrimeDecomposition {
            p,
            pairs,
            certified: true,
            method,
        };
        assert_eq!(out.total_degree() as usize, n, "sum of e*f must equal the degree");
        Ok(out)
    };
    if let Some((pairs, method)) = certify(f, p) {
        return finish(pairs, method);
    }
    let candidates = alternative_generators(f)
        .into_iter()
        .map(|g| (g, 1))
        .chain(scaled_generators(f, p))
        .chain(integral_quotient_generators(f, p));
    for (gen, denominator) in candidates {
        let Some(chi) = charpoly(f, &gen).and_then(|c| scale_roots(&c, denominator)) else {
            continue;
        };
        if !chi.is_squarefree() {
            continue;
        }
        if let Some((pairs, inner)) = certify(&chi, p) {
            return finish(
                pairs,
                DecompositionMethod::AlternativeGenerator {
                    generator: gen,
                    denominator,
                    min_poly: chi,
                    inner: Box::new(inner),
                },
            );
        }
    }
    if let Some(rev) = inverse_generator(f) {
        if let Some((pairs, inner)) = certify(&rev, p) {
            return finish(
                pairs,
                DecompositionMethod::AlternativeGenerator {
                    generator: IntPoly::from_i64(&[0, -1]),
                    denominator: 1,
                    min_poly: rev,
                    inner: Box::new(inner),
                },
            );
        }
    }
    Err(NumberFieldError::IndexObstruction { p })
}

fn certify(f: &IntPoly, p: u64) -> Option<(Vec<(u32, u32)>, DecompositionMethod)> {
    dedekind(f, p)
        .map(|pairs| (pairs, DecompositionMethod::Dedekind))
        .or_else(|| newton_polygon(f, p).map(|pairs| (pairs, DecompositionMethod::NewtonPolygon)))
}

/// Dedekind's criterion; `Some` iff `p` does not divide `[O_K : ℤ[t]]`.
pub(crate) fn dedekind(f: &IntPoly, p: u64) -> Option<Vec<(u32, u32)>> {
    let fbar = f.reduce_mod(p);
    let fac = fbar.factor().ok()?;
    let pairs: Vec<(u32, u32)> = fac.factors.iter().map(|(g, m)| (*m, g.deg() as u32)).collect();
    if fac.factors.iter().all(|(_, m)| *m == 1) {
        return Some(pairs);
    }
    let g = fac
        .factors
        .iter()
        .fold(IntPoly::one(), |acc, (phi, _)| acc.mul(&IntPoly::lift(phi)));
    let h = fac
        .factors
        .iter()
        .fold(IntPoly::one(), |acc, (phi, m)| acc.mul(&IntPoly::lift(phi).pow(m - 1)));
    let diff = f.sub(&g.mul(&h));
    let pb = BigInt::from(p);
    let big_f = IntPoly::new(diff.coeffs().iter().map(|c| c / &pb).collect()).reduce_mod(p);
    let d = big_f.gcd(&g.reduce_mod(p)).gcd(&h.reduce_mod(p));
    (d.deg() == 0 && !d.is_zero()).then_some(pairs)
}

fn valuation(c: &BigInt, p: &BigInt) -> Option<u32> {
    if c.is_zero() {
        return None;
    }
    let mut c = c.abs();
    let mut v = 0;
    loop {
        let (q, r) = c.div_rem(p);
        if !r.is_zero() {
            return Some(v);
        }
        c = q;
        v += 1;
    }
}

fn poly_valuation(a: &IntPoly, p: &BigInt) -> Option<u32> {
    a.coeffs().iter().filter_map(|c| valuation(c, p)).min()
}

/// Order-one Newton polygon analysis at every repeated factor of `f mod p`.
/// `Some` iff every side of every polygon has a separable residual
/// polynomial.
pub(crate) fn newton_polygon(f: &IntPoly, p: u64) -> Option<Vec<(u32, u32)>> {
    let fac = f.reduce_mod(p).factor().ok()?;
    let pb = BigInt::from(p);
    let mut pairs = Vec::new();
    for (phi_bar, mult) in &fac.factors {
        let dphi = phi_bar.deg() as u32;
        if *mult == 1 {
            pairs.push((1, dphi));
            continue;
        }
        let phi = IntPoly::lift(phi_bar);
        let ell = *mult as usize;
        // phi-adic digits a_0..a_ell
        let mut digits = Vec::with_capacity(ell + 1);
        let mut rest = f.clone();
        for _ in 0..=ell {
            let (q, r) = rest.divmod(&phi).ok()?;
            digits.push(r);
            rest = q;
        }
        let points: Vec<(usize, u32)> = digits
            .iter()
            .enumerate()
            .filter_map(|(i, a)| poly_valuation(a, &pb).map(|v| (i, v)))
            .collect();
        if points.last() != Some(&(ell, 0)) || points[0].0 != 0 {
            return None;
        }
        let field = ResidueField::new(phi_bar.clone());
        for (start, end) in lower_hull(&points).windows(2).map(|w| (w[0], w[1])) {
            let len = (end.0 - start.0) as u32;
            let drop = start.1 - end.1;
            let g = len.gcd(&drop);
            let (e, h) = (len / g, drop / g);
            let d = g as usize;
            let coeffs: Vec<ModPoly> = (0..=d)
                .map(|k| {
                    let i = start.0 + k * e as usize;
                    let expected = start.1 - k as u32 * h;
                    let a = &digits[i];
                    match poly_valuation(a, &pb) {
                        Some(v) if v == expected => {
                            let scale = pb.pow(v);
                            IntPoly::new(a.coeffs().iter().map(|c| c / &scale).collect()).reduce_mod(p)
                        }
                        _ => ModPoly::zero(p),
                    }
                })
                .collect();
            let residual = FqPoly::new(&field, coeffs);
            if !residual.is_separable() {
                return None;
            }
            for deg in residual.factor_degrees() {
                pairs.push((e, dphi * deg as u32));
            }
        }
    }
    Some(pairs)
}

/// Vertices of the lower convex hull, left to right.
fn lower_hull(points: &[(usize, u32)]) -> Vec<(usize, u32)> {
    let mut hull: Vec<(usize, u32)> = Vec::new();
    for &pt in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as i64 - a.0 as i64) * (pt.1 as i64 - a.1 as i64)
                - (b.1 as i64 - a.1 as i64) * (pt.0 as i64 - a.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull
}

/// Candidate integral generators `a(t)`; shifts `t + k` are absent because
/// they leave `ℤ[t]` unchanged.
fn alternative_generators(f: &IntPoly) -> Vec<IntPoly> {
    if f.deg() < 2 {
        return Vec::new();
    }
    [
        &[0, 0, 1][..],
        &[0, 1, 1],
        &[0, -1, 1],
        &[0, 1, 0, 1],
        &[0, 0, 1, 1],
        &[0, -1, 0, 1],
        &[0, 2, 1],
        &[0, 1, 1, 1],
        &[0, 1, 0, 0, 1],
    ]
    .iter()
    .map(|c| IntPoly::from_i64(c))
    .filter(|g| g.deg() < f.deg() || f.deg() > 2)
    .collect()
}

/// `(t + k)^j / p^i` for small `j`, `k`, `i`; kept only when integral.
fn scaled_generators(f: &IntPoly, p: u64) -> Vec<(IntPoly, u64)> {
    if f.deg() < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for i in 1..=2u32 {
        for j in 1..f.deg().min(3) as u32 {
            for k in 0..p.min(8) as i64 {
                out.push((IntPoly::from_i64(&[k, 1]).pow(j), p.pow(i)));
            }
        }
    }
    out
}

/// Cap on `p^n` for the exhaustive search in `integral_quotient_generators`.
const QUOTIENT_SEARCH_CAP: u64 = 2048;

/// For every integral `gamma = a(t)/p` with `a` having digits in `[0, p)`,
/// the generators `gamma` and `t + gamma`. These reach orders strictly
/// larger than `ℤ[t]`, which the other candidates never leave when the
/// index obstruction comes from two ramified subfields.
fn integral_quotient_generators(f: &IntPoly, p: u64) -> Vec<(IntPoly, u64)> {
    let n = f.deg();
    if n < 2 || p.checked_pow(n as u32).is_none_or(|c| c > QUOTIENT_SEARCH_CAP) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for code in 1..p.pow(n as u32) {
        let digits: Vec<i64> = (0..n).map(|j| (code / p.pow(j as u32) % p) as i64).collect();
        if digits[1..].iter().all(|&d| d == 0) {
            continue;
        }
        let a = IntPoly::from_i64(&digits);
        let integral = charpoly(f, &a).and_then(|c| scale_roots(&c, p)).is_some();
        if integral {
            let shifted = a.add(&IntPoly::from_i64(&[0, p as i64]));
            out.push((a, p));
            out.push((shifted, p));
        }
    }
    out
}

/// Characteristic polynomial of `alpha / m` from that of `alpha`, if integral.
fn scale_roots(chi: &IntPoly, m: u64) -> Option<IntPoly> {
    if m == 1 {
        return Some(chi.clone());
    }
    let n = chi.deg();
    let mb = BigInt::from(m);
    let coeffs = (0..=n)
        .map(|i| {
            let den = mb.pow((n - i) as u32);
            let (q, r) = chi.coeff(i).div_rem(&den);
            r.is_zero().then_some(q)
        })
        .collect::<Option<Vec<_>>>()?;
    Some(IntPoly::new(coeffs))
}

/// Characteristic polynomial of `a(t)` from traces of its powers.
pub(crate) fn charpoly(f: &IntPoly, a: &IntPoly) -> Option<IntPoly> {
    let n = f.deg();
    let traces_of_t = f.power_sums(n - 1);
    let alpha = a.divmod(f).ok()?.1;
    let mut pw = IntPoly::one();
    let mut traces = vec![BigInt::from(n)];
    for _ in 1..=n {
        pw = pw.mul(&alpha).divmod(f).ok()?.1;
        let tr: BigInt = (0..n).map(|j| pw.coeff(j) * &traces_of_t[j]).sum();
        traces.push(tr);
    }
    IntPoly::from_power_sums(n, &traces)
}

/// Minimal polynomial of `1/t` when it is integral (`f(0) = ±1`).
fn inverse_generator(f: &IntPoly) -> Option<IntPoly> {
    let c0 = f.coeff(0);
    if !c0.abs().is_one() || f.deg() < 2 {
        return None;
    }
    let rev = f.reverse();
    Some(if c0.is_negative() { rev.neg() } else { rev })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn quadratic_two_adic_cases() {
        // Dedekind fails at 2 for x^2 - 5 and x^2 + 7; the polygon settles them
        assert_eq!(dedekind(&p(&[-5, 0, 1]), 2), None);
        assert_eq!(decompose(&p(&[-5, 0, 1]), 2).unwrap().pairs, vec![(1, 2)]);
        assert_eq!(decompose(&p(&[7, 0, 1]), 2).unwrap().pairs, vec![(1, 1), (1, 1)]);
        assert_eq!(decompose(&p(&[3, 0, 1]), 2).unwrap().pairs, vec![(1, 2)]);
        assert_eq!(decompose(&p(&[-3, 0, 1]), 2).unwrap().pairs, vec![(2, 1)]);
        assert_eq!(decompose(&p(&[-7, 0, 1]), 2).unwrap().pairs, vec![(2, 1)]);
        assert_eq!(decompose(&p(&[1, 0, 1]), 2).unwrap().pairs, vec![(2, 1)]);
    }

    #[test]
    fn cyclotomic_nine_at_three() {
        let d = decompose(&IntPoly::cyclotomic(9), 3).unwrap();
        assert_eq!(d.pairs, vec![(6, 1)]);
    }

    #[test]
    fn non_maximal_order_via_polygon() {
        // x^2 - 20 = Q(√5) with index 2 at 2: inert
        assert_eq!(decompose(&p(&[-20, 0, 1]), 2).unwrap().pairs, vec![(1, 2)]);
        // x^2 + 28 = Q(√-7): 2 splits, certified through t/2
        assert_eq!(decompose(&p(&[28, 0, 1]), 2).unwrap().pairs, vec![(1, 1), (1, 1)]);
    }

    #[test]
    fn charpoly_of_square() {
        // (t^2) for t = √[3]{2}: t^2 = √[3]{4}, min poly x^3 - 4
        assert_eq!(charpoly(&p(&[-2, 0, 0, 1]), &p(&[0, 0, 1])), Some(p(&[-4, 0, 0, 1])));
    }

    #[test]
    fn hull() {
        assert_eq!(lower_hull(&[(0, 3), (1, 1), (2, 0)]), vec![(0, 3), (1, 1), (2, 0)]);
        assert_eq!(lower_hull(&[(0, 2), (1, 2), (2, 0)]), vec![(0, 2), (2, 0)]);
        assert_eq!(lower_hull(&[(0, 2), (1, 1), (2, 0)]), vec![(0, 2), (2, 0)]);
    }
}
