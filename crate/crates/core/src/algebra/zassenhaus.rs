//! Factorization over ℚ: modular factorization at a good prime, multifactor
//! Hensel lifting, and subset recombination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::primes::primes_from;
use super::{AlgebraError, Factorization, IntPoly, ModPoly};

const PRIME_TRIALS: usize = 6;

/// Irreducible factorization over ℚ. Factors are primitive integer
/// polynomials with positive leading coefficient; the unit is the signed
/// content, so `unit * prod f^m` reproduces the input.
pub fn factor_over_q(g: &IntPoly) -> Result<Factorization<IntPoly, BigInt>, AlgebraError> {
    if g.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut unit = g.content();
    if g.leading().is_negative() {
        unit = -unit;
    }
    let mut factors = Vec::new();
    for (part, mult) in g.squarefree_decomposition() {
        for f in factor_squarefree(&part, None).0 {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| cmp_int_poly(a, b).then(ma.cmp(mb)));
    Ok(Factorization { unit, factors })
}

/// Irreducible factors of degree at most `max_degree` of a squarefree
/// primitive polynomial, plus the remaining cofactor (which has no
/// irreducible factor of degree `<= max_degree`).
pub fn factors_up_to_degree(f: &IntPoly, max_degree: usize) -> (Vec<IntPoly>, IntPoly) {
    let (mut found, rest) = factor_squarefree(&f.primitive_part(), Some(max_degree));
    found.sort_by(cmp_int_poly);
    (found, rest)
}

fn cmp_int_poly(a: &IntPoly, b: &IntPoly) -> std::cmp::Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

struct ModularImage {
    p: u64,
    factors: Vec<ModPoly>,
}

fn choose_prime(f: &IntPoly) -> (ModularImage, BTreeSet<usize>) {
    let lc = f.leading();
    let n = f.deg();
    let mut best: Option<ModularImage> = None;
    let mut allowed: BTreeSet<usize> = (0..=n).collect();
    let mut trials = 0;
    for p in primes_from(3) {
        if trials == PRIME_TRIALS {
            break;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let r = f.reduce_mod(p);
        if r.gcd(&r.derivative()).deg() > 0 {
            continue;
        }
        trials += 1;
        let fac = r.factor().expect("prime modulus, nonzero");
        let degs: Vec<usize> = fac.factors.iter().map(|(g, _)| g.deg()).collect();
        let mut sums = BTreeSet::from([0usize]);
        for d in &degs {
            let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
            sums.extend(next);
        }
        allowed = allowed.intersection(&sums).copied().collect();
        let image = ModularImage {
            p,
            factors: fac.factors.into_iter().map(|(g, _)| g).collect(),
        };
        if best.as_ref().is_none_or(|b| image.factors.len() < b.factors.len()) {
            best = Some(image);
        }
        if allowed.len() <= 2 {
            break;
        }
    }
    (best.expect("some prime is good for a squarefree polynomial"), allowed)
}

/// Returns `(irreducible factors, cofactor)`. Without a degree cap the
/// cofactor is a constant.
fn factor_squarefree(f: &IntPoly, max_degree: Option<usize>) -> (Vec<IntPoly>, IntPoly) {
    let n = f.deg();
    let cap = max_degree.unwrap_or(n);
    if n == 0 {
        return (Vec::new(), f.clone());
    }
    if n == 1 {
        return if cap >= 1 {
            (vec![f.clone()], IntPoly::one())
        } else {
            (Vec::new(), f.clone())
        };
    }
    let (image, allowed) = choose_prime(f);
    // only 0 and n are possible factor degrees: irreducible
    if allowed.len() <= 2 || image.factors.len() == 1 {
        return if cap >= n {
            (vec![f.clone()], IntPoly::one())
        } else {
            (Vec::new(), f.clone())
        };
    }

    let p = image.p;
    let bound = f.factor_coefficient_bound() * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lc = f.leading();
    let lc_inv = mod_inverse(&lc, &modulus);
    let target = f.scale(&lc_inv).symmetric_mod(&modulus);
    let lifted = multifactor_lift(&target, &image.factors, p, k);
    recombine(f, lifted, &modulus, &allowed, cap)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient invertible modulo p^k");
    e.x.mod_floor(m)
}

/// Lifts monic `factors` (over `F_p`) of a monic `target` to monic factors
/// modulo `p^k` whose product is `target` modulo `p^k`.
fn multifactor_lift(target: &IntPoly, factors: &[ModPoly], p: u64, k: u32) -> Vec<IntPoly> {
    if factors.len() == 1 {
        return vec![target.clone()];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let prod = |fs: &[ModPoly]| fs.iter().fold(ModPoly::one(p), |acc, g| acc.mul(g));
    let (g, h) = hensel_two(target, &prod(left), &prod(right), p, k);
    let mut out = multifactor_lift(&g, left, p, k);
    out.extend(multifactor_lift(&h, right, p, k));
    out
}

/// Linear Hensel lifting of `target ≡ g0 * h0 (mod p)` with `g0`, `h0` monic
/// and coprime, to monic `g`, `h` with `target ≡ g * h (mod p^k)`.
fn hensel_two(target: &IntPoly, g0: &ModPoly, h0: &ModPoly, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, s, t) = g0.ext_gcd(h0);
    debug_assert!(one.is_one());
    let pb = BigInt::from(p);
    let mut g = IntPoly::lift(g0);
    let mut h = IntPoly::lift(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let diff = target.sub(&g.mul(&h));
        let e_int = IntPoly::new(diff.coeffs().iter().map(|c| c / &pj).collect());
        let e = e_int.reduce_mod(p);
        if !e.is_zero() {
            let te = t.mul(&e);
            let (q, r) = te.divmod(g0).expect("monic divisor");
            let dh = s.mul(&e).add(&q.mul(h0));
            g = g.add(&IntPoly::lift(&r).scale(&pj));
            h = h.add(&IntPoly::lift(&dh).scale(&pj));
        }
        pj *= &pb;
    }
    (g.symmetric_mod(&pj), h.symmetric_mod(&pj))
}

fn recombine(
    f: &IntPoly,
    lifted: Vec<IntPoly>,
    modulus: &BigInt,
    allowed: &BTreeSet<usize>,
    cap: usize,
) -> (Vec<IntPoly>, IntPoly) {
    let mut rest = f.clone();
    let mut pool = lifted;
    let mut found = Vec::new();
    let mut size = 1;
    loop {
        // with the cap covering `rest`, complements bound the subset size
        let limit = if rest.deg() <= cap { pool.len() / 2 } else { pool.len() };
        if size > limit {
            break;
        }
        let mut hit = None;
        let lc = rest.leading();
        let const_target = &lc * rest.coeff(0);
        for subset in Subsets::new(pool.len(), size) {
            let deg: usize = subset.iter().map(|&i| pool[i].deg()).sum();
            if deg > cap || !allowed.contains(&deg) {
                continue;
            }
            // constant-term divisibility prunes most subsets cheaply
            let c0 = subset
                .iter()
                .fold(lc.clone(), |acc, &i| (acc * pool[i].coeff(0)).mod_floor(modulus));
            let c0 = symmetric(c0, modulus);
            if c0.is_zero() {
                if !const_target.is_zero() {
                    continue;
                }
            } else if !(&const_target % &c0).is_zero() {
                continue;
            }
            let cand = subset
                .iter()
                .fold(IntPoly::new(vec![lc.clone()]), |acc, &i| {
                    acc.mul(&pool[i]).symmetric_mod(modulus)
                })
                .primitive_part();
            if let Some(q) = rest.div_exact(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                rest = q;
                let drop: BTreeSet<usize> = subset.into_iter().collect();
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !drop.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if rest.deg() > 0 && rest.deg() <= cap {
        found.push(rest.primitive_part());
        rest = IntPoly::one();
    }
    (found, rest)
}

fn symmetric(r: BigInt, m: &BigInt) -> BigInt {
    if r > (m >> 1) {
        r - m
    } else {
        r
    }
}

/// Lexicographic `k`-subsets of `0..n`.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
