//! Dense univariate polynomials over a prime field `F_p`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::primes::{inv_mod, is_prime, mul_mod};
use super::{AlgebraError, Factorization};

/// Polynomial over `F_p`, coefficients ascending, canonical form has no
/// trailing zeros (the zero polynomial is the empty vector).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    coeffs: Vec<u64>,
    p: u64,
}

impl ModPoly {
    pub fn new(coeffs: Vec<u64>, p: u64) -> Self {
        let mut poly = ModPoly {
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
            p,
        };
        poly.trim();
        poly
    }

    pub fn from_i64(coeffs: &[i64], p: u64) -> Self {
        let pi = p as i128;
        Self::new(
            coeffs.iter().map(|&c| (((c as i128) % pi + pi) % pi) as u64).collect(),
            p,
        )
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { coeffs: Vec::new(), p }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(1, p)
    }

    pub fn constant(c: u64, p: u64) -> Self {
        Self::new(vec![c], p)
    }

    /// `x`
    pub fn x(p: u64) -> Self {
        Self::new(vec![0, 1], p)
    }

    pub fn monomial(c: u64, deg: usize, p: u64) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs, p)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p).expect("leading coefficient invertible");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect(), self.p)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n).map(|i| (self.coeff(i) + other.coeff(i)) % self.p).collect(),
            self.p,
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|&a| (self.p - a) % self.p).collect(), self.p)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::new(out.into_iter().map(|c| c as u64).collect(), self.p)
    }

    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let p = self.p;
        let dd = divisor.deg();
        if self.is_zero() || self.deg() < dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let inv = inv_mod(divisor.leading(), p).ok_or(AlgebraError::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.deg() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = mul_mod(rem[k + dd], inv, p);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let t = mul_mod(c, b, p);
                rem[k + j] = (rem[k + j] + p - t) % p;
            }
        }
        rem.truncate(dd);
        Ok((Self::new(quot, p), Self::new(rem, p)))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divmod(divisor).expect("nonzero divisor").1
    }

    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.divmod(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero");
            r0 = r1;
            r1 = r;
            let s2 = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s2;
            let t2 = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.leading(), p).expect("field");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
                .collect(),
            self.p,
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus);
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }

    /// Composition `self(inner)` reduced modulo `modulus`.
    pub fn compose_mod(&self, inner: &Self, modulus: &Self) -> Self {
        let mut acc = Self::zero(self.p);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c, self.p)).rem(modulus);
        }
        acc
    }

    /// Writes `self = g(x^p)` and returns `g` (valid when the derivative vanishes).
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.coeffs.iter().step_by(p).copied().collect(), self.p)
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(s_i, i)` with
    /// `self = prod s_i^i`, each `s_i` squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        self.sqf_rec(1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        out
    }

    fn sqf_rec(&self, mult: u32, out: &mut Vec<(Self, u32)>) {
        if self.deg() == 0 {
            return;
        }
        let p = self.p;
        let d = self.derivative();
        if d.is_zero() {
            self.pth_root().sqf_rec(mult * p as u32, out);
            return;
        }
        let mut c = self.gcd(&d);
        let mut w = self.div_exact(&c);
        let mut i = 1u32;
        while w.deg() > 0 {
            let y = w.gcd(&c);
            let z = w.div_exact(&y);
            if z.deg() > 0 {
                out.push((z, i * mult));
            }
            i += 1;
            w = y;
            c = c.div_exact(&w);
        }
        if c.deg() > 0 {
            c.pth_root().sqf_rec(mult * p as u32, out);
        }
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn distinct_degree(&self) -> Vec<(Self, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut rest = self.clone();
        let x = Self::x(p);
        let mut h = x.clone();
        let pb = BigUint::from(p);
        let mut d = 0;
        while rest.deg() >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&pb, &rest);
            let g = rest.gcd(&h.sub(&x));
            if g.deg() > 0 {
                rest = rest.div_exact(&g);
                h = h.rem(&rest);
                out.push((g, d));
            }
        }
        if rest.deg() > 0 {
            let dd = rest.deg();
            out.push((rest, dd));
        }
        out
    }

    /// Splits a monic squarefree polynomial whose irreducible factors all
    /// have degree `d`.
    pub fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<Self> {
        let n = self.deg();
        if n == d {
            return vec![self.clone()];
        }
        let p = self.p;
        let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
        loop {
            let a = Self::new((0..n).map(|_| rng.gen_range(0..p)).collect(), p);
            if a.deg() == 0 {
                continue;
            }
            let b = if p == 2 {
                // absolute trace to F_2 of the residue class of a
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                a.pow_mod(&exp, self).sub(&Self::one(p))
            };
            let g = self.gcd(&b);
            if g.deg() > 0 && g.deg() < n {
                let mut left = g.equal_degree(d, rng);
                left.extend(self.div_exact(&g).equal_degree(d, rng));
                return left;
            }
        }
    }

    /// Complete factorization into monic irreducibles over `F_p`.
    pub fn factor(&self) -> Result<Factorization<ModPoly, u64>, AlgebraError> {
        if !is_prime(self.p) {
            return Err(AlgebraError::CompositeModulus(self.p));
        }
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let unit = self.leading();
        let monic = self.monic();
        // deterministic per-call stream: identical inputs, identical splits
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ self.p ^ ((monic.deg() as u64) << 32));
        let mut factors = Vec::new();
        for (sqf, mult) in monic.squarefree_decomposition() {
            for (block, d) in sqf.distinct_degree() {
                for f in block.equal_degree(d, &mut rng) {
                    factors.push((f, mult));
                }
            }
        }
        factors.sort_by(|(a, ma), (b, mb)| a.cmp_canonical(b).then(ma.cmp(mb)));
        Ok(Factorization { unit, factors })
    }

    /// Irreducibility over `F_p` (degree >= 1).
    pub fn is_irreducible(&self) -> bool {
        let n = self.deg();
        if n == 0 || self.is_zero() {
            return false;
        }
        let f = self.monic();
        if f.derivative().is_zero() {
            return false;
        }
        let dd = f.distinct_degree();
        dd.len() == 1 && dd[0].1 == n
    }

    /// Order: by degree, then coefficients from the top down.
    pub fn cmp_canonical(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self, self.p)
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(f: &Factorization<ModPoly, u64>, p: u64) -> ModPoly {
        f.factors.iter().fold(ModPoly::constant(f.unit, p), |acc, (g, m)| {
            (0..*m).fold(acc, |a, _| a.mul(g))
        })
    }

    #[test]
    fn x2_plus_1_mod_5_splits() {
        // exhaustive roots mod 5: 2^2+1 = 5, 3^2+1 = 10
        let roots: Vec<u64> = (0..5).filter(|&r| (r * r + 1) % 5 == 0).collect();
        assert_eq!(roots, vec![2, 3]);
        let f = ModPoly::from_i64(&[1, 0, 1], 5).factor().unwrap();
        let got: Vec<_> = f.factors.iter().map(|(g, m)| (g.coeffs().to_vec(), *m)).collect();
        assert_eq!(got, vec![(vec![2, 1], 1), (vec![3, 1], 1)]);
    }

    #[test]
    fn x2_plus_1_mod_3_irreducible() {
        assert!((0..3).all(|r| (r * r + 1) % 3 != 0));
        let f = ModPoly::from_i64(&[1, 0, 1], 3).factor().unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].0.coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn x2_plus_1_mod_2_is_square() {
        let f = ModPoly::from_i64(&[1, 0, 1], 2).factor().unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].0.coeffs(), &[1, 1]);
        assert_eq!(f.factors[0].1, 2);
        assert!(ModPoly::from_i64(&[1, 0, 1], 2).derivative().is_zero());
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(
            ModPoly::from_i64(&[1, 0, 1], 9).factor().unwrap_err(),
            AlgebraError::CompositeModulus(9)
        );
    }

    #[test]
    fn inseparable_power_mod_3() {
        // (x^3 - x - 1)^3 (x+1)^2 over F_3 exercises the p-th root branch
        let a = ModPoly::from_i64(&[-1, -1, 0, 1], 3);
        let b = ModPoly::from_i64(&[1, 1], 3);
        let g = a.mul(&a).mul(&a).mul(&b).mul(&b);
        let f = g.factor().unwrap();
        assert_eq!(product(&f, 3), g);
        let mults: Vec<u32> = f.factors.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![2, 3]);
    }

    #[test]
    fn factorization_is_deterministic() {
        let g = ModPoly::from_i64(&[3, 1, 4, 1, 5, 9, 2, 6, 1], 101);
        assert_eq!(g.factor().unwrap(), g.factor().unwrap());
    }
}
