//! Dense univariate polynomials over ℤ.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::primes::primes_from;
use super::{AlgebraError, ModPoly, QPoly};

/// Integer polynomial, coefficients in ascending degree order. The zero
/// polynomial is the empty list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        while p.coeffs.last().is_some_and(|c| c.is_zero()) {
            p.coeffs.pop();
        }
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Coefficients as `i64` if they all fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Content removed and leading coefficient made positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `f(x + c)`
    pub fn shift(&self, c: &BigInt) -> Self {
        let lin = Self::new(vec![c.clone(), BigInt::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| acc.mul(&lin).add(&Self::new(vec![a.clone()])))
    }

    /// `x^deg f(1/x)`
    pub fn reverse(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Division with remainder by a divisor whose leading coefficient is a
    /// unit (±1) in ℤ.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let lc = divisor.leading();
        if !lc.abs().is_one() {
            return Err(AlgebraError::NonUnitLeading);
        }
        let dd = divisor.deg();
        if self.is_zero() || self.deg() < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.deg() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient over ℤ, `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.deg() < divisor.deg() {
            return None;
        }
        let lc = divisor.leading();
        let dd = divisor.deg();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.deg() - dd + 1];
        for k in (0..quot.len()).rev() {
            let (c, r) = rem[k + dd].div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Primitive gcd over ℚ[x], normalized with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        self.to_qpoly().gcd(&other.to_qpoly()).to_primitive_int()
    }

    pub fn reduce_mod(&self, p: u64) -> ModPoly {
        let pb = BigInt::from(p);
        ModPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
                .collect(),
            p,
        )
    }

    /// Lift of a polynomial over `F_p` with coefficients in `[0, p)`.
    pub fn lift(g: &ModPoly) -> Self {
        Self::new(g.coeffs().iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Coefficients reduced into the symmetric range `(-m/2, m/2]`.
    pub fn symmetric_mod(&self, m: &BigInt) -> Self {
        let half = m >> 1;
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let r = c.mod_floor(m);
                    if r > half {
                        r - m
                    } else {
                        r
                    }
                })
                .collect(),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        if self.deg() == 0 {
            return true;
        }
        let lc = self.leading();
        // a squarefree reduction certifies squarefreeness over ℚ
        for p in primes_from(3).take(12) {
            if (&lc % BigInt::from(p)).is_zero() {
                continue;
            }
            let r = self.reduce_mod(p);
            if r.gcd(&r.derivative()).deg() == 0 {
                return true;
            }
        }
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Yun's squarefree decomposition of a primitive polynomial:
    /// `self = ± prod s_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let f = self.primitive_part();
        if f.deg() == 0 {
            return Vec::new();
        }
        if f.is_squarefree() {
            return vec![(f, 1)];
        }
        let q = f.to_qpoly();
        let d = q.derivative();
        let mut a = q.gcd(&d);
        let mut b = q.divmod(&a).expect("nonzero").0;
        let mut c = d.divmod(&a).expect("nonzero").0.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        while b.deg() > 0 {
            a = b.gcd(&c);
            b = b.divmod(&a).expect("nonzero").0;
            c = c.divmod(&a).expect("nonzero").0.sub(&b.derivative());
            if a.deg() > 0 {
                out.push((a.to_primitive_int(), i));
            }
            i += 1;
        }
        out
    }

    /// `n`-th cyclotomic polynomial by iterated exact division of `x^n - 1`.
    pub fn cyclotomic(n: u64) -> Self {
        assert!(n >= 1, "cyclotomic index must be positive");
        let mut f = Self::x_pow_minus_one(n as usize);
        for d in super::primes::divisors(n) {
            if d < n {
                f = f
                    .div_exact(&Self::cyclotomic(d))
                    .expect("cyclotomic factor divides x^n - 1");
            }
        }
        f
    }

    /// Resultant via the Sylvester matrix (fraction-free Bareiss elimination).
    pub fn resultant(&self, other: &Self) -> BigInt {
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        let (m, n) = (self.deg(), other.deg());
        if m == 0 {
            return self.leading().pow(n as u32);
        }
        if n == 0 {
            return other.leading().pow(m as u32);
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for r in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                mat[r][r + j] = c.clone();
            }
        }
        for r in 0..m {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                mat[n + r][r + j] = c.clone();
            }
        }
        bareiss_det(mat)
    }

    /// `disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigInt {
        let n = self.deg();
        if n == 0 {
            return BigInt::one();
        }
        let res = self.resultant(&self.derivative());
        let d = res / self.leading();
        if (n * (n - 1) / 2) % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// Power sums `p_k = sum alpha_i^k`, `k = 0..=count`, of the roots of a
    /// monic polynomial (Newton's identities).
    pub fn power_sums(&self, count: usize) -> Vec<BigInt> {
        assert!(self.is_monic(), "power sums need a monic polynomial");
        let n = self.deg();
        // e-coefficients: f = x^n + c_{n-1} x^{n-1} + ... ; a_i = coeff of x^{n-i}
        let a = |i: usize| -> BigInt {
            if i <= n {
                self.coeff(n - i)
            } else {
                BigInt::zero()
            }
        };
        let mut ps = vec![BigInt::from(n)];
        for k in 1..=count {
            let mut s = if k <= n {
                -BigInt::from(k) * a(k)
            } else {
                BigInt::zero()
            };
            for i in 1..k.min(n + 1) {
                s -= a(i) * &ps[k - i];
            }
            ps.push(s);
        }
        ps
    }

    /// Monic polynomial of degree `n` from the power sums `p_1..p_n` of its
    /// roots; `None` if the result is not integral.
    pub fn from_power_sums(n: usize, ps: &[BigInt]) -> Option<Self> {
        let mut a = vec![BigRational::one()];
        for k in 1..=n {
            let mut s = BigRational::from_integer(ps[k].clone());
            for i in 1..k {
                s += &a[i] * BigRational::from_integer(ps[k - i].clone());
            }
            a.push(-s / BigRational::from_integer(BigInt::from(k)));
        }
        let coeffs = a
            .into_iter()
            .rev()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::new(coeffs))
    }

    /// Composed sum `prod_{i,j} (x - a_i - c*b_j)` for monic `f` (roots `a_i`)
    /// and monic `g` (roots `b_j`). Equals `Res_y(g(y), f(x - c*y))`.
    pub fn composed_sum(f: &Self, g: &Self, c: i64) -> Self {
        let (n, m) = (f.deg(), g.deg());
        let total = n * m;
        let pf = f.power_sums(total);
        let pg = g.power_sums(total);
        let cb = BigInt::from(c);
        let mut cpow = vec![BigInt::one()];
        for k in 1..=total {
            cpow.push(&cpow[k - 1] * &cb);
        }
        let mut ps = vec![BigInt::from(total)];
        for k in 1..=total {
            let mut binom = BigInt::one();
            let mut s = BigInt::zero();
            for j in 0..=k {
                s += &binom * &pf[k - j] * &cpow[j] * &pg[j];
                binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
            }
            ps.push(s);
        }
        Self::from_power_sums(total, &ps).expect("composed sum of monic integer polynomials is integral")
    }

    /// Landau-Mignotte style bound on the coefficients of any factor.
    pub fn factor_coefficient_bound(&self) -> BigInt {
        let norm_sq: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        let norm = norm_sq.sqrt() + BigInt::one();
        (BigInt::one() << self.deg()) * norm * self.leading().abs()
    }
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn bareiss_det(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !mat[r][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j]) / &prev;
                mat[i][j] = v;
            }
        }
        prev = mat[k][k].clone();
    }
    sign * mat[n - 1][n - 1].clone()
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.sign() == Sign::Minus;
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "x")?,
                _ => write!(f, "{a}*x")?,
            }
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        Ok(())
    }
}

// Serialized as an ascending list of decimal-string-free integers when they
// fit in i64, which covers every polynomial the engine emits.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(x) => serde_json::Value::from(x),
                None => serde_json::Value::from(c.to_string()),
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<serde_json::Value> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| serde::de::Error::custom("integer coefficient expected")),
                serde_json::Value::String(s) => {
                    s.parse::<BigInt>().map_err(|e| serde::de::Error::custom(e.to_string()))
                }
                _ => Err(serde::de::Error::custom("integer coefficient expected")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(IntPoly::new)
    }
}
