//! Polynomials over a finite field `F_p[t]/(phi)` given by a monic
//! irreducible `phi`. Only what residual-polynomial analysis needs:
//! separability and the degree pattern of the irreducible factors.

use num_bigint::BigUint;

use super::primes::inv_mod;
use super::ModPoly;

/// The field `F_p[t]/(phi)`.
#[derive(Clone, Debug)]
pub struct ResidueField {
    phi: ModPoly,
}

impl ResidueField {
    /// `phi` must be monic and irreducible over `F_p`.
    pub fn new(phi: ModPoly) -> Self {
        debug_assert!(phi.is_irreducible());
        ResidueField { phi: phi.monic() }
    }

    pub fn p(&self) -> u64 {
        self.phi.modulus()
    }

    pub fn degree(&self) -> usize {
        self.phi.deg()
    }

    /// Number of elements `p^deg(phi)`.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.p()).pow(self.degree() as u32)
    }

    pub fn reduce(&self, a: &ModPoly) -> ModPoly {
        a.rem(&self.phi)
    }

    pub fn zero(&self) -> ModPoly {
        ModPoly::zero(self.p())
    }

    pub fn one(&self) -> ModPoly {
        ModPoly::one(self.p())
    }

    pub fn mul(&self, a: &ModPoly, b: &ModPoly) -> ModPoly {
        a.mul(b).rem(&self.phi)
    }

    pub fn inv(&self, a: &ModPoly) -> Option<ModPoly> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.ext_gcd(&self.phi);
        g.is_one().then(|| s.rem(&self.phi))
    }
}

/// Polynomial in `y` with coefficients in a [`ResidueField`], ascending.
#[derive(Clone, Debug)]
pub struct FqPoly<'a> {
    field: &'a ResidueField,
    coeffs: Vec<ModPoly>,
}

impl<'a> FqPoly<'a> {
    pub fn new(field: &'a ResidueField, coeffs: Vec<ModPoly>) -> Self {
        let mut out = FqPoly {
            field,
            coeffs: coeffs.iter().map(|c| field.reduce(c)).collect(),
        };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn y(field: &'a ResidueField) -> Self {
        FqPoly {
            field,
            coeffs: vec![field.zero(), field.one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn coeff(&self, i: usize) -> ModPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        FqPoly::new(self.field, coeffs)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FqPoly::new(self.field, Vec::new());
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&self.field.mul(a, b));
            }
        }
        FqPoly::new(self.field, out)
    }

    fn monic(&self) -> Self {
        let Some(lc) = self.coeffs.last() else {
            return self.clone();
        };
        let inv = self.field.inv(lc).expect("nonzero in a field");
        let coeffs = self.coeffs.iter().map(|c| self.field.mul(c, &inv)).collect();
        FqPoly::new(self.field, coeffs)
    }

    fn divmod(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return (FqPoly::new(self.field, Vec::new()), self.clone());
        }
        let inv = self.field.inv(d.coeffs.last().unwrap()).expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.deg() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = self.field.mul(&rem[k + dd], &inv);
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].sub(&self.field.mul(&c, b));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (FqPoly::new(self.field, quot), FqPoly::new(self.field, rem))
    }

    fn rem(&self, d: &Self) -> Self {
        self.divmod(d).1
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale((i as u64) % p))
            .collect();
        FqPoly::new(self.field, coeffs)
    }

    fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Self {
        let mut acc = FqPoly::new(self.field, vec![self.field.one()]);
        let base = self.rem(modulus);
        for bit in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus);
            if exp.bit(bit) {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }

    /// Separable (squarefree over the algebraic closure) and of degree >= 1.
    pub fn is_separable(&self) -> bool {
        if self.deg() == 0 {
            return true;
        }
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).deg() == 0
    }

    /// Degrees of the irreducible factors of a separable polynomial,
    /// ascending, by distinct-degree factorization.
    pub fn factor_degrees(&self) -> Vec<usize> {
        assert!(self.is_separable(), "distinct-degree split needs a separable input");
        let q = self.field.order();
        let mut f = self.monic();
        let y = FqPoly::y(self.field);
        let mut h = y.clone();
        let mut out = Vec::new();
        let mut i = 0;
        while f.deg() > 0 {
            i += 1;
            if 2 * i > f.deg() {
                out.push(f.deg());
                break;
            }
            h = h.pow_mod(&q, &f);
            let g = h.sub(&y).gcd(&f);
            if g.deg() > 0 {
                out.extend(std::iter::repeat_n(i, g.deg() / i));
                f = f.divmod(&g).0;
                h = h.rem(&f);
            }
        }
        out
    }
}

/// `a * b^{-1}` in `F_p` for the residual coefficient normalizations.
pub fn ratio_mod(a: u64, b: u64, p: u64) -> u64 {
    super::primes::mul_mod(a, inv_mod(b, p).expect("unit"), p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_factor_degrees() {
        // F_4 = F_2[t]/(t^2 + t + 1); y^2 + y + 1 splits there
        let k = ResidueField::new(ModPoly::from_i64(&[1, 1, 1], 2));
        let one = ModPoly::one(2);
        let r = FqPoly::new(&k, vec![one.clone(), one.clone(), one.clone()]);
        assert!(r.is_separable());
        assert_eq!(r.factor_degrees(), vec![1, 1]);
        // y^2 + t stays irreducible? t is a square in F_4, so it splits as (y + s)^2: inseparable
        let t = ModPoly::x(2);
        let r2 = FqPoly::new(&k, vec![t, ModPoly::zero(2), one]);
        assert!(!r2.is_separable());
    }

    #[test]
    fn prime_field_degrees() {
        let k = ResidueField::new(ModPoly::from_i64(&[0, 1], 5));
        let c = |v: i64| ModPoly::from_i64(&[v], 5);
        // (y^2 + 2)(y - 1) over F_5; 2 is a non-residue mod 5
        let r = FqPoly::new(&k, vec![c(-2), c(2), c(-1), c(1)]);
        assert_eq!(r.factor_degrees(), vec![1, 2]);
    }
}
