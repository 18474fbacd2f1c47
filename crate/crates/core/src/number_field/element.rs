//! Elements of `ℚ[x]/(f)` in the power basis of the defining root.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{IntPoly, QPoly};

/// Coordinates `c_0..c_{n-1}` of `sum c_j theta^j`, always reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn zero(n: usize) -> Self {
        FieldElement {
            coords: vec![BigRational::zero(); n],
        }
    }

    pub fn one(n: usize) -> Self {
        Self::from_int(BigInt::one(), n)
    }

    pub fn from_int(c: BigInt, n: usize) -> Self {
        let mut e = Self::zero(n);
        e.coords[0] = BigRational::from_integer(c);
        e
    }

    pub fn from_rational(c: BigRational, n: usize) -> Self {
        let mut e = Self::zero(n);
        e.coords[0] = c;
        e
    }

    /// The defining root itself.
    pub fn theta(f: &IntPoly) -> Self {
        Self::from_qpoly(&QPoly::from_i64(&[0, 1]), f)
    }

    pub fn from_qpoly(q: &QPoly, f: &IntPoly) -> Self {
        let n = f.deg();
        let r = q.rem(&f.to_qpoly());
        FieldElement {
            coords: (0..n).map(|i| r.coeff(i)).collect(),
        }
    }

    pub fn from_coords(coords: Vec<BigRational>) -> Self {
        FieldElement { coords }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        FieldElement {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        FieldElement {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self, f: &IntPoly) -> Self {
        Self::from_qpoly(&self.to_qpoly().mul(&other.to_qpoly()), f)
    }

    /// Inverse via the extended Euclidean algorithm against `f`; `None` for 0.
    pub fn inv(&self, f: &IntPoly) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (mut r0, mut r1) = (f.to_qpoly(), self.to_qpoly());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero");
            (r0, r1) = (r1, r);
            let t2 = t0.sub(&q.mul(&t1));
            (t0, t1) = (t1, t2);
        }
        // r0 is a nonzero constant because f is irreducible
        debug_assert_eq!(r0.deg(), 0);
        let c = r0.coeff(0).recip();
        Some(Self::from_qpoly(&t0.scale(&c), f))
    }

    pub fn pow(&self, mut k: u64, f: &IntPoly) -> Self {
        let mut acc = Self::one(self.coords.len());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            k >>= 1;
        }
        acc
    }

    /// `g(self)` for an integer polynomial `g`.
    pub fn eval_poly(&self, g: &IntPoly, f: &IntPoly) -> Self {
        let n = self.coords.len();
        g.coeffs().iter().rev().fold(Self::zero(n), |acc, c| {
            acc.mul(self, f).add(&Self::from_int(c.clone(), n))
        })
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match j {
                0 => format!("{c}"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{j}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(FieldElement::from_coords)
    }
}
