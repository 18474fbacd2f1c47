//! Number fields `ℚ[t]/(f)` for a monic irreducible integer polynomial `f`.

mod decompose;
mod element;
pub mod trager;

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{factor_over_q, primes, AlgebraError, IntPoly};
use crate::memo::InsertOnce;

pub use decompose::{DecompositionMethod, PrimeDecomposition};
pub use element::FieldElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberFieldError {
    #[error("defining polynomial must be monic")]
    NotMonic,
    #[error("defining polynomial {0} is reducible over Q")]
    NotIrreducible(String),
    #[error("defining polynomial must have degree at least 1")]
    Constant,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot certify the splitting of {p}: p divides the index for every tried generator")]
    IndexObstruction { p: u64 },
    #[error("polynomial is not irreducible over the base field")]
    NotIrreducibleOverK,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A number field with memoized prime splitting and local data.
pub struct NumberField {
    defining_poly: IntPoly,
    degree: usize,
    disc_defpoly: BigInt,
    label: Option<String>,
    decompositions: InsertOnce<u64, Result<PrimeDecomposition, NumberFieldError>>,
    galois: OnceLock<bool>,
    pub(crate) zeta_memo:
        InsertOnce<(u64, u32), Result<crate::local_analysis::LocalUnity, crate::local_analysis::LocalError>>,
}

impl NumberField {
    /// Validates `f` (monic, irreducible) and computes its discriminant.
    pub fn new(f: IntPoly) -> Result<Self, NumberFieldError> {
        if f.deg() == 0 {
            return Err(NumberFieldError::Constant);
        }
        if !f.is_monic() {
            return Err(NumberFieldError::NotMonic);
        }
        if !factor_over_q(&f)?.is_irreducible() {
            return Err(NumberFieldError::NotIrreducible(f.to_string()));
        }
        Ok(Self::new_unchecked(f))
    }

    fn new_unchecked(f: IntPoly) -> Self {
        NumberField {
            degree: f.deg(),
            disc_defpoly: f.discriminant(),
            defining_poly: f,
            label: None,
            decompositions: InsertOnce::new(),
            galois: OnceLock::new(),
            zeta_memo: InsertOnce::new(),
        }
    }

    /// The field ℚ, presented as `ℚ[t]/(t - 1)`.
    pub fn rationals() -> Self {
        Self::new_unchecked(IntPoly::from_i64(&[-1, 1])).with_label("Q")
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Result<Self, NumberFieldError> {
        Self::new(IntPoly::from_i64(coeffs))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn defining_poly(&self) -> &IntPoly {
        &self.defining_poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn disc_defpoly(&self) -> &BigInt {
        &self.disc_defpoly
    }

    pub fn label(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| format!("Q[t]/({})", self.defining_poly))
    }

    pub fn is_rationals(&self) -> bool {
        self.degree == 1
    }

    /// Splitting of `p`; memoized, errors included.
    pub fn decompose_prime(&self, p: u64) -> Result<PrimeDecomposition, NumberFieldError> {
        if !primes::is_prime(p) {
            return Err(NumberFieldError::NotPrime(p));
        }
        self.decompositions
            .get_or_insert_with(p, || decompose::decompose(&self.defining_poly, p))
    }

    /// At least two primes of K lie above `p`.
    pub fn p_decomposes(&self, p: u64) -> Result<bool, NumberFieldError> {
        Ok(self.decompose_prime(p)?.decomposes())
    }

    pub fn find_root(&self, g: &IntPoly) -> Option<FieldElement> {
        if g.is_zero() {
            return None;
        }
        trager::find_root(&self.defining_poly, g)
    }

    pub fn has_root_in_field(&self, g: &IntPoly) -> bool {
        self.find_root(g).is_some()
    }

    /// Normality of K over ℚ: `f` splits into linear factors over K.
    pub fn is_galois(&self) -> bool {
        *self.galois.get_or_init(|| {
            if self.quick_non_galois() {
                return false;
            }
            trager::splits_completely(&self.defining_poly)
        })
    }

    /// A good prime whose factorization pattern of `f` is not uniform
    /// rules out normality.
    fn quick_non_galois(&self) -> bool {
        let f = &self.defining_poly;
        primes::primes_from(3)
            .filter(|&p| (&self.disc_defpoly % BigInt::from(p)) != BigInt::from(0))
            .take(8)
            .any(|p| {
                let fac = f.reduce_mod(p).factor().expect("prime");
                let d0 = fac.factors[0].0.deg();
                fac.factors.iter().any(|(g, _)| g.deg() != d0)
            })
    }

    /// The absolute field `K(beta)` for a root `beta` of `g`, which must be
    /// irreducible over K. The primitive element is `beta + c t`.
    pub fn adjoin_root(&self, g: &IntPoly) -> Result<(NumberField, i64), NumberFieldError> {
        if g.deg() == 0 {
            return Err(NumberFieldError::NotIrreducibleOverK);
        }
        let gm = trager::monic_integral(&g.primitive_part());
        if !gm.is_squarefree() {
            return Err(NumberFieldError::NotIrreducibleOverK);
        }
        let (c, norm) =
            trager::squarefree_norm(&self.defining_poly, &gm).ok_or(NumberFieldError::NotIrreducibleOverK)?;
        if !factor_over_q(&norm)?.is_irreducible() {
            return Err(NumberFieldError::NotIrreducibleOverK);
        }
        Ok((Self::new_unchecked(norm), c))
    }

    /// Mutual root containment: the only field-equality test offered.
    pub fn is_isomorphic(&self, other: &NumberField) -> bool {
        self.degree == other.degree
            && self.has_root_in_field(&other.defining_poly)
            && other.has_root_in_field(&self.defining_poly)
    }
}

impl Clone for NumberField {
    fn clone(&self) -> Self {
        NumberField {
            defining_poly: self.defining_poly.clone(),
            degree: self.degree,
            disc_defpoly: self.disc_defpoly.clone(),
            label: self.label.clone(),
            decompositions: self.decompositions.clone(),
            galois: self.galois.clone(),
            zeta_memo: self.zeta_memo.clone(),
        }
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("defining_poly", &self.defining_poly)
            .field("degree", &self.degree)
            .field("disc_defpoly", &self.disc_defpoly)
            .field("label", &self.label)
            .finish()
    }
}

/// Serializable summary of a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub defining_poly: IntPoly,
    pub degree: usize,
    pub disc_defpoly: String,
    pub label: String,
}

impl From<&NumberField> for FieldSummary {
    fn from(k: &NumberField) -> Self {
        FieldSummary {
            defining_poly: k.defining_poly.clone(),
            degree: k.degree,
            disc_defpoly: k.disc_defpoly.to_string(),
            label: k.label(),
        }
    }
}
