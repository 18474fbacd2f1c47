//! Exact arithmetic: big integers and rationals, univariate polynomials over
//! ℤ, ℚ and prime fields, and their factorization.

mod int_poly;
mod mod_poly;
pub mod primes;
mod rat_poly;
pub mod residue;
mod zassenhaus;

pub use int_poly::{bareiss_det, IntPoly};
pub use mod_poly::ModPoly;
pub use rat_poly::QPoly;
pub use zassenhaus::{factor_over_q, factors_up_to_degree};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("divisor leading coefficient is not a unit")]
    NonUnitLeading,
}

/// `unit * prod factor^mult` equals the factored polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<P, U> {
    pub unit: U,
    pub factors: Vec<(P, u32)>,
}

impl<P, U> Factorization<P, U> {
    pub fn is_irreducible(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    pub fn degrees(&self) -> Vec<usize>
    where
        P: Degree,
    {
        self.factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.degree_of(), *m as usize))
            .collect()
    }
}

/// Degree accessor shared by the polynomial types.
pub trait Degree {
    fn degree_of(&self) -> usize;
}

impl Degree for ModPoly {
    fn degree_of(&self) -> usize {
        self.deg()
    }
}

impl Degree for IntPoly {
    fn degree_of(&self) -> usize {
        self.deg()
    }
}

/// `factor_mod_p` in free-function form.
pub fn factor_mod_p(g: &ModPoly) -> Result<Factorization<ModPoly, u64>, AlgebraError> {
    g.factor()
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    IntPoly::cyclotomic(n)
}
