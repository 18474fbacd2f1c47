//! Norm-based (Trager) factor detection over `K = ℚ[t]/(f)`.
//!
//! For a squarefree `g` and a shift `c` with `N_c(x) = Norm(g(x - c t))`
//! squarefree, the ℚ-irreducible factors `N_i` of `N_c` correspond to the
//! K-irreducible factors `G_i = gcd(g(x), N_i(x + c t))` of `g`, with
//! `deg N_i = [K:ℚ] deg G_i`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::FieldElement;
use crate::algebra::{factor_over_q, factors_up_to_degree, IntPoly};

const MAX_SHIFT: i64 = 64;

/// `a^{d-1} g(x/a)` for leading coefficient `a`: monic with roots `a * beta`.
pub fn monic_integral(g: &IntPoly) -> IntPoly {
    let lc = g.leading();
    if lc.is_one() {
        return g.clone();
    }
    let d = g.deg();
    // coefficient i picks up lc^{d-1-i}
    let mut out = vec![BigInt::zero(); d + 1];
    let mut pw = BigInt::one();
    for i in (0..d).rev() {
        out[i] = g.coeff(i) * &pw;
        pw *= &lc;
    }
    out[d] = BigInt::one();
    IntPoly::new(out)
}

/// Smallest `c >= 0` with `Norm(g(x - c t))` squarefree, for monic
/// squarefree `g`. `None` if no shift up to the search cap works.
pub fn squarefree_norm(f: &IntPoly, g: &IntPoly) -> Option<(i64, IntPoly)> {
    (0..=MAX_SHIFT).find_map(|c| {
        let n = IntPoly::composed_sum(g, f, c);
        n.is_squarefree().then_some((c, n))
    })
}

/// Polynomial in `x` with coefficients in K.
#[derive(Clone, Debug, PartialEq)]
pub struct KPoly {
    coeffs: Vec<FieldElement>,
}

impl KPoly {
    fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        KPoly { coeffs }
    }

    pub fn from_int(g: &IntPoly, n: usize) -> Self {
        Self::new(
            g.coeffs()
                .iter()
                .map(|c| FieldElement::from_int(c.clone(), n))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn monic(&self, f: &IntPoly) -> Self {
        let inv = self.coeffs.last().expect("nonzero").inv(f).expect("field");
        Self::new(self.coeffs.iter().map(|c| c.mul(&inv, f)).collect())
    }

    fn rem(&self, d: &Self, f: &IntPoly) -> Self {
        let dd = d.deg();
        let n = f.deg();
        if self.coeffs.len() < d.coeffs.len() {
            return self.clone();
        }
        let inv = d.coeffs.last().expect("nonzero").inv(f).expect("field");
        let mut rem = self.coeffs.clone();
        for k in (0..=self.deg() - dd).rev() {
            let c = rem[k + dd].mul(&inv, f);
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(b, f));
            }
        }
        rem.truncate(dd);
        if rem.is_empty() {
            rem.push(FieldElement::zero(n));
        }
        Self::new(rem)
    }

    pub fn gcd(&self, other: &Self, f: &IntPoly) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// `h(x + c t)` for an integer polynomial `h`.
    pub fn shifted(h: &IntPoly, c: i64, f: &IntPoly) -> Self {
        let n = f.deg();
        let shift = FieldElement::theta(f).mul(&FieldElement::from_int(BigInt::from(c), n), f);
        let lin = KPoly::new(vec![shift, FieldElement::one(n)]);
        h.coeffs().iter().rev().fold(KPoly::new(Vec::new()), |acc, a| {
            let mut prod = acc.mul(&lin, f);
            let a = FieldElement::from_int(a.clone(), n);
            if prod.coeffs.is_empty() {
                prod.coeffs.push(a);
            } else {
                prod.coeffs[0] = prod.coeffs[0].add(&a);
            }
            Self::new(prod.coeffs)
        })
    }

    fn mul(&self, other: &Self, f: &IntPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let n = f.deg();
        let mut out = vec![FieldElement::zero(n); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b, f));
            }
        }
        Self::new(out)
    }
}

/// A root in K of the integer polynomial `g`, if one exists.
pub fn find_root(f: &IntPoly, g: &IntPoly) -> Option<FieldElement> {
    let n = f.deg();
    let fac = factor_over_q(g).ok()?;
    for (h, _) in fac.factors {
        let d = h.deg();
        if d == 0 || !n.is_multiple_of(d) {
            continue;
        }
        if let Some(root) = root_of_irreducible(f, &h) {
            debug_assert!(root.eval_poly(g, f).is_zero());
            return Some(root);
        }
    }
    None
}

fn root_of_irreducible(f: &IntPoly, h: &IntPoly) -> Option<FieldElement> {
    let n = f.deg();
    if h.deg() == 1 {
        let r = num_rational::BigRational::new(-h.coeff(0), h.coeff(1));
        return Some(FieldElement::from_rational(r, n));
    }
    let hm = monic_integral(h);
    let lc = h.leading();
    let (c, norm) = squarefree_norm(f, &hm)?;
    let (found, _) = factors_up_to_degree(&norm, n);
    let hk = KPoly::from_int(&hm, n);
    for ni in found.iter().filter(|ni| ni.deg() == n) {
        let lin = hk.gcd(&KPoly::shifted(ni, c, f), f);
        if lin.deg() == 1 {
            // root of hm is lc * beta
            let beta_scaled = lin.coeffs()[0].neg();
            let inv = FieldElement::from_int(lc.clone(), n).inv(f)?;
            return Some(beta_scaled.mul(&inv, f));
        }
    }
    None
}

/// Whether `f` splits into linear factors over `ℚ[t]/(f)`.
pub fn splits_completely(f: &IntPoly) -> bool {
    let n = f.deg();
    if n <= 1 {
        return true;
    }
    let Some((_, norm)) = squarefree_norm(f, f) else {
        return false;
    };
    let (found, rest) = factors_up_to_degree(&norm, n);
    rest.deg() == 0 && found.iter().all(|g| g.deg() == n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn monic_integral_scales_roots() {
        // 2x - 1 -> x - 1 ; 3x^2 + 2x + 5 -> x^2 + 2x + 15
        assert_eq!(monic_integral(&p(&[-1, 2])), p(&[-1, 1]));
        assert_eq!(monic_integral(&p(&[5, 2, 3])), p(&[15, 2, 1]));
    }

    #[test]
    fn roots_found_and_checked() {
        let k = p(&[1, 0, 1]);
        let r = find_root(&k, &p(&[1, 0, 4])).unwrap(); // 2i
        assert!(r.eval_poly(&p(&[1, 0, 4]), &k).is_zero());
        assert!(find_root(&p(&[-5, 0, 1]), &p(&[-2, 0, 1])).is_none());
        assert!(find_root(&p(&[-1, 1]), &p(&[1, -3, 0, 1])).is_none());
        // zeta_3 in Q(zeta_9)
        let z9 = IntPoly::cyclotomic(9);
        assert!(find_root(&z9, &p(&[1, 1, 1])).is_some());
        // non-monic: 2x^2 - 1 has root 1/√2 in Q(√2)
        assert!(find_root(&p(&[-2, 0, 1]), &p(&[-1, 0, 2])).is_some());
    }

    #[test]
    fn splitting() {
        assert!(splits_completely(&p(&[1, -3, 0, 1])));
        assert!(!splits_completely(&p(&[-2, 0, 0, 1])));
        assert!(splits_completely(&IntPoly::cyclotomic(9)));
    }
}
