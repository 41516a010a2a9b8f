//! Dense univariate polynomials over `Q`, coefficients from the constant term up.

use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, z: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * z + c)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("non-zero polynomial")
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        Poly(self.0.iter().map(|c| c / &l).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.0.clone();
        let mut quot = vec![BigRational::zero(); r.len().saturating_sub(dd)];
        let lead = d.lead();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let c = r.last().unwrap() / lead;
            for (i, dc) in d.0.iter().enumerate() {
                r[shift + i] -= &c * dc;
            }
            quot[shift] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Poly::new(quot), Poly::new(r))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).cloned().unwrap_or_else(BigRational::zero);
        Poly::new((0..len).map(|i| get(self, i) - get(other, i)).collect())
    }

    pub fn is_constant_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    #[test]
    fn gcd_and_division() {
        // (z - 1)(z + 2) and (z - 1)(z - 3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[2, 1]));
        assert!(r.is_zero());
        assert!(p(&[1, 1]).gcd(&p(&[2])).is_constant_one());
        assert_eq!(p(&[0, 0, 3]).gcd(&Poly::zero()), p(&[0, 0, 1]));
        assert_eq!(p(&[1, 2, 3]).eval(&BigRational::from_integer(2.into())), BigRational::from_integer(17.into()));
        assert_eq!(p(&[0, 0]).degree(), None);
    }
}
