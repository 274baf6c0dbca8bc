//! Rational functions in canonical form.
//!
//! The canonical form has a monic denominator and gcd-free numerator and
//! denominator, so equality of values is structural equality of the
//! representation. Zero is `0/1`.

use std::fmt;

use super::nf::{NFElement, NumberField};
use super::poly::Poly;
use crate::{Error, Result};

/// Quotient of two polynomials over a number field, kept reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds `num/den` in canonical form. Errors on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            let field = num.field().clone();
            return Ok(RatFunc { num, den: Poly::one(field) });
        }
        let g = num.gcd(&den)?;
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let lead_inv = den.leading().unwrap().invert()?;
        den = den.mul_elem(&lead_inv);
        num = num.mul_elem(&lead_inv);
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        let field = p.field().clone();
        RatFunc { num: p, den: Poly::one(field) }
    }

    pub fn zero(field: NumberField) -> Self {
        RatFunc { num: Poly::zero(field.clone()), den: Poly::one(field) }
    }

    pub fn one(field: NumberField) -> Self {
        RatFunc { num: Poly::one(field.clone()), den: Poly::one(field) }
    }

    pub fn constant(c: NFElement) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn variable(field: NumberField) -> Self {
        RatFunc::from_poly(Poly::variable(field))
    }

    pub fn field(&self) -> &NumberField {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Returns the underlying polynomial when the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.degree() == Some(0) {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominators")
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn mul_elem(&self, c: &NFElement) -> Self {
        RatFunc::new(self.num.mul_elem(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Substitution `t -> c * t`.
    pub fn scale_var(&self, c: &NFElement) -> Self {
        RatFunc::new(self.num.scale_var(c), self.den.scale_var(c)).expect("nonzero denominator")
    }

    /// Maps coefficients into a larger tower.
    pub fn embed(&self, target: &NumberField) -> Result<Self> {
        RatFunc::new(self.num.embed(target)?, self.den.embed(target)?)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::nf::{rat, NumberField};

    fn q() -> NumberField {
        NumberField::rationals()
    }

    #[test]
    fn cancellation() {
        // (t^2 - 1)/(t - 1) -> t + 1.
        let r = RatFunc::new(Poly::from_ints(&q(), &[-1, 0, 1]), Poly::from_ints(&q(), &[-1, 1]))
            .unwrap();
        assert_eq!(r.as_poly().unwrap(), &Poly::from_ints(&q(), &[1, 1]));
    }

    #[test]
    fn zero_over_anything() {
        let r = RatFunc::new(Poly::zero(q()), Poly::from_ints(&q(), &[0, 0, 0, 1])).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.den(), &Poly::one(q()));
    }

    #[test]
    fn monic_denominator_convention() {
        // (2t)/4 -> ((1/2) t) / 1.
        let r = RatFunc::new(Poly::from_ints(&q(), &[0, 2]), Poly::from_ints(&q(), &[4])).unwrap();
        assert_eq!(r.as_poly().unwrap(), &Poly::from_rats(&q(), &[rat(0, 1), rat(1, 2)]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RatFunc::new(Poly::one(q()), Poly::zero(q())),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn reciprocal_product_is_one() {
        let a = RatFunc::new(Poly::from_ints(&q(), &[1, 2, 3]), Poly::from_ints(&q(), &[5, 1]))
            .unwrap();
        let b = a.invert().unwrap();
        let prod = a.mul(&b);
        assert_eq!(prod, RatFunc::one(q()));
    }
}
