//! Dense univariate polynomials over a number field.
//!
//! Coefficients are stored low degree first with no trailing zeros; the
//! zero polynomial has an empty coefficient vector. Degrees in play stay
//! small (at most a few dozen), so the dense representation is the simple
//! and adequate choice.

use std::fmt;

use num_traits::{One, Zero};

use super::nf::{NFElement, NumberField, Rat};
use crate::{Error, Result};

/// Polynomial in one variable over a fixed number field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: NumberField,
    coeffs: Vec<NFElement>,
}

impl Poly {
    /// Builds a polynomial, dropping trailing zeros.
    pub fn new(field: NumberField, mut coeffs: Vec<NFElement>) -> Self {
        for c in &coeffs {
            assert!(c.field() == &field, "coefficient field mismatch");
        }
        while coeffs.last().map_or(false, NFElement::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: NumberField) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: NumberField) -> Self {
        let one = field.one();
        Poly { field, coeffs: vec![one] }
    }

    pub fn constant(c: NFElement) -> Self {
        Poly::new(c.field().clone(), vec![c])
    }

    /// The variable `t`.
    pub fn variable(field: NumberField) -> Self {
        let coeffs = vec![field.zero(), field.one()];
        Poly { field, coeffs }
    }

    /// Monomial `c * t^k`.
    pub fn monomial(c: NFElement, k: usize) -> Self {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::new(field, coeffs)
    }

    /// Polynomial with rational coefficients, low degree first.
    pub fn from_rats(field: &NumberField, coeffs: &[Rat]) -> Self {
        let cs = coeffs.iter().map(|q| field.from_rat(q.clone())).collect();
        Poly::new(field.clone(), cs)
    }

    /// Polynomial with integer coefficients, low degree first.
    pub fn from_ints(field: &NumberField, coeffs: &[i64]) -> Self {
        let cs = coeffs.iter().map(|&n| field.from_int(n)).collect();
        Poly::new(field.clone(), cs)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> NFElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[NFElement] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&NFElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, NFElement::is_one)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        Poly::new(self.field.clone(), out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&other.coeff(i)));
        }
        Poly::new(self.field.clone(), out)
    }

    pub fn neg(&self) -> Self {
        Poly { field: self.field.clone(), coeffs: self.coeffs.iter().map(NFElement::neg).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.field.clone(), out)
    }

    pub fn mul_elem(&self, c: &NFElement) -> Self {
        if c.is_zero() {
            return Poly::zero(self.field.clone());
        }
        Poly::new(self.field.clone(), self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul_rat(&self, q: &Rat) -> Self {
        if q.is_zero() {
            return Poly::zero(self.field.clone());
        }
        Poly::new(self.field.clone(), self.coeffs.iter().map(|a| a.mul_rat(q)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one(self.field.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Division with remainder. The divisor's leading coefficient must be
    /// invertible (true in a field unless the divisor is zero).
    pub fn divrem(&self, den: &Self) -> Result<(Self, Self)> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dlead = den.leading().unwrap().invert()?;
        let ddeg = den.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![
            self.field.zero();
            if rem.len() > ddeg { rem.len() - ddeg } else { 0 }
        ];
        while rem.len() > ddeg {
            let k = rem.len() - 1 - ddeg;
            let c = rem.last().unwrap().mul(&dlead);
            if !c.is_zero() {
                for (j, d) in den.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].sub(&c.mul(d));
                }
                quot[k] = c;
            }
            rem.pop();
            while rem.last().map_or(false, NFElement::is_zero) {
                rem.pop();
            }
        }
        Ok((Poly::new(self.field.clone(), quot), Poly::new(self.field.clone(), rem)))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn exact_div(&self, den: &Self) -> Result<Self> {
        let (q, r) = self.divrem(den)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!(
                "remainder of degree {:?} survives",
                r.degree()
            )));
        }
        Ok(q)
    }

    /// Monic multiple: divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = self.leading().unwrap().invert()?;
        Ok(self.mul_elem(&inv))
    }

    /// Monic gcd via the Euclidean algorithm; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.field.clone());
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul_rat(&Rat::from_integer(i.into())));
        }
        Poly::new(self.field.clone(), out)
    }

    pub fn eval(&self, x: &NFElement) -> NFElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitution `t -> c * t`.
    pub fn scale_var(&self, c: &NFElement) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut pow = self.field.one();
        for a in &self.coeffs {
            out.push(a.mul(&pow));
            pow = pow.mul(c);
        }
        Poly::new(self.field.clone(), out)
    }

    /// Substitution `t -> t^k` for k >= 1.
    pub fn subst_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![self.field.zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Poly::new(self.field.clone(), out)
    }

    /// Composition `self(other(t))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Poly::zero(self.field.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(other).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Order of vanishing at a monic polynomial `pi` (exact multiplicity
    /// of `pi` as a factor). Errors on the zero polynomial.
    pub fn valuation_at(&self, pi: &Self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut v = 0usize;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(pi)?;
            if r.is_zero() {
                v += 1;
                cur = q;
            } else {
                return Ok(v);
            }
        }
    }

    /// Maps coefficients into a larger tower.
    pub fn embed(&self, target: &NumberField) -> Result<Self> {
        let coeffs: Result<Vec<_>> = self.coeffs.iter().map(|c| target.embed(c)).collect();
        Ok(Poly::new(target.clone(), coeffs?))
    }

    /// Renders with a chosen variable name.
    pub fn to_string_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(bool, String)> = Vec::new(); // (negative, body)
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = match c.as_rat() {
                Some(q) => {
                    let neg = q < Rat::zero();
                    let a = if neg { -q.clone() } else { q.clone() };
                    (neg, a)
                }
                None => (false, Rat::one()),
            };
            let coeff_str = match c.as_rat() {
                Some(_) => {
                    if mag.is_one() && i > 0 {
                        String::new()
                    } else {
                        format!("{mag}")
                    }
                }
                None => format!("({c})"),
            };
            let body = match i {
                0 => {
                    if coeff_str.is_empty() {
                        "1".to_string()
                    } else {
                        coeff_str
                    }
                }
                1 => {
                    if coeff_str.is_empty() {
                        var.to_string()
                    } else {
                        format!("{coeff_str} {var}")
                    }
                }
                _ => {
                    if coeff_str.is_empty() {
                        format!("{var}^{i}")
                    } else {
                        format!("{coeff_str} {var}^{i}")
                    }
                }
            };
            terms.push((neg, body));
        }
        let mut s = String::new();
        for (k, (neg, body)) in terms.iter().enumerate() {
            if k == 0 {
                if *neg {
                    s.push('-');
                }
            } else if *neg {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            s.push_str(body);
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    #[test]
    fn divrem_and_gcd() {
        // (t^2 - 1) / (t - 1) = t + 1 exactly.
        let num = Poly::from_ints(&q(), &[-1, 0, 1]);
        let den = Poly::from_ints(&q(), &[-1, 1]);
        let (quot, rem) = num.divrem(&den).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quot, Poly::from_ints(&q(), &[1, 1]));

        let g = num.gcd(&den).unwrap();
        assert_eq!(g, Poly::from_ints(&q(), &[-1, 1]));
    }

    #[test]
    fn valuation() {
        // t^3 (t - 2)^2 has valuation 3 at t and 2 at t - 2.
        let f = Poly::from_ints(&q(), &[0, 0, 0, 1]).mul(&Poly::from_ints(&q(), &[-2, 1]).pow(2));
        let t = Poly::variable(q());
        assert_eq!(f.valuation_at(&t).unwrap(), 3);
        assert_eq!(f.valuation_at(&Poly::from_ints(&q(), &[-2, 1])).unwrap(), 2);
        assert_eq!(f.valuation_at(&Poly::from_ints(&q(), &[-1, 1])).unwrap(), 0);
    }

    #[test]
    fn substitution() {
        let f = Poly::from_ints(&q(), &[1, 2, 3]); // 3t^2 + 2t + 1
        let g = f.subst_power(5);
        assert_eq!(g.degree(), Some(10));
        assert_eq!(g.coeff(5), q().from_int(2));
        let two = q().from_int(2);
        let h = f.scale_var(&two); // 12t^2 + 4t + 1
        assert_eq!(h, Poly::from_ints(&q(), &[1, 4, 12]));
    }

    #[test]
    fn display_round() {
        let f = Poly::from_ints(&q(), &[2, 0, -1]);
        assert_eq!(f.to_string(), "-t^2 + 2");
    }
}
