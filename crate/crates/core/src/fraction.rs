//! Elements of the fraction field of a polynomial ring, kept as unreduced
//! numerator/denominator pairs (no multivariate gcd is taken).

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::monomial::{Exponent, Monomial};
use crate::poly::{check_same_ring, Polynomial};
use crate::ring::PolyRing;

#[derive(Clone, PartialEq, Eq)]
pub struct Fraction {
    num: Polynomial,
    den: Polynomial,
}

impl Fraction {
    /// `num/den` with common monomial factors cancelled and the scalar content
    /// moved out of the denominator; an exact quotient collapses to a polynomial.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        check_same_ring(num.ring(), den.ring())?;
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (num, den) = cancel_monomial(num, den);
        if !den.is_constant() {
            if let Some(q) = num.exact_div(&den)? {
                return Ok(Fraction::from_poly(q));
            }
        }
        let field = den.ring().field();
        let c = den.content();
        let inv = field.inv(&c)?;
        Ok(Fraction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let one = Polynomial::one(p.ring());
        Fraction { num: p, den: one }
    }

    pub fn ring(&self) -> &PolyRing {
        self.num.ring()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &Fraction) -> Result<Fraction> {
        Fraction::new(self.num.try_mul(&other.num)?, self.den.try_mul(&other.den)?)
    }

    pub fn add(&self, other: &Fraction) -> Result<Fraction> {
        let num = self
            .num
            .try_mul(&other.den)?
            .try_add(&other.num.try_mul(&self.den)?)?;
        Fraction::new(num, self.den.try_mul(&other.den)?)
    }

    pub fn inv(&self) -> Result<Fraction> {
        Fraction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Fraction) -> Result<Fraction> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, n: u32) -> Result<Fraction> {
        Fraction::new(self.num.pow(n)?, self.den.pow(n)?)
    }

    /// Equality in the fraction field: `a/b = c/d` iff `ad - bc = 0`.
    pub fn equals(&self, other: &Fraction) -> Result<bool> {
        let lhs = self.num.try_mul(&other.den)?;
        let rhs = other.num.try_mul(&self.den)?;
        Ok(lhs == rhs)
    }

    /// The numerator when the denominator is a scalar.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        if self.den.is_constant() {
            let inv = self.ring().field().inv(self.den.leading_coeff()?).ok()?;
            Some(self.num.scale(&inv))
        } else {
            None
        }
    }
}

/// Divides both sides by the largest monomial dividing every term of each.
fn cancel_monomial(num: Polynomial, den: Polynomial) -> (Polynomial, Polynomial) {
    if num.is_zero() {
        return (num, den);
    }
    let mut g: Vec<Exponent> = den.terms()[0].0.exponents().to_vec();
    for (m, _) in num.terms().iter().chain(den.terms()) {
        for (a, b) in g.iter_mut().zip(m.exponents()) {
            *a = (*a).min(*b);
        }
    }
    if g.iter().all(|&e| e == 0) {
        return (num, den);
    }
    let g = Monomial::from_exponents(&g);
    let strip = |p: &Polynomial| {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| (g.div(m).expect("common factor"), c.clone()))
            .collect();
        Polynomial::from_terms(p.ring(), terms)
    };
    (strip(&num), strip(&den))
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_polynomial() {
            return write!(f, "{p}");
        }
        let wrap = |p: &Polynomial| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        let den = self.den.to_string();
        if den.contains(['*', ' ']) {
            write!(f, "{}/({den})", wrap(&self.num))
        } else {
            write!(f, "{}/{den}", wrap(&self.num))
        }
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations() {
        let r = PolyRing::rational(&["x", "y"]).unwrap();
        let x = Polynomial::var(&r, "x").unwrap();
        let y = Polynomial::var(&r, "y").unwrap();
        let a = Fraction::new(y.clone(), x.clone()).unwrap();
        let b = Fraction::new(x.clone(), y.clone()).unwrap();
        let one = a.mul(&b).unwrap();
        assert!(one
            .equals(&Fraction::from_poly(Polynomial::one(&r)))
            .unwrap());
        assert_eq!(a.to_string(), "y/x");
        let two = Polynomial::from_i64(&r, 2);
        let c = Fraction::new(y.clone(), x.scale(&r.field().from_i64(2))).unwrap();
        assert_eq!(c.den(), &x);
        assert!(c.add(&c).unwrap().equals(&a).unwrap());
        assert!(Fraction::new(two, Polynomial::zero(&r)).is_err());
        let xy = &x * &y;
        let c = Fraction::new(&xy + &(&x * &x), &(&x * &x) * &y).unwrap();
        assert_eq!(c.to_string(), "(x + y)/(x*y)");
    }
}
