//! Exact coefficient fields: the rationals and prime fields `GF(p)`.
//!
//! Coefficients are a small tagged union; every arithmetic call goes through the
//! [`Field`] that owns them so that a polynomial ring can mix neither fields nor
//! moduli.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};

/// Largest admissible modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Modular(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(AlgebraError::InvalidModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rational => Coeff::Rational(BigRational::zero()),
            Field::Prime(_) => Coeff::Modular(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            Field::Rational => Coeff::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Coeff::Modular(n.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            Field::Rational => Coeff::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Coeff::Modular(r.to_u64().expect("residue fits"))
            }
        }
    }

    /// Builds `num/den`; fails when `den` vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        match self {
            Field::Rational => {
                if den.is_zero() {
                    return Err(AlgebraError::DivisionByZero);
                }
                Ok(Coeff::Rational(BigRational::new(num.clone(), den.clone())))
            }
            Field::Prime(_) => {
                let d = self.from_bigint(den);
                if self.is_zero(&d) {
                    return Err(AlgebraError::DivisionByZero);
                }
                Ok(self.mul(&self.from_bigint(num), &self.inv(&d)?))
            }
        }
    }

    /// Maps a rational coefficient into this field (reduction mod p). `None`
    /// when the denominator is divisible by p.
    pub fn reduce_rational(&self, q: &BigRational) -> Option<Coeff> {
        self.from_ratio(q.numer(), q.denom()).ok()
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rational(q) => q.is_zero(),
            Coeff::Modular(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rational(q) => q.is_one(),
            Coeff::Modular(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rational, Coeff::Rational(x), Coeff::Rational(y)) => Coeff::Rational(x + y),
            (Field::Prime(p), Coeff::Modular(x), Coeff::Modular(y)) => Coeff::Modular((x + y) % p),
            _ => panic!("coefficient from a foreign field"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Rational, Coeff::Rational(x)) => Coeff::Rational(-x),
            (Field::Prime(p), Coeff::Modular(x)) => Coeff::Modular((p - x) % p),
            _ => panic!("coefficient from a foreign field"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rational, Coeff::Rational(x), Coeff::Rational(y)) => Coeff::Rational(x * y),
            (Field::Prime(p), Coeff::Modular(x), Coeff::Modular(y)) => Coeff::Modular(x * y % p),
            _ => panic!("coefficient from a foreign field"),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if self.is_zero(a) {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match (self, a) {
            (Field::Rational, Coeff::Rational(x)) => Coeff::Rational(x.recip()),
            (Field::Prime(p), Coeff::Modular(x)) => Coeff::Modular(mod_pow(*x, p - 2, *p)),
            _ => panic!("coefficient from a foreign field"),
        })
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn is_negative(&self, a: &Coeff) -> bool {
        matches!(a, Coeff::Rational(q) if q.is_negative())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Modular(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let q = Field::Rational;
        let a = q.from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(a.to_string(), "-3/2");
        let b = q.add(
            &a,
            &q.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap(),
        );
        assert_eq!(b.to_string(), "-1");
    }

    #[test]
    fn modular_arithmetic() {
        let f = Field::prime(5).unwrap();
        let six = f.mul(&f.from_i64(2), &f.from_i64(3));
        assert_eq!(six, Coeff::Modular(1));
        assert_eq!(f.from_i64(-1), Coeff::Modular(4));
        let inv3 = f.inv(&f.from_i64(3)).unwrap();
        assert_eq!(f.mul(&inv3, &f.from_i64(3)), f.one());
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn moduli_are_validated() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(MAX_MODULUS).is_err());
        assert!(Field::prime(2_147_483_647).is_ok());
    }

    #[test]
    fn reduction_rejects_bad_denominators() {
        let f = Field::prime(7).unwrap();
        let q = BigRational::new(BigInt::from(1), BigInt::from(14));
        assert!(f.reduce_rational(&q).is_none());
        let q = BigRational::new(BigInt::from(3), BigInt::from(2));
        assert_eq!(f.reduce_rational(&q), Some(Coeff::Modular(5)));
    }
}
