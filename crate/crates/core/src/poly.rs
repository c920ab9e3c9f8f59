//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept strictly descending in the ring's monomial order with no zero
//! coefficients, so structural equality is polynomial equality and the
//! [`Display`](std::fmt::Display) form is canonical.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::{Coeff, Field};
use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::ring::PolyRing;

pub type Term = (Monomial, Coeff);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: PolyRing,
    terms: Vec<Term>,
}

pub(crate) fn check_same_ring(a: &PolyRing, b: &PolyRing) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(AlgebraError::RingMismatch {
            left: format!("{a:?}"),
            right: format!("{b:?}"),
        })
    }
}

impl Polynomial {
    pub fn zero(ring: &PolyRing) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &PolyRing, c: Coeff) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &PolyRing) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &PolyRing, n: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(n))
    }

    pub fn monomial(ring: &PolyRing, m: Monomial, c: Coeff) -> Self {
        debug_assert_eq!(m.len(), ring.nvars());
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &PolyRing, name: &str) -> Result<Self> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(ring, i))
    }

    pub fn var_at(ring: &PolyRing, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index), ring.field().one())
    }

    /// Normalizes an arbitrary term list: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &PolyRing, mut terms: Vec<Term>) -> Self {
        let field = ring.field();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(&last.1, &c),
                _ => {
                    if let Some(last) = out.last() {
                        if field.is_zero(&last.1) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if field.is_zero(&last.1) {
                out.pop();
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Wraps terms already strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted(ring: &PolyRing, terms: Vec<Term>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn uses_var(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[index] > 0)
    }

    /// Degree in the variable at `index`.
    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponents()[index])
            .max()
            .unwrap_or(0)
    }

    /// True when every term has the same total degree in the variables at `indices`.
    pub fn is_homogeneous_in(&self, indices: &[usize]) -> bool {
        let deg = |m: &Monomial| -> u64 { indices.iter().map(|&i| m.exponents()[i] as u64).sum() };
        let mut it = self.terms.iter().map(|(m, _)| deg(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let field = self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let take_b = |c: &Coeff| {
            if negate_other {
                field.neg(c)
            } else {
                c.clone()
            }
        };
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), take_b(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        field.sub(&a[i].1, &b[j].1)
                    } else {
                        field.add(&a[i].1, &b[j].1)
                    };
                    if !field.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), take_b(c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_same_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_same_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_same_ring(&self.ring, &other.ring)?;
        let field = self.ring.field();
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma.checked_mul(mb)?, field.mul(ca, cb)));
            }
        }
        Ok(Self::from_terms(&self.ring, prods))
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), field.mul(c, d)))
                .collect(),
        }
    }

    /// `c * m * self`; multiplication by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Self {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, d)| (n.mul(m), field.mul(c, d)))
                .collect(),
        }
    }

    /// `self - c * m * g` in one merge pass.
    pub(crate) fn sub_mul_term(&self, c: &Coeff, m: &Monomial, g: &Self) -> Self {
        self.merge(&g.mul_term(m, c), true)
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self
                    .ring
                    .field()
                    .inv(lc)
                    .expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Removes the scalar content: over QQ the result has coprime integer
    /// coefficients and a positive leading coefficient; over GF(p) it is monic.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        match self.ring.field() {
            Field::Prime(_) => self.monic(),
            Field::Rational => {
                let mut den = BigInt::one();
                let mut num = BigInt::zero();
                for (_, c) in &self.terms {
                    if let Coeff::Rational(q) = c {
                        den = den.lcm(q.denom());
                        num = num.gcd(q.numer());
                    }
                }
                let mut factor = BigRational::new(den, num);
                if self.ring.field().is_negative(self.leading_coeff().unwrap()) {
                    factor = -factor;
                }
                self.scale(&Coeff::Rational(factor))
            }
        }
    }

    /// Scalar content as a rational number (1 over GF(p)).
    pub fn content(&self) -> Coeff {
        if self.is_zero() {
            return self.ring.field().one();
        }
        let p = self.primitive();
        let field = self.ring.field();
        field
            .div(&self.terms[0].1, &p.terms[0].1)
            .expect("primitive part has nonzero leading coefficient")
    }

    /// Multivariate division with first-match tie-breaking in divisor order.
    ///
    /// Returns `(quotients, remainder)` with `self = Σ q_i d_i + r` and no term of
    /// `r` divisible by any leading monomial of the divisors.
    pub fn divide(&self, divisors: &[Polynomial]) -> Result<(Vec<Polynomial>, Polynomial)> {
        for d in divisors {
            check_same_ring(&self.ring, &d.ring)?;
            if d.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
        }
        let field = self.ring.field();
        let inv_lcs: Vec<Coeff> = divisors
            .iter()
            .map(|d| field.inv(d.leading_coeff().unwrap()).unwrap())
            .collect();
        let mut quotients: Vec<Vec<Term>> = vec![Vec::new(); divisors.len()];
        let mut rem = Vec::new();
        let mut p = self.clone();
        while let Some((lm, lc)) = p.terms.first().cloned() {
            let hit = divisors
                .iter()
                .enumerate()
                .find_map(|(i, d)| d.leading_monomial().unwrap().div(&lm).map(|q| (i, q)));
            match hit {
                Some((i, q)) => {
                    let c = field.mul(&lc, &inv_lcs[i]);
                    p = p.sub_mul_term(&c, &q, &divisors[i]);
                    quotients[i].push((q, c));
                }
                None => {
                    rem.extend(p.pop_leading());
                }
            }
        }
        let quotients = quotients
            .into_iter()
            .map(|t| Polynomial::from_terms(&self.ring, t))
            .collect();
        Ok((
            quotients,
            Polynomial {
                ring: self.ring.clone(),
                terms: rem,
            },
        ))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        let (mut q, r) = self.divide(std::slice::from_ref(d))?;
        Ok(if r.is_zero() { Some(q.remove(0)) } else { None })
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn to_ring(&self, target: &PolyRing) -> Result<Polynomial> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        if self.ring.field() != target.field() {
            return Err(AlgebraError::RingMismatch {
                left: format!("{:?}", self.ring),
                right: format!("{target:?}"),
            });
        }
        let src = self.ring.vars();
        for (i, v) in src.iter().enumerate() {
            if target.var_index(v).is_none() && self.uses_var(i) {
                return Err(AlgebraError::UnknownVariable(v.clone()));
            }
        }
        let map: Vec<Option<usize>> = target
            .vars()
            .iter()
            .map(|v| self.ring.var_index(v))
            .collect();
        Ok(self.permute_into(target, &map))
    }

    /// Reindexes exponents (see [`Monomial::permuted`]) and re-sorts in `target`.
    pub(crate) fn permute_into(&self, target: &PolyRing, map: &[Option<usize>]) -> Polynomial {
        Polynomial::from_terms(
            target,
            self.terms
                .iter()
                .map(|(m, c)| (m.permuted(map), c.clone()))
                .collect(),
        )
    }

    /// Reduces a rational polynomial into a ring over GF(p) with the same
    /// variables. `None` when some denominator is divisible by p.
    pub fn reduce_into(&self, target: &PolyRing) -> Option<Polynomial> {
        let field = target.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        let map: Vec<Option<usize>> = target
            .vars()
            .iter()
            .map(|v| self.ring.var_index(v))
            .collect();
        for (m, c) in &self.terms {
            let c = match c {
                Coeff::Rational(q) => field.reduce_rational(q)?,
                Coeff::Modular(v) => field.from_i64(*v as i64),
            };
            terms.push((m.permuted(&map), c));
        }
        Some(Polynomial::from_terms(target, terms))
    }

    /// Evaluates with every variable replaced by the given polynomial of
    /// another (common) ring.
    pub fn substitute(&self, images: &[Polynomial], target: &PolyRing) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(AlgebraError::InvalidArgument(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        for im in images {
            check_same_ring(im.ring(), target)?;
        }
        let tf = target.field();
        let mut acc = Polynomial::zero(target);
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        for (m, c) in &self.terms {
            let c = match c {
                Coeff::Rational(q) => tf.reduce_rational(q).ok_or(AlgebraError::DivisionByZero)?,
                Coeff::Modular(v) => tf.from_i64(*v as i64),
            };
            let mut term = Polynomial::constant(target, c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().try_mul(&cache[1])?;
                    cache.push(next);
                }
                term = term.try_mul(&cache[e as usize])?;
            }
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    /// Panics on ring mismatch; see [`Polynomial::try_add`].
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_mul(rhs)
            .expect("ring mismatch or exponent overflow")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&self.ring.field().from_i64(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (v, &e) in vars.iter().zip(m.exponents()) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            f.write_str(v)?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.ring.field();
        let vars = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = field.is_negative(c);
            let abs = if negative { field.neg(c) } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !field.is_one(&abs) {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, vars, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// True when `a` is a nonzero scalar multiple of `b`.
pub fn associated(a: &Polynomial, b: &Polynomial) -> bool {
    a.ring == b.ring && a.primitive() == b.primitive()
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn is<T: Send + Sync>() {}
    is::<Polynomial>();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;

    fn ring(vars: &[&str]) -> PolyRing {
        PolyRing::rational(vars).unwrap()
    }

    fn v(r: &PolyRing, n: &str) -> Polynomial {
        Polynomial::var(r, n).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn adding_zero_is_identity() {
        let r = ring(&["x", "y"]);
        let p = &(&v(&r, "x") * &v(&r, "y")) + &Polynomial::from_i64(&r, 3);
        assert_eq!(&p + &Polynomial::zero(&r), p);
    }

    #[test]
    fn prime_field_product() {
        let r = PolyRing::new(Field::prime(5).unwrap(), &["x"], MonomialOrder::Grevlex).unwrap();
        let x = v(&r, "x");
        let p = &x.scale(&r.field().from_i64(2)) * &x.scale(&r.field().from_i64(3));
        assert_eq!(p, &x * &x);
        assert_eq!(p.to_string(), "x^2");
    }

    #[test]
    fn cross_ring_arithmetic_is_rejected() {
        let a = ring(&["x", "y"]);
        let b = ring(&["x", "z"]);
        assert!(matches!(
            v(&a, "x").try_add(&v(&b, "x")),
            Err(AlgebraError::RingMismatch { .. })
        ));
    }

    #[test]
    fn division_examples() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let (q, rem) = (&x * &x).divide(&[x.clone(), y.clone()]).unwrap();
        assert_eq!(q, vec![x.clone(), Polynomial::zero(&r)]);
        assert!(rem.is_zero());

        let p = &(&(&x * &x) * &y) + &Polynomial::one(&r);
        let (q, rem) = p.divide(std::slice::from_ref(&x)).unwrap();
        assert_eq!(q, vec![&x * &y]);
        assert_eq!(rem, Polynomial::one(&r));
    }

    #[test]
    fn division_of_the_rees_binomial() {
        let r = PolyRing::new(Field::Rational, &["x", "y", "u", "v"], MonomialOrder::Lex).unwrap();
        let (x, y, u, vv) = (v(&r, "x"), v(&r, "y"), v(&r, "u"), v(&r, "v"));
        let p = &(&x * &vv) - &(&y * &u);
        let (q, rem) = p.divide(&[vv.clone(), u.clone()]).unwrap();
        assert!(rem.is_zero());
        assert_eq!(q, vec![x.clone(), -&y]);
    }

    #[test]
    fn rendering_is_canonical() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let half = Coeff::Rational(BigRational::new(BigInt::from(-3), BigInt::from(2)));
        let p = &(&x.pow(2).unwrap() + &(&x * &y).scale(&half)) + &Polynomial::one(&r);
        assert_eq!(p.to_string(), "x^2 - 3/2*x*y + 1");
        assert_eq!((-&x).to_string(), "-x");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let c = Coeff::Rational(BigRational::new(BigInt::from(-2), BigInt::from(3)));
        let p = (&x + &y.scale(&r.field().from_i64(2))).scale(&c);
        assert_eq!(p.primitive().to_string(), "x + 2*y");
        assert!(associated(&p, &(&x + &y.scale(&r.field().from_i64(2)))));
    }

    #[test]
    fn ring_transfer_by_name() {
        let r = ring(&["x", "y"]);
        let s = r
            .extend(
                &["u", "v"],
                crate::ring::Position::Back,
                MonomialOrder::Grevlex,
            )
            .unwrap();
        let p = &v(&r, "x") + &v(&r, "y");
        let q = p.to_ring(&s).unwrap();
        assert_eq!(q.terms()[0].0.exponents(), &[1, 0, 0, 0]);
        assert_eq!(q.to_ring(&r).unwrap(), p);
        assert!(v(&s, "u").to_ring(&r).is_err());
    }
}
