//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};

pub type Exponent = u32;

/// Exponent vector aligned with the variables of its ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[Exponent; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[Exponent]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = 1;
        m
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.len(), other.len());
        let mut out = SmallVec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            out.push(a.checked_add(*b).ok_or(AlgebraError::ExponentOverflow)?);
        }
        Ok(Monomial(out))
    }

    /// Product of monomials. Panics on exponent overflow; use
    /// [`Monomial::checked_mul`] when the degrees are not known to be small.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("exponent overflow")
    }

    pub fn checked_pow(&self, n: u32) -> Result<Monomial> {
        let mut out = SmallVec::with_capacity(self.len());
        for a in &self.0 {
            out.push(a.checked_mul(n).ok_or(AlgebraError::ExponentOverflow)?);
        }
        Ok(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other
                .0
                .iter()
                .zip(self.0.iter())
                .map(|(b, a)| b - a)
                .collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Reindexes the exponents: position `k` of the output takes exponent
    /// `self[map[k]]`, or 0 when `map[k]` is `None`.
    pub fn permuted(&self, map: &[Option<usize>]) -> Monomial {
        Monomial(map.iter().map(|m| m.map_or(0, |i| self.0[i])).collect())
    }
}

/// A monomial order on exponent vectors of a fixed length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// The first `k` variables form an elimination block; grevlex inside each block.
    Block(usize),
    /// Weight vector compared first, grevlex tiebreak. Weights must be nonnegative.
    Weighted(Vec<u32>),
}

fn cmp_lex(a: &[Exponent], b: &[Exponent]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn cmp_grevlex(a: &[Exponent], b: &[Exponent]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => cmp_lex(a, b),
            MonomialOrder::Grevlex => cmp_grevlex(a, b),
            MonomialOrder::Block(k) => {
                let k = (*k).min(a.len());
                match cmp_grevlex(&a[..k], &b[..k]) {
                    Ordering::Equal => cmp_grevlex(&a[k..], &b[k..]),
                    o => o,
                }
            }
            MonomialOrder::Weighted(w) => {
                let wa: u64 = a.iter().zip(w).map(|(&e, &wt)| e as u64 * wt as u64).sum();
                let wb: u64 = b.iter().zip(w).map(|(&e, &wt)| e as u64 * wt as u64).sum();
                match wa.cmp(&wb) {
                    Ordering::Equal => cmp_grevlex(a, b),
                    o => o,
                }
            }
        }
    }

    /// True when this order eliminates the first `k` variables: any monomial
    /// involving them is larger than every monomial free of them.
    pub fn eliminates_prefix(&self, k: usize) -> bool {
        match self {
            MonomialOrder::Lex => true,
            MonomialOrder::Block(b) => *b == k,
            _ => k == 0,
        }
    }

    /// The same kind of order after appending `extra` variables at the back.
    pub fn extended_back(&self, extra: usize) -> MonomialOrder {
        match self {
            MonomialOrder::Weighted(w) => {
                let mut w = w.clone();
                w.extend(std::iter::repeat_n(1, extra));
                MonomialOrder::Weighted(w)
            }
            o => o.clone(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Block(k) => format!("block({k})"),
            MonomialOrder::Weighted(w) => format!(
                "weighted({})",
                w.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn lex_and_grevlex_basics() {
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])),
            Ordering::Greater
        );
        assert_eq!(
            MonomialOrder::Grevlex.cmp(&m(&[1, 0]), &m(&[0, 5])),
            Ordering::Less
        );
        // x*z vs y^2 in grevlex(x>y>z): same degree, z appears in x*z so it is smaller
        assert_eq!(
            MonomialOrder::Grevlex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])),
            Ordering::Less
        );
    }

    #[test]
    fn block_order_eliminates_the_prefix() {
        let o = MonomialOrder::Block(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert!(o.eliminates_prefix(1));
        assert!(!MonomialOrder::Grevlex.eliminates_prefix(1));
    }

    #[test]
    fn divisibility_and_lcm() {
        assert!(m(&[1, 0]).divides(&m(&[2, 1])));
        assert_eq!(m(&[1, 0]).div(&m(&[2, 1])), Some(m(&[1, 1])));
        assert_eq!(m(&[1, 3]).lcm(&m(&[2, 1])), m(&[2, 3]));
        assert!(m(&[1, 0]).is_coprime(&m(&[0, 2])));
    }

    #[test]
    fn overflow_is_detected() {
        let big = m(&[u32::MAX, 0]);
        assert_eq!(
            big.checked_mul(&m(&[1, 0])),
            Err(AlgebraError::ExponentOverflow)
        );
        assert!(m(&[3]).checked_pow(u32::MAX).is_err());
    }
}
