#![allow(dead_code)]

use proptest::prelude::*;
use reesmod::{Field, Monomial, MonomialOrder, PolyRing, Polynomial};

/// Raw terms `(exponents, coefficient)`, turned into a polynomial per ring.
pub type RawPoly = Vec<(Vec<u32>, i64)>;

pub fn raw_poly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    let term = (prop::collection::vec(0..=max_deg, nvars), -6i64..=6)
        .prop_filter("degree bound", move |(e, _)| {
            e.iter().sum::<u32>() <= max_deg
        });
    prop::collection::vec(term, 1..=max_terms)
}

pub fn nonzero_raw_poly(
    nvars: usize,
    max_deg: u32,
    max_terms: usize,
) -> impl Strategy<Value = RawPoly> {
    raw_poly(nvars, max_deg, max_terms).prop_filter("nonzero", |t| {
        let mut sums = std::collections::BTreeMap::new();
        for (e, c) in t {
            *sums.entry(e.clone()).or_insert(0i64) += c;
        }
        sums.values().any(|c| *c != 0)
    })
}

pub fn build(ring: &PolyRing, raw: &RawPoly) -> Polynomial {
    let field = ring.field();
    Polynomial::from_terms(
        ring,
        raw.iter()
            .map(|(e, c)| (Monomial::from_exponents(e), field.from_i64(*c)))
            .collect(),
    )
}

pub fn ring(vars: &[&str]) -> PolyRing {
    PolyRing::rational(vars).unwrap()
}

pub fn ring_with(field: Field, vars: &[&str], order: MonomialOrder) -> PolyRing {
    PolyRing::new(field, vars, order).unwrap()
}

pub fn var(r: &PolyRing, name: &str) -> Polynomial {
    Polynomial::var(r, name).unwrap()
}

pub fn orders(nvars: usize) -> Vec<MonomialOrder> {
    vec![
        MonomialOrder::Lex,
        MonomialOrder::Grevlex,
        MonomialOrder::Block(1),
        MonomialOrder::Weighted((1..=nvars as u32).collect()),
    ]
}
