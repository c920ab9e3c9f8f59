mod common;

use std::cmp::Ordering;

use common::*;
use proptest::prelude::*;
use reesmod::{Field, Monomial, MonomialOrder, Polynomial};

fn mono(n: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..6, n).prop_map(|e| Monomial::from_exponents(&e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn orders_are_total_and_multiplicative(a in mono(3), b in mono(3), c in mono(3)) {
        for order in orders(3) {
            let ab = order.cmp(&a, &b);
            prop_assert_eq!(ab, order.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(order.cmp(&a.mul(&c), &b.mul(&c)), ab);
            prop_assert_ne!(order.cmp(&Monomial::one(3), &a), Ordering::Greater);
            if ab == Ordering::Less && order.cmp(&b, &c) == Ordering::Less {
                prop_assert_eq!(order.cmp(&a, &c), Ordering::Less);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(a in raw_poly(3, 3, 4), b in raw_poly(3, 3, 4), c in raw_poly(3, 3, 4)) {
        for order in orders(3) {
            let r = ring_with(Field::Rational, &["x", "y", "z"], order);
            let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&(&a + &b) - &b - a.clone()).is_zero());
        }
    }

    #[test]
    fn terms_stay_sorted(a in raw_poly(3, 4, 6), b in raw_poly(3, 4, 6)) {
        for order in orders(3) {
            let r = ring_with(Field::Rational, &["x", "y", "z"], order.clone());
            let p = &build(&r, &a) * &build(&r, &b);
            for w in p.terms().windows(2) {
                prop_assert_eq!(order.cmp(&w[0].0, &w[1].0), Ordering::Greater);
            }
        }
    }

    #[test]
    fn division_invariant(f in raw_poly(3, 4, 5), d1 in nonzero_raw_poly(3, 2, 3), d2 in nonzero_raw_poly(3, 2, 3)) {
        for order in orders(3) {
            let r = ring_with(Field::Rational, &["x", "y", "z"], order);
            let f = build(&r, &f);
            let ds = vec![build(&r, &d1), build(&r, &d2)];
            let (qs, rem) = f.divide(&ds).unwrap();
            let mut back = rem.clone();
            for (q, d) in qs.iter().zip(&ds) {
                back = &back + &(q * d);
            }
            prop_assert_eq!(&back, &f);
            for (m, _) in rem.terms() {
                for d in &ds {
                    prop_assert!(!d.leading_monomial().unwrap().divides(m));
                }
            }
        }
    }

    #[test]
    fn reduction_mod_p_is_a_homomorphism(a in raw_poly(2, 3, 4), b in raw_poly(2, 3, 4)) {
        let q = ring(&["x", "y"]);
        let fp = ring_with(Field::prime(2147483647).unwrap(), &["x", "y"], MonomialOrder::Grevlex);
        let (a, b) = (build(&q, &a), build(&q, &b));
        let red = |p: &Polynomial| p.reduce_into(&fp).unwrap();
        prop_assert_eq!(red(&(&a * &b)), &red(&a) * &red(&b));
        prop_assert_eq!(red(&(&a + &b)), &red(&a) + &red(&b));
    }

    #[test]
    fn rendering_is_stable_under_ring_transfer(a in raw_poly(2, 3, 4)) {
        let r = ring(&["x", "y"]);
        let lex = ring_with(Field::Rational, &["x", "y"], MonomialOrder::Lex);
        let p = build(&r, &a);
        let back = p.to_ring(&lex).unwrap().to_ring(&r).unwrap();
        prop_assert_eq!(back.to_string(), p.to_string());
    }
}

#[test]
fn small_prime_field_arithmetic() {
    let f5 = ring_with(Field::prime(5).unwrap(), &["x"], MonomialOrder::Grevlex);
    let x = var(&f5, "x");
    let one = Polynomial::one(&f5);
    // (x + 1)^5 = x^5 + 1 in characteristic 5
    assert_eq!((&x + &one).pow(5).unwrap(), &x.pow(5).unwrap() + &one);
    assert!(Field::prime(6).is_err());
    assert!(Field::prime(1 << 31).is_err());
}
