mod common;

use common::*;
use proptest::prelude::*;
use reesmod::ideal::is_regular_sequence;
use reesmod::modification::{
    determinantal_ideal, membership_in_modification, modification_ring, proper_transform_in,
    strict_transform_in, Membership, ModificationCentre,
};
use reesmod::{Ideal, Polynomial};

/// Monomial-plus-constant generators keep the random centres small.
fn centre_gens() -> impl Strategy<Value = Vec<RawPoly>> {
    prop::collection::vec(nonzero_raw_poly(2, 2, 2), 1..=2)
}

fn centre(gens: &[RawPoly], pick: usize) -> Option<ModificationCentre> {
    let r = ring(&["x", "y"]);
    let gs: Vec<Polynomial> = gens.iter().map(|g| build(&r, g)).collect();
    let f = gs[pick % gs.len()].clone();
    ModificationCentre::new(Ideal::new(&r, gs).ok()?, f).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn presentations_agree_and_relations_vanish(gens in centre_gens(), pick in 0usize..2) {
        let Some(c) = centre(&gens, pick) else { return Ok(()); };
        // modification_ring itself errors if the two presentations differ
        let m = modification_ring(&c).unwrap();
        prop_assert!(m.relations().equals(m.direct_presentation()).unwrap());
        for g in m.relations().gb().unwrap().generators() {
            prop_assert!(m.vanishes_under_substitution(g).unwrap());
        }
        let rees = m.rees();
        for g in rees.kernel().generators() {
            prop_assert!(g.is_homogeneous_in(&rees.t_indices()));
            prop_assert!(rees.substitute_t(g).unwrap().is_zero());
        }
    }

    #[test]
    fn transforms_contain_the_kernel(gens in centre_gens(), pick in 0usize..2) {
        let Some(c) = centre(&gens, pick) else { return Ok(()); };
        let rees = c.rees().unwrap();
        let proper = proper_transform_in(&c, &rees).unwrap();
        let strict = strict_transform_in(&c, &rees).unwrap();
        prop_assert!(proper.contains_ideal(rees.kernel()).unwrap());
        prop_assert!(strict.contains_ideal(rees.kernel()).unwrap());
    }

    #[test]
    fn membership_is_monotone(gens in centre_gens(), p in raw_poly(2, 3, 3), k in 0u32..3) {
        let Some(c) = centre(&gens, 0) else { return Ok(()); };
        let p = build(c.ring(), &p);
        if let Membership::Member(n) = membership_in_modification(&c, &p, k, 6).unwrap() {
            // p f^(N+1-k) ∈ I^(N+1)
            let lhs = &p * &c.divisor_element().pow(n + 1 - k).unwrap();
            prop_assert!(c.ideal().power(n + 1).unwrap().contains(&lhs).unwrap());
        }
        // a_i/f is always in A[I/f]
        for a in c.ideal().generators() {
            prop_assert_eq!(membership_in_modification(&c, a, 1, 1).unwrap(), Membership::Member(1));
        }
    }

    #[test]
    fn regular_sequences_are_determinantal(a in nonzero_raw_poly(3, 2, 2), b in nonzero_raw_poly(3, 2, 2)) {
        let r = ring(&["x", "y", "z"]);
        let seq = vec![build(&r, &a), build(&r, &b)];
        if !is_regular_sequence(&r, &seq).unwrap().regular {
            return Ok(());
        }
        let c = ModificationCentre::new(Ideal::new(&r, seq.clone()).unwrap(), seq[0].clone()).unwrap();
        let rees = c.rees().unwrap();
        let det = determinantal_ideal(&r, &seq, &[]).unwrap();
        prop_assert!(det.equals(rees.kernel()).unwrap());
        prop_assert!(reesmod::modification::transforms_equal(&c).unwrap().equal_as_subschemes);
    }
}
