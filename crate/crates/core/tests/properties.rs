use std::collections::BTreeSet;

use patcount_core::classes::{
    canonical_class, cardinality, phi1, phi1_inv, phi2, phi2_inv, phi4, phi4_inv, phi5, phi5_inv,
    psi1, psi1_inv, PatternSet, TwoSubset,
};
use patcount_core::compositions::Composition;
use patcount_core::genfunc::FibWord;
use patcount_core::perm::{count_occurrences_scan, pattern_counts3, patterns3};
use patcount_core::trees::{perm_of, tree_of};
use patcount_core::{Permutation, Symmetry};
use proptest::prelude::*;

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn composition(max: usize) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1usize..6, 1..max).prop_map(|p| Composition::new(p).unwrap())
}

fn fib_word(max: usize) -> impl Strategy<Value = FibWord> {
    prop::collection::vec(any::<bool>(), 0..max).prop_map(|mut bits| {
        for i in 1..bits.len() {
            if bits[i - 1] && bits[i] {
                bits[i] = false;
            }
        }
        FibWord::new(bits).unwrap()
    })
}

fn symmetry() -> impl Strategy<Value = Symmetry> {
    prop_oneof![
        Just(Symmetry::Complement),
        Just(Symmetry::Reverse),
        Just(Symmetry::Inverse)
    ]
}

proptest! {
    #[test]
    fn quadratic_counts_match_scan(sigma in permutation(14)) {
        let fast = pattern_counts3(&sigma);
        for (q, &c) in patterns3().iter().zip(&fast) {
            prop_assert_eq!(c, count_occurrences_scan(&sigma, q));
        }
        let total: u64 = fast.iter().sum();
        let n = sigma.len() as u64;
        prop_assert_eq!(total, n * n.saturating_sub(1) * n.saturating_sub(2) / 6);
    }

    #[test]
    fn symmetries_are_involutions(sigma in permutation(20), op in symmetry()) {
        prop_assert_eq!(sigma.apply(op).apply(op), sigma);
    }

    #[test]
    fn counts_move_with_symmetries(sigma in permutation(12), op in symmetry()) {
        let before = pattern_counts3(&sigma);
        let after = pattern_counts3(&sigma.apply(op));
        for (i, q) in patterns3().iter().enumerate() {
            let j = patterns3().iter().position(|p| *p == q.apply(op)).unwrap();
            prop_assert_eq!(before[i], after[j]);
        }
    }

    #[test]
    fn composition_maps_round_trip(c in composition(12)) {
        prop_assert_eq!(&phi1_inv(&phi1(&c)).unwrap(), &c);
        prop_assert_eq!(&phi2_inv(&phi2(&c)).unwrap(), &c);
        prop_assert_eq!(&phi4_inv(&phi4(&c)).unwrap(), &c);
    }

    #[test]
    fn two_subset_map_round_trips(n in 2usize..40, a in 1usize..40, b in 1usize..40) {
        let (k, m) = (a.min(b), a.max(b));
        prop_assume!(k < m && m <= n);
        let s = TwoSubset::new(k, m).unwrap();
        prop_assert_eq!(phi5_inv(&phi5(s, n).unwrap()).unwrap(), Some(s));
    }

    #[test]
    fn fibonacci_word_map_round_trips(w in fib_word(25)) {
        prop_assert_eq!(psi1_inv(&psi1(&w)).unwrap(), w);
    }

    #[test]
    fn trees_round_trip(c in composition(10)) {
        // phi1 images avoid 132, so they have trees.
        let sigma = phi1(&c);
        prop_assert_eq!(perm_of(&tree_of(&sigma).unwrap()), sigma);
    }

    // Some canonical classes share an orbit (D3 and D4 are inverse to each
    // other), so only the class sizes are invariant, not the labels.
    #[test]
    fn canonical_class_respects_symmetry(i in 0usize..35, op in symmetry()) {
        let set = PatternSet::all_pairs_and_triples()[i];
        let (id, word) = canonical_class(set).unwrap();
        prop_assert_eq!(id.canonical_set().apply_word(&word), set);
        let (other, _) = canonical_class(set.apply(op)).unwrap();
        for n in 0..=12 {
            prop_assert_eq!(cardinality(other, n), cardinality(id, n));
        }
    }
}

#[test]
fn all_pairs_and_triples_are_distinct() {
    let sets: BTreeSet<u8> = PatternSet::all_pairs_and_triples()
        .iter()
        .map(|s| s.mask())
        .collect();
    assert_eq!(sets.len(), 35);
}
