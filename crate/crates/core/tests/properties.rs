use std::collections::BTreeSet;

use findual_core::correspondence::check_all;
use findual_core::enumerate::isomorphic;
use findual_core::lattice::{canonicalize, dual_poset};
use findual_core::operator::{dualize_operator, dualize_relation, Operator};
use findual_core::reglang::{syntactic_monoid, Dfa, Regex};
use findual_core::{AbstractLattice, BitSet, DownSet, FiniteDistLattice, Poset};
use proptest::prelude::*;

/// Posets on up to `max` points, generated from covers `i < j`.
fn poset(max: usize) -> impl Strategy<Value = Poset> {
    (0..=max).prop_flat_map(|n| {
        let slots = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), slots).prop_map(move |bits| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            let covers: Vec<(usize, usize)> = pairs.into_iter().zip(bits).filter(|(_, b)| *b).map(|(p, _)| p).collect();
            Poset::from_covers(n, &covers).unwrap()
        })
    })
}

/// A unary operator: arbitrary seeds, closed upward to a monotone table.
fn operator(max: usize) -> impl Strategy<Value = Operator> {
    poset(max).prop_flat_map(|p| {
        let d = FiniteDistLattice::from_poset(&p);
        let count = d.elements().unwrap().len();
        proptest::collection::vec(0..count, p.len()).prop_map(move |picks| {
            let els = d.elements().unwrap();
            let base = d.base();
            let table = (0..base.len())
                .map(|x| base.down(x).iter().fold(DownSet::empty(), |acc, y| acc.union(&els[picks[y]])))
                .collect();
            Operator::new(&d, 1, 1, table).unwrap()
        })
    })
}

fn regex() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![Just("a".to_string()), Just("b".to_string())];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| format!("{x}{y}")),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| format!("({x}|{y})")),
            inner.prop_map(|x| format!("({x})*")),
        ]
    })
}

fn word() -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..2usize, 0..7)
}

proptest! {
    #[test]
    fn bitset_agrees_with_btreeset(a in proptest::collection::btree_set(0..200usize, 0..40),
                                   b in proptest::collection::btree_set(0..200usize, 0..40)) {
        let (x, y): (BitSet, BitSet) = (a.iter().copied().collect(), b.iter().copied().collect());
        let back = |s: BitSet| s.iter().collect::<BTreeSet<usize>>();
        prop_assert_eq!(back(x.union(&y)), a.union(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(back(x.intersection(&y)), a.intersection(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(back(x.difference(&y)), a.difference(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(x.is_subset(&y), a.is_subset(&b));
        prop_assert_eq!(x.len(), a.len());
        if x.is_subset(&y) {
            prop_assert!(x <= y);
        }
    }

    #[test]
    fn join_primes_recover_the_poset(p in poset(6)) {
        let d = FiniteDistLattice::from_poset(&p);
        prop_assert!(isomorphic(&dual_poset(&d), &p));
        let (back, _) = canonicalize(&AbstractLattice::from_lattice(&d).unwrap()).unwrap();
        prop_assert!(isomorphic(back.base(), &p));
    }

    #[test]
    fn downsets_form_a_sublattice(p in poset(6)) {
        let d = FiniteDistLattice::from_poset(&p);
        let els = d.elements().unwrap();
        for x in els {
            for y in els {
                prop_assert!(p.is_downset(x.union(y).bits()));
                prop_assert!(p.is_downset(x.intersection(y).bits()));
            }
        }
    }

    #[test]
    fn operators_survive_two_dualizations(h in operator(5)) {
        prop_assert_eq!(dualize_relation(&dualize_operator(&h)), h);
    }

    #[test]
    fn correspondences_agree_on_both_sides(h in operator(4)) {
        for c in check_all(&h).unwrap() {
            prop_assert_eq!(c.operator_side, c.relation_side);
        }
    }

    #[test]
    fn syntactic_classes_multiply_like_words(src in regex(), u in word(), v in word()) {
        let re = Regex::parse(&src, &['a', 'b']).unwrap();
        let m = syntactic_monoid(&Dfa::from_regex(&src, &['a', 'b']).unwrap()).unwrap();
        let uv = [u.as_slice(), v.as_slice()].concat();
        prop_assert_eq!(m.class_of(&uv), m.mul(m.class_of(&u), m.class_of(&v)));
        prop_assert_eq!(m.image().contains(m.class_of(&uv)), re.matches(&uv));
    }
}
