//! Syntactic monoids of a fixed corpus, checked against word-level oracles.

use std::collections::BTreeSet;

use findual_core::monoid::derivation_to_monoid;
use findual_core::reglang::*;
use findual_core::residuation::classify;
use findual_core::BitSet;

const AB: [char; 2] = ['a', 'b'];

fn corpus() -> Vec<(&'static str, Regex, Dfa)> {
    CORPUS
        .iter()
        .map(|&(name, src)| (name, Regex::parse(src, &AB).unwrap(), Dfa::from_regex(src, &AB).unwrap()))
        .collect()
}

#[test]
fn automata_recognize_their_expressions() {
    for (name, r, d) in corpus() {
        for w in words_up_to(2, 8) {
            assert_eq!(d.accepts(&w), r.matches(&w), "{name}: {}", d.spell(&w));
        }
    }
}

#[test]
fn minimization_is_canonical() {
    for (name, _, d) in corpus() {
        assert_eq!(d.minimize(), d, "{name}");
        // a redundant copy of every state minimizes back to the same automaton
        let (n, k) = (d.states(), AB.len());
        let mut delta = Vec::new();
        for copy in 0..2 {
            for q in 0..n {
                for a in 0..k {
                    delta.push(d.delta(q, a) + if (q + a + copy) % 2 == 0 { n } else { 0 });
                }
            }
        }
        let accepting: BitSet = d.accepting().iter().flat_map(|q| [q, q + n]).collect();
        let big = Dfa::new(AB.to_vec(), 2 * n, delta, n, accepting).unwrap();
        for w in words_up_to(2, 2 * big.states()) {
            assert_eq!(big.accepts(&w), d.accepts(&w));
        }
        assert_eq!(big.minimize(), d, "{name}");
        assert!(big.minimize().is_isomorphic(&d));
    }
}

/// Classes of words up to length 4 told apart by contexts up to length 4.
fn context_classes(r: &Regex) -> usize {
    let contexts = words_up_to(2, 4);
    let sigs: BTreeSet<Vec<bool>> = words_up_to(2, 4)
        .iter()
        .map(|w| {
            let mut sig = Vec::new();
            for x in &contexts {
                for y in &contexts {
                    sig.push(r.matches(&[x.as_slice(), w, y].concat()));
                }
            }
            sig
        })
        .collect();
    sigs.len()
}

#[test]
fn syntactic_monoid_sizes() {
    let mut sizes = Vec::new();
    for (name, r, d) in corpus() {
        let n = syntactic_monoid(&d).unwrap().len();
        assert_eq!(n, context_classes(&r), "{name}");
        sizes.push((name, n));
    }
    let expected = [
        ("all", 1),
        ("empty", 1),
        ("epsilon", 2),
        ("ab-star", 6),
        ("a-star-b-star", 5),
        ("contains-aba", 12),
        ("starts-a", 3),
        ("ends-b", 3),
        ("even-a", 2),
        ("one-a", 3),
        ("second-last-a", 7),
        ("aa-or-b-star", 7),
    ];
    assert_eq!(sizes, expected);
}

#[test]
fn monoids_recognize_and_witnesses_are_shortest() {
    for (name, r, d) in corpus() {
        let m = syntactic_monoid(&d).unwrap();
        let words = words_up_to(2, 6);
        let mut seen = vec![false; m.len()];
        for w in &words {
            let s = m.class_of(w);
            assert_eq!(m.image().contains(s), r.matches(w), "{name}");
            if !seen[s] {
                // the first word met in length-lexicographic order
                assert_eq!(m.witness(s), w.as_slice(), "{name}");
                seen[s] = true;
            }
            assert_eq!(m.class_of(m.witness(s)), s);
        }
        for s in 0..m.len() {
            for t in 0..m.len() {
                let mut st = m.witness(s).to_vec();
                st.extend_from_slice(m.witness(t));
                assert_eq!(m.class_of(&st), m.mul(s, t));
            }
        }
    }
}

/// Every partition of `0..n` as a block index per element.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(i: usize, blocks: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            cur[i] = b;
            go(i + 1, blocks.max(b + 1), cur, out);
        }
    }
    go(0, 0, &mut vec![0; n], &mut out);
    out
}

#[test]
fn syntactic_monoids_have_no_smaller_quotient() {
    let mut checked = 0;
    for (name, _, d) in corpus() {
        let m = syntactic_monoid(&d).unwrap();
        let n = m.len();
        if n > 6 {
            continue;
        }
        for p in partitions(n) {
            let congruence = (0..n).all(|s| {
                (0..n).all(|t| {
                    p[s] != p[t] || (0..n).all(|u| p[m.mul(s, u)] == p[m.mul(t, u)] && p[m.mul(u, s)] == p[m.mul(u, t)])
                })
            });
            let saturates = (0..n).all(|s| (0..n).all(|t| p[s] != p[t] || m.image().contains(s) == m.image().contains(t)));
            if congruence && saturates {
                assert!((0..n).all(|s| (0..n).all(|t| p[s] != p[t] || s == t)), "{name}: {p:?}");
            }
        }
        checked += 1;
    }
    assert_eq!(checked, 9);
}

#[test]
fn residuals_match_word_quotients() {
    for (name, r, d) in corpus() {
        let m = syntactic_monoid(&d).unwrap();
        let words = words_up_to(2, 5);
        for u in words_up_to(2, 3) {
            let k = BitSet::singleton(m.class_of(&u));
            let left = m.left_residual(&k, m.image()).unwrap();
            let right = m.right_residual(m.image(), &k).unwrap();
            for v in &words {
                let uv: Vec<usize> = u.iter().chain(v).copied().collect();
                let vu: Vec<usize> = v.iter().chain(&u).copied().collect();
                assert_eq!(m.recognizes(&left, v), r.matches(&uv), "{name}");
                assert_eq!(m.recognizes(&right, v), r.matches(&vu), "{name}");
                // two-sided quotient u\L/u
                let both = m.right_residual(&left, &k).unwrap();
                let uvu: Vec<usize> = uv.iter().chain(&u).copied().collect();
                assert_eq!(m.recognizes(&both, v), r.matches(&uvu), "{name}");
            }
            // the quotient is a union of classes: membership depends only on [w]
            let hits: BTreeSet<usize> = words.iter().filter(|w| r.matches(&[u.as_slice(), w].concat())).map(|w| m.class_of(w)).collect();
            let misses: BTreeSet<usize> = words.iter().filter(|w| !r.matches(&[u.as_slice(), w].concat())).map(|w| m.class_of(w)).collect();
            assert!(hits.is_disjoint(&misses), "{name}");
            assert!(hits.iter().all(|&s| left.contains(s)));
        }
    }
}

#[test]
fn residuation_ideals_are_syntactic_orders() {
    for (name, _, d) in corpus() {
        let ideal = residuation_ideal_of(&d).unwrap();
        let m = &ideal.monoid;
        let order = m.syntactic_order();
        let downs: Vec<BitSet> = order.downsets().iter().map(|x| x.bits().clone()).collect();
        let ours: BTreeSet<BitSet> = ideal.elements.iter().map(|x| x.bits().clone()).collect();
        assert_eq!(ours, downs.into_iter().collect(), "{name}");
        assert!(ours.contains(m.image()));

        let sub = ideal.subalgebra.algebra();
        assert!(classify(sub).unwrap().derivation, "{name}");
        let derived = derivation_to_monoid(sub).unwrap();
        let ordered = m.ordered_monoid();
        // prime i of the subalgebra is the principal downset of some s
        let gens = ideal.subalgebra.generators();
        let label: Vec<usize> = gens
            .iter()
            .map(|g| (0..m.len()).find(|&s| (0..m.len()).filter(|&t| order.leq(t, s)).collect::<BitSet>() == *g.bits()).unwrap())
            .collect();
        assert_eq!(label.iter().collect::<BTreeSet<_>>().len(), m.len());
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                assert_eq!(label[derived.mul(i, j)], ordered.mul(label[i], label[j]), "{name}");
                assert_eq!(derived.carrier().leq(i, j), order.leq(label[i], label[j]));
            }
        }
        assert_eq!(label[derived.unit()], m.unit());
    }
}

#[test]
fn comultiplication_matches_factorizations() {
    for (name, _, d) in corpus() {
        let g = gamma_of_language(&d).unwrap();
        let m = syntactic_monoid(&d).unwrap();
        let n = m.len();
        let members: BTreeSet<usize> = g.members().iter().collect();
        for s in 0..n {
            for t in 0..n {
                assert_eq!(members.contains(&(s * n + t)), m.image().contains(m.mul(s, t)), "{name}");
            }
        }
        match name {
            "empty" => assert!(members.is_empty()),
            "all" => assert_eq!(members.len(), 1),
            _ => {}
        }
    }
}
