//! Exhaustive generators for small structures.
//!
//! Posets are produced up to isomorphism, each in a canonical labelling.
//! Lattices come from posets by adjoining a bottom and a top.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::lattice::{dualize_map, AbstractLattice, FiniteDistLattice, LatticeHom};
use crate::order::{DownSet, MonotoneMap, Poset};

/// Largest carrier the canonical-form search accepts.
pub const MAX_POSET: usize = 8;

/// Strict-order bit code of `down` under the relabelling `perm` (old -> new).
fn code(down: &[u64], perm: &[usize]) -> u64 {
    let n = down.len();
    let mut c = 0u64;
    for (j, &d) in down.iter().enumerate() {
        let mut m = d & !(1 << j);
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            c |= 1 << (perm[i] * n + perm[j]);
        }
    }
    c
}

/// Least code over relabellings that respect the (down, up) size profile.
fn canonical(down: &[u64]) -> (u64, Vec<usize>) {
    let n = down.len();
    let mut up = vec![0u64; n];
    for (j, &d) in down.iter().enumerate() {
        let mut m = d;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            up[i] |= 1 << j;
        }
    }
    let key = |i: usize| (down[i].count_ones(), up[i].count_ones());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| key(i));
    // slot -> admissible elements
    let slots: Vec<Vec<usize>> =
        (0..n).map(|s| (0..n).filter(|&i| key(i) == key(order[s])).collect()).collect();

    let mut best = (u64::MAX, vec![0; n]);
    let mut perm = vec![usize::MAX; n];
    let mut used = 0u64;
    fn go(
        s: usize,
        down: &[u64],
        slots: &[Vec<usize>],
        perm: &mut Vec<usize>,
        used: &mut u64,
        best: &mut (u64, Vec<usize>),
    ) {
        if s == slots.len() {
            let c = code(down, perm);
            if c < best.0 {
                *best = (c, perm.clone());
            }
            return;
        }
        for &i in &slots[s] {
            if *used & (1 << i) == 0 {
                *used |= 1 << i;
                perm[i] = s;
                go(s + 1, down, slots, perm, used, best);
                *used &= !(1 << i);
            }
        }
    }
    go(0, down, &slots, &mut perm, &mut used, &mut best);
    best
}

fn relabel(down: &[u64], perm: &[usize]) -> Vec<u64> {
    let mut out = vec![0u64; down.len()];
    for (j, &d) in down.iter().enumerate() {
        let mut m = d;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            out[perm[j]] |= 1 << perm[i];
        }
    }
    out
}

fn downset_masks(down: &[u64]) -> impl Iterator<Item = u64> + '_ {
    let n = down.len();
    (0..1u64 << n).filter(move |&s| {
        let mut m = s;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            if down[i] & !s != 0 {
                return false;
            }
        }
        true
    })
}

/// All posets on `n` elements up to isomorphism, in ascending canonical code.
///
/// # Panics
/// If `n > MAX_POSET`.
pub fn posets(n: usize) -> Vec<Poset> {
    assert!(n <= MAX_POSET, "poset enumeration is limited to {MAX_POSET} elements");
    let mut level: Vec<Vec<u64>> = vec![Vec::new()];
    for k in 0..n {
        let mut next: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for p in &level {
            // every poset arises by adding a maximal element over a downset
            for d in downset_masks(p) {
                let mut q = p.clone();
                q.push(d | (1 << k));
                let (c, perm) = canonical(&q);
                next.entry(c).or_insert_with(|| relabel(&q, &perm));
            }
        }
        level = next.into_values().collect();
    }
    level
        .into_iter()
        .map(|down| Poset::from_down(down.into_iter().map(BitSet::from_word).collect()))
        .collect()
}

/// True if the two posets are isomorphic.
pub fn isomorphic(a: &Poset, b: &Poset) -> bool {
    if a.len() != b.len() || a.len() > MAX_POSET {
        return a == b;
    }
    let enc = |p: &Poset| (0..p.len()).map(|i| p.down(i).low_word()).collect::<Vec<_>>();
    canonical(&enc(a)).0 == canonical(&enc(b)).0
}

/// All lattices with exactly `m` elements up to isomorphism, each with its
/// bottom at index 0 and top at index `m - 1` (for `m >= 2`).
pub fn lattices(m: usize) -> Vec<AbstractLattice> {
    match m {
        0 => Vec::new(),
        1 => vec![AbstractLattice::new(Poset::chain(1)).expect("one point")],
        _ => posets(m - 2)
            .into_iter()
            .filter_map(|q| {
                let mut down: Vec<BitSet> = vec![BitSet::singleton(0)];
                for i in 0..q.len() {
                    let mut d: BitSet = q.down(i).iter().map(|x| x + 1).collect();
                    d.insert(0);
                    down.push(d);
                }
                down.push(BitSet::full(m));
                AbstractLattice::new(Poset::from_down(down)).ok()
            })
            .collect(),
    }
}

/// Calls `f` on every table `t` indexed by elements of `dom` with values from
/// `values` such that `q <= p` implies `t[q] ⊆ t[p]`. Stops early when `f`
/// returns false; the result says whether the run was complete.
pub fn for_each_monotone_table<F>(dom: &Poset, values: &[DownSet], mut f: F) -> bool
where
    F: FnMut(&[DownSet]) -> bool,
{
    let order = dom.linear_extension();
    let mut table = vec![DownSet::empty(); dom.len()];
    fn go<F: FnMut(&[DownSet]) -> bool>(
        k: usize,
        order: &[usize],
        dom: &Poset,
        values: &[DownSet],
        table: &mut Vec<DownSet>,
        f: &mut F,
    ) -> bool {
        if k == order.len() {
            return f(table);
        }
        let p = order[k];
        let mut lower = BitSet::new();
        for q in dom.down(p).iter() {
            if q != p {
                lower.union_with(&table[q]);
            }
        }
        for v in values {
            if lower.is_subset(v) {
                table[p] = v.clone();
                if !go(k + 1, order, dom, values, table, f) {
                    return false;
                }
            }
        }
        true
    }
    go(0, &order, dom, values, &mut table, &mut f)
}

/// Collects [`for_each_monotone_table`].
pub fn monotone_tables(dom: &Poset, values: &[DownSet]) -> Vec<Vec<DownSet>> {
    let mut out = Vec::new();
    for_each_monotone_table(dom, values, |t| {
        out.push(t.to_vec());
        true
    });
    out
}

/// All monotone maps `dom -> cod`, in lexicographic table order.
pub fn monotone_maps(dom: &Poset, cod: &Poset) -> Vec<MonotoneMap> {
    let order = dom.linear_extension();
    let mut out = Vec::new();
    let mut table = vec![0usize; dom.len()];
    fn go(k: usize, order: &[usize], dom: &Poset, cod: &Poset, table: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == order.len() {
            out.push(table.clone());
            return;
        }
        let p = order[k];
        for y in 0..cod.len() {
            if dom.down(p).iter().filter(|&q| q != p).all(|q| cod.leq(table[q], y)) {
                table[p] = y;
                go(k + 1, order, dom, cod, table, out);
            }
        }
    }
    go(0, &order, dom, cod, &mut table, &mut out);
    out.sort();
    out.into_iter()
        .map(|t| MonotoneMap::new(dom.clone(), cod.clone(), t).expect("monotone by construction"))
        .collect()
}

/// All lattice homomorphisms `dom -> cod`, as duals of monotone maps between
/// the prime posets.
pub fn lattice_homs(dom: &FiniteDistLattice, cod: &FiniteDistLattice) -> Vec<LatticeHom> {
    monotone_maps(cod.base(), dom.base())
        .iter()
        .map(|phi| dualize_map(phi).expect("enumerable lattices"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts() {
        // unlabelled posets: 1, 1, 2, 5, 16, 63, 318
        let counts: Vec<usize> = (0..=6).map(|n| posets(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 16, 63, 318]);
    }

    #[test]
    fn generated_posets_are_valid_and_distinct() {
        let ps = posets(4);
        for (i, p) in ps.iter().enumerate() {
            let leq: Vec<Vec<bool>> = (0..4).map(|a| (0..4).map(|b| p.leq(a, b)).collect()).collect();
            assert_eq!(&Poset::from_matrix(&leq).unwrap(), p);
            for q in &ps[i + 1..] {
                assert!(!isomorphic(p, q));
            }
        }
        assert!(isomorphic(&Poset::from_covers(3, &[(2, 0)]).unwrap(), &Poset::from_covers(3, &[(0, 1)]).unwrap()));
    }

    #[test]
    fn lattice_counts() {
        let all: Vec<usize> = (1..=8).map(|m| lattices(m).len()).collect();
        assert_eq!(all, [1, 1, 1, 2, 5, 15, 53, 222]);
        let dist: Vec<usize> =
            (1..=8).map(|m| lattices(m).iter().filter(|l| l.distributivity_witness().is_none()).count()).collect();
        assert_eq!(dist, [1, 1, 1, 2, 3, 5, 8, 15]);
    }

    #[test]
    fn monotone_table_counts() {
        // monotone maps from a 2-chain into the 3-chain of downsets: C(4,2)
        let vals = Poset::chain(2).downsets();
        assert_eq!(monotone_tables(&Poset::chain(2), &vals).len(), 6);
        assert_eq!(monotone_tables(&Poset::antichain(2), &vals).len(), 9);
        assert_eq!(monotone_maps(&Poset::chain(3), &Poset::chain(2)).len(), 4);
        let mut seen = 0;
        assert!(!for_each_monotone_table(&Poset::antichain(2), &vals, |_| {
            seen += 1;
            seen < 4
        }));
        assert_eq!(seen, 4);
    }

    #[test]
    fn hom_counts() {
        // homs 2^2 -> 2^2 are the 4 self-maps of a 2-antichain
        let b = FiniteDistLattice::boolean(2);
        let homs = lattice_homs(&b, &b);
        assert_eq!(homs.len(), 4);
        assert!(homs.iter().all(|h| h.dom() == &b && h.cod() == &b));
        assert_eq!(lattice_homs(&FiniteDistLattice::chain(2), &b).len(), 4);
    }
}
