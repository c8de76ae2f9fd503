//! Tensor powers of a finite distributive lattice.
//!
//! `D^⊗n` is the downset lattice of `J(D)^n` (row-major tuples). The `⊠` form
//! of the same lattice is kept as an upset of `J(D)^n`: the generator
//! `x₁ ⊠ .. ⊠ xₙ` is `(P∖x₁) × .. × (P∖xₙ)`, meets are unions and joins are
//! intersections.

use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::error::{CoreError, Result};
use crate::lattice::{FiniteDistLattice, LatticeMap};
use crate::order::{tuple_of, DownSet};

/// Above this many generators `omega` falls back to the complement form.
const OMEGA_FORMULA_LIMIT: usize = 20;

pub fn tensor_power(d: &FiniteDistLattice, n: usize) -> FiniteDistLattice {
    FiniteDistLattice::from_poset(&d.base().power(n))
}

/// An element of `D^⊗n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TensorElement {
    arity: usize,
    members: DownSet,
}

impl TensorElement {
    pub fn new(d: &FiniteDistLattice, arity: usize, members: BitSet) -> Result<TensorElement> {
        let members = d.base().power(arity).downset(members)?;
        Ok(TensorElement { arity, members })
    }

    pub(crate) fn from_downset(arity: usize, members: DownSet) -> TensorElement {
        TensorElement { arity, members }
    }

    pub fn bottom(arity: usize) -> TensorElement {
        TensorElement { arity, members: DownSet::empty() }
    }

    pub fn top(d: &FiniteDistLattice, arity: usize) -> TensorElement {
        let n = d.base().len().pow(arity as u32);
        TensorElement { arity, members: DownSet::from_bits_unchecked(BitSet::full(n)) }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn members(&self) -> &DownSet {
        &self.members
    }

    pub fn into_members(self) -> DownSet {
        self.members
    }

    pub fn join(&self, o: &TensorElement) -> TensorElement {
        TensorElement { arity: self.arity, members: self.members.union(&o.members) }
    }

    pub fn meet(&self, o: &TensorElement) -> TensorElement {
        TensorElement { arity: self.arity, members: self.members.intersection(&o.members) }
    }

    pub fn leq(&self, o: &TensorElement) -> bool {
        self.members.is_subset(&o.members)
    }
}

/// An element of `D^⊠n`, as an upset of `J(D)^n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BoxElement {
    arity: usize,
    members: BitSet,
}

impl BoxElement {
    pub fn new(d: &FiniteDistLattice, arity: usize, members: BitSet) -> Result<BoxElement> {
        let p = d.base().power(arity);
        if !p.is_upset(&members) {
            return Err(CoreError::NotPreserving { what: "upward closure", detail: alloc::format!("{members:?}") });
        }
        Ok(BoxElement { arity, members })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    /// The empty join, encoded by the full upset.
    pub fn bottom(d: &FiniteDistLattice, arity: usize) -> BoxElement {
        BoxElement { arity, members: BitSet::full(d.base().len().pow(arity as u32)) }
    }

    pub fn top(arity: usize) -> BoxElement {
        BoxElement { arity, members: BitSet::new() }
    }

    pub fn meet(&self, o: &BoxElement) -> BoxElement {
        BoxElement { arity: self.arity, members: self.members.union(&o.members) }
    }

    pub fn join(&self, o: &BoxElement) -> BoxElement {
        BoxElement { arity: self.arity, members: self.members.intersection(&o.members) }
    }

    pub fn leq(&self, o: &BoxElement) -> bool {
        o.members.is_subset(&self.members)
    }
}

fn check_elements(d: &FiniteDistLattice, xs: &[&DownSet]) -> Result<()> {
    for x in xs {
        if !d.contains(x.bits()) {
            return Err(CoreError::LatticeMismatch);
        }
    }
    Ok(())
}

/// Row-major product of sets drawn from `0..m`.
fn product_set(m: usize, parts: &[&BitSet]) -> BitSet {
    let mut acc = BitSet::singleton(0);
    for part in parts {
        let mut next = BitSet::new();
        for a in acc.iter() {
            for b in part.iter() {
                next.insert(a * m + b);
            }
        }
        acc = next;
    }
    acc
}

/// `x₁ ⊗ .. ⊗ xₙ`: tuples of primes with `pᵢ ∈ xᵢ`.
pub fn pure_tensor(d: &FiniteDistLattice, xs: &[&DownSet]) -> Result<TensorElement> {
    check_elements(d, xs)?;
    let bits: Vec<&BitSet> = xs.iter().map(|x| x.bits()).collect();
    let members = DownSet::from_bits_unchecked(product_set(d.base().len(), &bits));
    Ok(TensorElement { arity: xs.len(), members })
}

/// `x₁ ⊠ .. ⊠ xₙ`.
pub fn pure_box(d: &FiniteDistLattice, xs: &[&DownSet]) -> Result<BoxElement> {
    check_elements(d, xs)?;
    let m = d.base().len();
    let comps: Vec<BitSet> = xs.iter().map(|x| x.complement(m)).collect();
    let refs: Vec<&BitSet> = comps.iter().collect();
    Ok(BoxElement { arity: xs.len(), members: product_set(m, &refs) })
}

fn square_parts(m: usize, t: usize) -> (usize, usize) {
    let v = tuple_of(&[m, m], t);
    (v[0], v[1])
}

fn check_arity(found: usize) -> Result<()> {
    if found != 2 {
        return Err(CoreError::ArityMismatch { expected: 2, found });
    }
    Ok(())
}

/// `ω(⋁ᵢ dᵢ⊗eᵢ) = ⋀_{A⊆I} (⋁_{i∈A} dᵢ) ⊠ (⋁_{i∉A} eᵢ)` over the maximal
/// prime pairs of `t`.
pub fn omega(d: &FiniteDistLattice, t: &TensorElement) -> Result<BoxElement> {
    check_arity(t.arity)?;
    let m = d.base().len();
    let sq = d.base().power(2);
    let gens: Vec<(usize, usize)> = sq.maximal(t.members.bits()).iter().map(|g| square_parts(m, g)).collect();
    if gens.len() > OMEGA_FORMULA_LIMIT {
        return omega_direct(d, t);
    }
    let full = BitSet::full(m);
    let mut acc = BitSet::new();
    for mask in 0u64..(1u64 << gens.len()) {
        let mut da = BitSet::new();
        let mut ea = BitSet::new();
        for (i, &(p, q)) in gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                da.union_with(d.base().down(p));
            } else {
                ea.union_with(d.base().down(q));
            }
        }
        acc.union_with(&product_set(m, &[&full.difference(&da), &full.difference(&ea)]));
    }
    Ok(BoxElement { arity: 2, members: acc })
}

/// `ω⁻¹(⋀ᵢ mᵢ⊠nᵢ) = ⋁_{A⊆I} (⋀_{i∈A} mᵢ) ⊗ (⋀_{i∉A} nᵢ)` over the minimal
/// pairs of the upset.
pub fn omega_inv(d: &FiniteDistLattice, u: &BoxElement) -> Result<TensorElement> {
    check_arity(u.arity)?;
    let m = d.base().len();
    let sq = d.base().power(2);
    let gens: Vec<(usize, usize)> = sq.minimal(&u.members).iter().map(|g| square_parts(m, g)).collect();
    if gens.len() > OMEGA_FORMULA_LIMIT {
        return omega_inv_direct(d, u);
    }
    let full = BitSet::full(m);
    let mut acc = BitSet::new();
    for mask in 0u64..(1u64 << gens.len()) {
        let mut ma = full.clone();
        let mut na = full.clone();
        for (i, &(p, q)) in gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                ma.difference_with(d.base().up(p));
            } else {
                na.difference_with(d.base().up(q));
            }
        }
        acc.union_with(&product_set(m, &[&ma, &na]));
    }
    Ok(TensorElement { arity: 2, members: DownSet::from_bits_unchecked(acc) })
}

/// The isomorphism commuting with both coproduct injections, computed as the
/// complement of the downset.
pub fn omega_direct(d: &FiniteDistLattice, t: &TensorElement) -> Result<BoxElement> {
    check_arity(t.arity)?;
    let n = d.base().len().pow(2);
    Ok(BoxElement { arity: 2, members: t.members.complement(n) })
}

pub fn omega_inv_direct(d: &FiniteDistLattice, u: &BoxElement) -> Result<TensorElement> {
    check_arity(u.arity)?;
    let n = d.base().len().pow(2);
    Ok(TensorElement { arity: 2, members: DownSet::from_bits_unchecked(u.members.complement(n)) })
}

/// `x ⊸ t = ⋁{y | x⊗y <= t}`.
pub fn limp(d: &FiniteDistLattice, x: &DownSet, t: &TensorElement) -> Result<DownSet> {
    check_arity(t.arity)?;
    check_elements(d, &[x])?;
    let m = d.base().len();
    Ok(DownSet::from_bits_unchecked((0..m).filter(|&q| x.iter().all(|p| t.members.contains(p * m + q))).collect()))
}

/// `t ⟜ y = ⋁{x | x⊗y <= t}`.
pub fn rimp(d: &FiniteDistLattice, t: &TensorElement, y: &DownSet) -> Result<DownSet> {
    check_arity(t.arity)?;
    check_elements(d, &[y])?;
    let m = d.base().len();
    Ok(DownSet::from_bits_unchecked((0..m).filter(|&p| y.iter().all(|q| t.members.contains(p * m + q))).collect()))
}

fn check_join_map(f: &LatticeMap, d: &FiniteDistLattice) -> Result<()> {
    if f.dom() != d || f.cod() != d {
        return Err(CoreError::LatticeMismatch);
    }
    f.check_joins()
}

/// `f ⊗ g` on the tensor square, for join-preserving `f, g: D → D`.
pub fn tensor_of_homs(f: &LatticeMap, g: &LatticeMap) -> Result<LatticeMap> {
    let d = f.dom().clone();
    check_join_map(f, &d)?;
    check_join_map(g, &d)?;
    let m = d.base().len();
    let fp: Vec<DownSet> = (0..m).map(|p| f.apply(&d.prime(p)).clone()).collect();
    let gp: Vec<DownSet> = (0..m).map(|p| g.apply(&d.prime(p)).clone()).collect();
    let sq = tensor_power(&d, 2);
    LatticeMap::from_fn(&sq, &sq, |s| {
        let mut acc = BitSet::new();
        for t in s.iter() {
            let (p, q) = square_parts(m, t);
            acc.union_with(&product_set(m, &[fp[p].bits(), gp[q].bits()]));
        }
        DownSet::from_bits_unchecked(acc)
    })
}

/// `g ⊠ g'` on the `⊠` form, for meet-preserving `g, g': D → D`.
pub fn box_of_meet_maps(g: &LatticeMap, h: &LatticeMap, u: &BoxElement) -> Result<BoxElement> {
    check_arity(u.arity)?;
    let d = g.dom();
    if g.cod() != d || h.dom() != d || h.cod() != d {
        return Err(CoreError::LatticeMismatch);
    }
    g.check_meets()?;
    h.check_meets()?;
    let m = d.base().len();
    let mut acc = BitSet::new();
    for t in u.members.iter() {
        let (p, q) = square_parts(m, t);
        let a = g.apply(&d.meet_prime(p)).complement(m);
        let b = h.apply(&d.meet_prime(q)).complement(m);
        acc.union_with(&product_set(m, &[&a, &b]));
    }
    Ok(BoxElement { arity: 2, members: acc })
}

/// `ω⁻¹ ∘ (g ⊠ g') ∘ ω` as a map on the tensor square.
pub fn conjugate_box_map(g: &LatticeMap, h: &LatticeMap) -> Result<LatticeMap> {
    let d = g.dom().clone();
    let sq = tensor_power(&d, 2);
    let els = sq.elements()?;
    let mut table = Vec::with_capacity(els.len());
    for s in els {
        let t = TensorElement::from_downset(2, s.clone());
        let u = box_of_meet_maps(g, h, &omega(&d, &t)?)?;
        table.push(omega_inv(&d, &u)?.members);
    }
    LatticeMap::new(sq.clone(), sq, table)
}

/// The prime tuple `↓(p₁, .., pₙ)` of `D^⊗n`.
pub fn prime_tensor(d: &FiniteDistLattice, tuple: &[usize]) -> TensorElement {
    let downs: Vec<&BitSet> = tuple.iter().map(|&p| d.base().down(p)).collect();
    let members = DownSet::from_bits_unchecked(product_set(d.base().len(), &downs));
    TensorElement { arity: tuple.len(), members }
}

/// All elements of `D^⊗n` (enumerable sizes only).
pub fn tensor_elements(d: &FiniteDistLattice, n: usize) -> Result<Vec<TensorElement>> {
    Ok(tensor_power(d, n).elements()?.iter().map(|s| TensorElement { arity: n, members: s.clone() }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers() {
        let b4 = FiniteDistLattice::boolean(2);
        assert_eq!(tensor_power(&b4, 2).len().unwrap(), 16);
        let two = FiniteDistLattice::chain(1);
        for n in 0..4 {
            assert_eq!(tensor_power(&two, n).len().unwrap(), 2);
        }
        assert_eq!(tensor_power(&b4, 1), b4);
    }

    #[test]
    fn pure_tensors() {
        let d = FiniteDistLattice::chain(2);
        let els = d.elements().unwrap();
        for x in els {
            for y in els {
                assert_eq!(pure_tensor(&d, &[&d.bottom(), y]).unwrap(), TensorElement::bottom(2));
                for x2 in els {
                    let l = pure_tensor(&d, &[&x.union(x2), y]).unwrap();
                    let r = pure_tensor(&d, &[x, y]).unwrap().join(&pure_tensor(&d, &[x2, y]).unwrap());
                    assert_eq!(l, r);
                }
            }
        }
        assert_eq!(pure_tensor(&d, &[&d.top(), &d.top()]).unwrap(), TensorElement::top(&d, 2));
    }

    #[test]
    fn omega_on_injections() {
        let d = FiniteDistLattice::chain(2);
        for x in d.elements().unwrap() {
            let t = pure_tensor(&d, &[x, &d.top()]).unwrap();
            assert_eq!(omega(&d, &t).unwrap(), pure_box(&d, &[x, &d.bottom()]).unwrap());
            let t = pure_tensor(&d, &[&d.top(), x]).unwrap();
            assert_eq!(omega(&d, &t).unwrap(), pure_box(&d, &[&d.bottom(), x]).unwrap());
        }
        assert_eq!(omega(&d, &TensorElement::bottom(2)).unwrap(), BoxElement::bottom(&d, 2));
        assert_eq!(
            omega(&d, &TensorElement::bottom(3)),
            Err(CoreError::ArityMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn implication_of_bottom_is_top() {
        let d = FiniteDistLattice::boolean(2);
        for t in tensor_elements(&d, 2).unwrap() {
            assert_eq!(limp(&d, &d.bottom(), &t).unwrap(), d.top());
            assert_eq!(rimp(&d, &t, &d.bottom()).unwrap(), d.top());
        }
    }
}
