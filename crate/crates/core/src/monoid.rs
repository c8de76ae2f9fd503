//! Finite ordered monoids and their dual derivation algebras.
//!
//! The dual of `M` is the lattice `𝒟(M)` of downsets with
//! `μ(↓a ⊗ ↓b) = ↓(ab)`, so `A\C = {b | A·b ⊆ C}` and `C/B = {a | a·B ⊆ C}`.
//!
//! A relational morphism `M → N` is an [`OrderRelation`]: rows are upsets of
//! `N` and shrink as the argument grows. Its dual is
//! `ρ̂(B) = {m | ρ(m) ∩ B ≠ ∅}`, a join- and top-preserving map `𝒟N → 𝒟M`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::error::{CoreError, Result};
use crate::lattice::{dualize_map, FiniteDistLattice, LatticeHom, LatticeMap};
use crate::order::{DownSet, MonotoneMap, OrderRelation, Poset};
use crate::residuation::{check_derivation, ResiduationAlgebra};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderedMonoid {
    carrier: Poset,
    mult: Vec<usize>,
    unit: usize,
}

impl OrderedMonoid {
    /// `mult[a * n + b]` is `ab`.
    pub fn new(carrier: Poset, mult: Vec<usize>, unit: usize) -> Result<OrderedMonoid> {
        let n = carrier.len();
        if mult.len() != n * n {
            return Err(CoreError::ArityMismatch { expected: n * n, found: mult.len() });
        }
        if let Some(&v) = mult.iter().find(|&&v| v >= n) {
            return Err(CoreError::IndexOutOfRange { index: v, bound: n });
        }
        if unit >= n {
            return Err(CoreError::IndexOutOfRange { index: unit, bound: n });
        }
        let m = OrderedMonoid { carrier, mult, unit };
        for a in 0..n {
            if m.mul(unit, a) != a || m.mul(a, unit) != a {
                return Err(CoreError::InvalidMonoid(format!("{unit} is not a unit at {a}")));
            }
            for b in 0..n {
                for c in 0..n {
                    if m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)) {
                        return Err(CoreError::InvalidMonoid(format!("({a}{b}){c} ≠ {a}({b}{c})")));
                    }
                }
            }
        }
        for (a, b) in m.carrier.pairs() {
            for c in 0..n {
                if !m.carrier.leq(m.mul(a, c), m.mul(b, c)) {
                    return Err(CoreError::NotMonotone { x: a * n + c, y: b * n + c });
                }
                if !m.carrier.leq(m.mul(c, a), m.mul(c, b)) {
                    return Err(CoreError::NotMonotone { x: c * n + a, y: c * n + b });
                }
            }
        }
        Ok(m)
    }

    /// A monoid with the discrete order.
    pub fn discrete(n: usize, mult: Vec<usize>, unit: usize) -> Result<OrderedMonoid> {
        Self::new(Poset::antichain(n), mult, unit)
    }

    pub fn trivial() -> OrderedMonoid {
        OrderedMonoid { carrier: Poset::chain(1), mult: vec![0], unit: 0 }
    }

    /// `ℤ/n` under addition.
    pub fn cyclic(n: usize) -> OrderedMonoid {
        let mult = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::discrete(n, mult, 0).expect("a group")
    }

    pub fn carrier(&self) -> &Poset {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.carrier.len() + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.mult
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// `A·B = {ab | a ∈ A, b ∈ B}`.
    pub fn product(&self, a: &BitSet, b: &BitSet) -> BitSet {
        a.iter().flat_map(|x| b.iter().map(move |y| self.mul(x, y))).collect()
    }

    /// Unit-preserving, multiplicative and monotone.
    pub fn is_hom(&self, cod: &OrderedMonoid, f: &MonotoneMap) -> bool {
        let n = self.len();
        f.dom() == &self.carrier
            && f.cod() == &cod.carrier
            && f.apply(self.unit) == cod.unit
            && (0..n).all(|a| (0..n).all(|b| f.apply(self.mul(a, b)) == cod.mul(f.apply(a), f.apply(b))))
    }
}

/// `𝒟(M)` with `μ(↓a ⊗ ↓b) = ↓(ab)`; always a derivation algebra.
pub fn monoid_to_derivation(m: &OrderedMonoid) -> ResiduationAlgebra {
    let d = FiniteDistLattice::from_poset(&m.carrier);
    let n = m.len();
    let mu = (0..n * n).map(|i| d.prime(m.mult[i])).collect();
    ResiduationAlgebra::from_multiplication(&d, mu).expect("multiplication is monotone")
}

/// The monoid of join-primes, `p·q = μ(p ⊗ q)`.
pub fn derivation_to_monoid(r: &ResiduationAlgebra) -> Result<OrderedMonoid> {
    check_derivation(r)?;
    let d = r.lattice();
    let prime = |x: &DownSet| d.as_prime(x).ok_or_else(|| CoreError::NotDerivation(format!("{x:?} is not a prime")));
    let mult = r.mu_table().iter().map(prime).collect::<Result<Vec<_>>>()?;
    let unit = prime(r.unit().ok_or(CoreError::NoUnit)?)?;
    OrderedMonoid::new(d.base().clone(), mult, unit)
}

/// `B ↦ f⁻¹[B]`, from `𝒟(cod)` to `𝒟(dom)`.
pub fn dualize_monoid_hom(dom: &OrderedMonoid, cod: &OrderedMonoid, f: &MonotoneMap) -> Result<LatticeHom> {
    if !dom.is_hom(cod, f) {
        return Err(CoreError::InvalidMonoid(format!("{:?} is not a monoid homomorphism", f.table())));
    }
    dualize_map(f)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationalMonoidMorphism {
    dom: OrderedMonoid,
    cod: OrderedMonoid,
    rel: OrderRelation,
}

impl RelationalMonoidMorphism {
    /// Checks only the shape: `rel` relates the two carriers.
    pub fn new(dom: OrderedMonoid, cod: OrderedMonoid, rel: OrderRelation) -> Result<RelationalMonoidMorphism> {
        if rel.dom() != dom.carrier() || rel.cod() != cod.carrier() {
            return Err(CoreError::PosetMismatch);
        }
        Ok(RelationalMonoidMorphism { dom, cod, rel })
    }

    /// `m ↦ ↑f(m)`.
    pub fn graph(dom: &OrderedMonoid, cod: &OrderedMonoid, f: &MonotoneMap) -> Result<RelationalMonoidMorphism> {
        Self::new(dom.clone(), cod.clone(), OrderRelation::graph(f))
    }

    /// `m ↦ ↑m`.
    pub fn identity(m: &OrderedMonoid) -> RelationalMonoidMorphism {
        RelationalMonoidMorphism { dom: m.clone(), cod: m.clone(), rel: OrderRelation::identity(m.carrier()) }
    }

    /// `m ↦ {n | e(n) >= m}` for a homomorphism `e: N → M`.
    pub fn inverse(e_dom: &OrderedMonoid, e_cod: &OrderedMonoid, e: &MonotoneMap) -> Result<RelationalMonoidMorphism> {
        if !e_dom.is_hom(e_cod, e) {
            return Err(CoreError::InvalidRelMorphism("not the inverse of a homomorphism".into()));
        }
        let rows = (0..e_cod.len()).map(|m| e.preimage(e_cod.carrier().up(m))).collect();
        Self::new(e_cod.clone(), e_dom.clone(), OrderRelation::from_rows(e_cod.carrier().clone(), e_dom.carrier().clone(), rows)?)
    }

    pub fn dom(&self) -> &OrderedMonoid {
        &self.dom
    }

    pub fn cod(&self) -> &OrderedMonoid {
        &self.cod
    }

    pub fn relation(&self) -> &OrderRelation {
        &self.rel
    }

    /// Kleisli composite, `self` first.
    pub fn then(&self, other: &RelationalMonoidMorphism) -> Result<RelationalMonoidMorphism> {
        if self.cod != other.dom {
            return Err(CoreError::PosetMismatch);
        }
        Self::new(self.dom.clone(), other.cod.clone(), self.rel.compose(&other.rel)?)
    }
}

/// Totality, `ρ(x)ρ(y) ⊆ ρ(xy)` and `1_N ∈ ρ(1_M)`.
pub fn check_relational_morphism(rho: &RelationalMonoidMorphism) -> bool {
    let (m, n) = (&rho.dom, &rho.cod);
    let r = &rho.rel;
    r.is_total()
        && r.contains(m.unit(), n.unit())
        && (0..m.len()).all(|x| (0..m.len()).all(|y| n.product(r.image(x), r.image(y)).is_subset(r.image(m.mul(x, y)))))
}

/// `ρ̂(B) = {m | ρ(m) ∩ B ≠ ∅}` on downsets.
pub fn dualize_relational_morphism(rho: &RelationalMonoidMorphism) -> Result<LatticeMap> {
    if !check_relational_morphism(rho) {
        return Err(CoreError::InvalidRelMorphism("lax diagrams or totality fail".into()));
    }
    Ok(relation_dual(&rho.rel))
}

/// [`dualize_relational_morphism`] without validating the relation.
pub fn relation_dual(rel: &OrderRelation) -> LatticeMap {
    let dom = FiniteDistLattice::from_poset(rel.cod());
    let cod = FiniteDistLattice::from_poset(rel.dom());
    LatticeMap::from_fn(&dom, &cod, |b| {
        DownSet::from_bits_unchecked((0..rel.dom().len()).filter(|&m| rel.image(m).intersects(b)).collect())
    })
    .expect("images of a stable relation are downsets")
}

/// The relation of a join-preserving map `𝒟N → 𝒟M`: `m ρ n <=> m ∈ f(↓n)`.
pub fn relation_of_dual(f: &LatticeMap) -> Result<OrderRelation> {
    f.check_joins()?;
    let (n, m) = (f.dom().base(), f.cod().base());
    let rows = (0..m.len())
        .map(|x| (0..n.len()).filter(|&y| f.apply(&f.dom().prime(y)).contains(x)).collect())
        .collect();
    OrderRelation::from_rows(m.clone(), n.clone(), rows)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn go(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            go(k + 1, perm, out);
            perm.swap(k, i);
        }
    }
    go(0, &mut perm, &mut out);
    out
}

/// A bijection `σ` preserving unit, multiplication and order both ways.
pub fn monoid_isomorphism(a: &OrderedMonoid, b: &OrderedMonoid) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() || n > 8 {
        return None;
    }
    permutations(n).into_iter().find(|s| {
        s[a.unit] == b.unit
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    s[a.mul(x, y)] == b.mul(s[x], s[y]) && a.carrier.leq(x, y) == b.carrier.leq(s[x], s[y])
                })
            })
    })
}

/// All monoid structures on the fixed carrier, found by backtracking over
/// table cells with monotonicity and associativity pruning.
pub fn monoids_on(carrier: &Poset) -> Vec<OrderedMonoid> {
    let n = carrier.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    const UNSET: usize = usize::MAX;
    let order = carrier.linear_extension();
    for u in 0..n {
        let mut t = vec![UNSET; n * n];
        for a in 0..n {
            t[u * n + a] = a;
            t[a * n + u] = a;
        }
        let cells: Vec<usize> = order
            .iter()
            .flat_map(|&a| order.iter().map(move |&b| a * n + b))
            .filter(|&c| c / n != u && c % n != u)
            .collect();
        search(carrier, &cells, 0, &mut t, &mut |t| {
            out.push(OrderedMonoid { carrier: carrier.clone(), mult: t.to_vec(), unit: u })
        });
    }
    out.sort_by(|a, b| (a.unit, &a.mult).cmp(&(b.unit, &b.mult)));
    out
}

fn search(p: &Poset, cells: &[usize], k: usize, t: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    const UNSET: usize = usize::MAX;
    let n = p.len();
    if k == cells.len() {
        emit(t);
        return;
    }
    let c = cells[k];
    let (a, b) = (c / n, c % n);
    'value: for v in 0..n {
        // monotone against every filled neighbour
        for a2 in 0..n {
            for b2 in 0..n {
                let w = t[a2 * n + b2];
                if w == UNSET {
                    continue;
                }
                if p.leq(a2, a) && p.leq(b2, b) && !p.leq(w, v) {
                    continue 'value;
                }
                if p.leq(a, a2) && p.leq(b, b2) && !p.leq(v, w) {
                    continue 'value;
                }
            }
        }
        t[c] = v;
        if associative_so_far(t, n) {
            search(p, cells, k + 1, t, emit);
        }
        t[c] = UNSET;
    }
}

fn associative_so_far(t: &[usize], n: usize) -> bool {
    const UNSET: usize = usize::MAX;
    for x in 0..n {
        for y in 0..n {
            let xy = t[x * n + y];
            if xy == UNSET {
                continue;
            }
            for z in 0..n {
                let yz = t[y * n + z];
                if yz == UNSET {
                    continue;
                }
                let l = t[xy * n + z];
                let r = t[x * n + yz];
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
        }
    }
    true
}

/// All ordered monoids with `n` elements up to isomorphism.
pub fn ordered_monoids(n: usize) -> Vec<OrderedMonoid> {
    let mut out: Vec<OrderedMonoid> = Vec::new();
    for p in crate::enumerate::posets(n) {
        for m in monoids_on(&p) {
            if !out.iter().any(|o| monoid_isomorphism(o, &m).is_some()) {
                out.push(m);
            }
        }
    }
    out
}

/// All homomorphisms of ordered monoids `a → b`.
pub fn monoid_homs(a: &OrderedMonoid, b: &OrderedMonoid) -> Vec<MonotoneMap> {
    crate::enumerate::monotone_maps(a.carrier(), b.carrier()).into_iter().filter(|f| a.is_hom(b, f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residuation::classify;

    #[test]
    fn trivial_monoid() {
        let r = monoid_to_derivation(&OrderedMonoid::trivial());
        assert_eq!(r.lattice().len().unwrap(), 2);
        assert_eq!(r.unit(), Some(&r.lattice().top()));
        assert_eq!(derivation_to_monoid(&r).unwrap(), OrderedMonoid::trivial());
    }

    #[test]
    fn two_element_group() {
        let z2 = OrderedMonoid::cyclic(2);
        let r = monoid_to_derivation(&z2);
        let d = r.lattice();
        assert!(d.is_boolean());
        // {1}\{g} = {g}
        assert_eq!(r.lres(&d.prime(0), &d.prime(1)), d.prime(1));
        assert!(classify(&r).unwrap().derivation);
    }

    #[test]
    fn residuals_are_quotients_of_sets() {
        for m in ordered_monoids(3) {
            let r = monoid_to_derivation(&m);
            let d = r.lattice();
            for a in d.elements().unwrap() {
                for c in d.elements().unwrap() {
                    let l: BitSet = (0..m.len()).filter(|&b| m.product(a, &BitSet::singleton(b)).is_subset(c)).collect();
                    let rr: BitSet = (0..m.len()).filter(|&b| m.product(&BitSet::singleton(b), a).is_subset(c)).collect();
                    assert_eq!(*r.lres(a, c).bits(), l);
                    assert_eq!(*r.rres(c, a).bits(), rr);
                }
            }
        }
    }

    #[test]
    fn bad_tables() {
        assert!(matches!(OrderedMonoid::discrete(2, vec![0, 1, 1, 1], 1), Err(CoreError::InvalidMonoid(_))));
        // x·y = y on two elements has no unit
        assert!(OrderedMonoid::discrete(2, vec![0, 1, 0, 1], 0).is_err());
        // the group ℤ/2 is not monotone for 0 < 1
        assert!(matches!(OrderedMonoid::new(Poset::chain(2), vec![0, 1, 1, 0], 0), Err(CoreError::NotMonotone { .. })));
    }

    #[test]
    fn hom_to_trivial_dualizes_to_bounds() {
        let m = OrderedMonoid::cyclic(3);
        let one = OrderedMonoid::trivial();
        let f = MonotoneMap::new(m.carrier().clone(), one.carrier().clone(), vec![0; 3]).unwrap();
        let h = dualize_monoid_hom(&m, &one, &f).unwrap();
        let d = h.cod().clone();
        assert_eq!(h.table(), [d.bottom(), d.top()]);
    }

    #[test]
    fn relational_examples() {
        let m = OrderedMonoid::cyclic(2);
        let id = RelationalMonoidMorphism::identity(&m);
        assert!(check_relational_morphism(&id));
        assert_eq!(dualize_relational_morphism(&id).unwrap(), LatticeMap::identity(&FiniteDistLattice::boolean(2)).unwrap());
        let full = OrderRelation::full(m.carrier(), m.carrier());
        assert!(check_relational_morphism(&RelationalMonoidMorphism::new(m.clone(), m.clone(), full).unwrap()));
        // ρ(1) = {g} misses the unit
        let bad = OrderRelation::from_rows(m.carrier().clone(), m.carrier().clone(), vec![BitSet::singleton(1); 2]).unwrap();
        assert!(!check_relational_morphism(&RelationalMonoidMorphism::new(m.clone(), m, bad).unwrap()));
    }
}
