//! Finite distributive lattices in downset form, Birkhoff duality and adjoints.
//!
//! A lattice is represented by its poset of join-primes; elements are the
//! downsets of that poset ordered by inclusion, `↓p` is the join-prime at `p`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitSet;
use crate::error::{CoreError, Result};
use crate::order::{DownSet, MonotoneMap, Poset};

/// Lattices with more elements than this are not enumerated.
pub const ELEMENT_LIMIT: usize = 1 << 16;

struct LatticeData {
    base: Poset,
    elements: Option<Vec<DownSet>>,
}

/// The lattice of downsets of a finite poset. Cheap to clone.
#[derive(Clone)]
pub struct FiniteDistLattice(Arc<LatticeData>);

impl PartialEq for FiniteDistLattice {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.base == other.0.base
    }
}
impl Eq for FiniteDistLattice {}

impl fmt::Debug for FiniteDistLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D({:?})", self.0.base)
    }
}

impl FiniteDistLattice {
    pub fn from_poset(p: &Poset) -> FiniteDistLattice {
        let elements = p.downsets_limited(ELEMENT_LIMIT);
        FiniteDistLattice(Arc::new(LatticeData { base: p.clone(), elements }))
    }

    /// The powerset of `n` atoms.
    pub fn boolean(n: usize) -> FiniteDistLattice {
        Self::from_poset(&Poset::antichain(n))
    }

    /// The chain with `n + 1` elements.
    pub fn chain(n: usize) -> FiniteDistLattice {
        Self::from_poset(&Poset::chain(n))
    }

    pub fn base(&self) -> &Poset {
        &self.0.base
    }

    pub fn is_boolean(&self) -> bool {
        self.0.base.is_discrete()
    }

    pub fn bottom(&self) -> DownSet {
        DownSet::empty()
    }

    pub fn top(&self) -> DownSet {
        DownSet::from_bits_unchecked(BitSet::full(self.0.base.len()))
    }

    pub fn join(&self, x: &DownSet, y: &DownSet) -> DownSet {
        x.union(y)
    }

    pub fn meet(&self, x: &DownSet, y: &DownSet) -> DownSet {
        x.intersection(y)
    }

    pub fn leq(&self, x: &DownSet, y: &DownSet) -> bool {
        x.is_subset(y)
    }

    pub fn contains(&self, x: &BitSet) -> bool {
        self.0.base.is_downset(x)
    }

    /// Checked conversion from a raw set.
    pub fn element(&self, x: BitSet) -> Result<DownSet> {
        self.0.base.downset(x)
    }

    /// The join-prime `↓p`.
    pub fn prime(&self, p: usize) -> DownSet {
        DownSet::from_bits_unchecked(self.0.base.down(p).clone())
    }

    pub fn primes(&self) -> Vec<DownSet> {
        (0..self.0.base.len()).map(|p| self.prime(p)).collect()
    }

    /// The meet-prime `P ∖ ↑p`.
    pub fn meet_prime(&self, p: usize) -> DownSet {
        DownSet::from_bits_unchecked(self.0.base.up(p).complement(self.0.base.len()))
    }

    /// `Some(p)` iff `x = ↓p`.
    pub fn as_prime(&self, x: &BitSet) -> Option<usize> {
        let m = self.0.base.maximal(x);
        match m.first() {
            Some(p) if m.len() == 1 => Some(p),
            _ => None,
        }
    }

    pub fn is_join_prime(&self, x: &BitSet) -> bool {
        self.as_prime(x).is_some()
    }

    /// Boolean complement, when it exists.
    pub fn complement(&self, x: &DownSet) -> Option<DownSet> {
        let c = x.complement(self.0.base.len());
        self.0.base.is_downset(&c).then(|| DownSet::from_bits_unchecked(c))
    }

    /// All elements in ascending `BitSet` order (a linear extension of `<=`).
    pub fn elements(&self) -> Result<&[DownSet]> {
        self.0
            .elements
            .as_deref()
            .ok_or(CoreError::TooLarge { what: "lattice", size: ELEMENT_LIMIT })
    }

    pub fn len(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    pub fn index_of(&self, x: &DownSet) -> Option<usize> {
        self.0.elements.as_ref()?.binary_search(x).ok()
    }
}

/// The Birkhoff dual: the poset of join-primes.
pub fn dual_poset(d: &FiniteDistLattice) -> Poset {
    d.base().clone()
}

/// A lattice given by an explicit order, before canonicalization.
#[derive(Clone, Debug)]
pub struct AbstractLattice {
    order: Poset,
    join: Vec<usize>,
    meet: Vec<usize>,
}

impl AbstractLattice {
    /// Checks that `order` has all binary joins and meets and a bottom.
    pub fn new(order: Poset) -> Result<AbstractLattice> {
        let n = order.len();
        if n == 0 {
            return Err(CoreError::NotALattice(0, 0, "bottom"));
        }
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let ub = order.up(a).intersection(order.up(b));
                let lb = order.down(a).intersection(order.down(b));
                let j = order.minimal(&ub);
                let m = order.maximal(&lb);
                if j.len() != 1 {
                    return Err(CoreError::NotALattice(a, b, "join"));
                }
                if m.len() != 1 {
                    return Err(CoreError::NotALattice(a, b, "meet"));
                }
                join[a * n + b] = j.first().unwrap_or(0);
                meet[a * n + b] = m.first().unwrap_or(0);
            }
        }
        Ok(AbstractLattice { order, join, meet })
    }

    /// The inclusion order of an enumerable downset lattice.
    pub fn from_lattice(d: &FiniteDistLattice) -> Result<AbstractLattice> {
        let els = d.elements()?;
        let leq: Vec<Vec<bool>> = els.iter().map(|x| els.iter().map(|y| x.is_subset(y)).collect()).collect();
        Self::new(Poset::from_matrix(&leq)?)
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        (0..self.len()).fold(0, |acc, x| self.meet(acc, x))
    }

    /// First failing triple of `x∧(y∨z) = (x∧y)∨(x∧z)`, if any.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Nonzero `x` with `x <= u∨v => x <= u or x <= v`, ascending.
    pub fn join_primes(&self) -> Vec<usize> {
        let n = self.len();
        let bot = self.bottom();
        (0..n)
            .filter(|&x| x != bot)
            .filter(|&x| {
                (0..n).all(|u| {
                    (0..n).all(|v| !self.order.leq(x, self.join(u, v)) || self.order.leq(x, u) || self.order.leq(x, v))
                })
            })
            .collect()
    }
}

/// Downset lattice of the join-primes, plus the isomorphism
/// `x ↦ {i | primes[i] <= x}` as a table over the abstract elements.
pub fn canonicalize(a: &AbstractLattice) -> Result<(FiniteDistLattice, Vec<DownSet>)> {
    if let Some((x, y, z)) = a.distributivity_witness() {
        return Err(CoreError::NotDistributive(x, y, z));
    }
    let primes = a.join_primes();
    let m = primes.len();
    let leq: Vec<Vec<bool>> =
        (0..m).map(|i| (0..m).map(|j| a.order.leq(primes[i], primes[j])).collect()).collect();
    let base = Poset::from_matrix(&leq)?;
    let d = FiniteDistLattice::from_poset(&base);
    let iso = (0..a.len())
        .map(|x| DownSet::from_bits_unchecked((0..m).filter(|&i| a.order.leq(primes[i], x)).collect()))
        .collect();
    Ok((d, iso))
}

/// A monotone map between enumerable lattices, stored as a full table.
#[derive(Clone, PartialEq, Eq)]
pub struct LatticeMap {
    dom: FiniteDistLattice,
    cod: FiniteDistLattice,
    table: Vec<DownSet>,
}

impl fmt::Debug for LatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.table.iter()).finish()
    }
}

impl LatticeMap {
    /// `table[i]` is the image of the `i`-th element of `dom`.
    pub fn new(dom: FiniteDistLattice, cod: FiniteDistLattice, table: Vec<DownSet>) -> Result<LatticeMap> {
        let els = dom.elements()?;
        if table.len() != els.len() {
            return Err(CoreError::ArityMismatch { expected: els.len(), found: table.len() });
        }
        for t in &table {
            cod.base().downset(t.bits().clone())?;
        }
        for (i, x) in els.iter().enumerate() {
            for (j, y) in els.iter().enumerate().skip(i + 1) {
                if x.is_subset(y) && !table[i].is_subset(&table[j]) {
                    return Err(CoreError::NotMonotone { x: i, y: j });
                }
            }
        }
        Ok(LatticeMap { dom, cod, table })
    }

    pub fn from_fn(
        dom: &FiniteDistLattice,
        cod: &FiniteDistLattice,
        f: impl FnMut(&DownSet) -> DownSet,
    ) -> Result<LatticeMap> {
        let table = dom.elements()?.iter().map(f).collect();
        Self::new(dom.clone(), cod.clone(), table)
    }

    pub(crate) fn from_fn_unchecked(
        dom: &FiniteDistLattice,
        cod: &FiniteDistLattice,
        f: impl FnMut(&DownSet) -> DownSet,
    ) -> Result<LatticeMap> {
        let table = dom.elements()?.iter().map(f).collect();
        Ok(LatticeMap { dom: dom.clone(), cod: cod.clone(), table })
    }

    pub fn identity(d: &FiniteDistLattice) -> Result<LatticeMap> {
        Ok(LatticeMap { dom: d.clone(), cod: d.clone(), table: d.elements()?.to_vec() })
    }

    pub fn dom(&self) -> &FiniteDistLattice {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteDistLattice {
        &self.cod
    }

    pub fn table(&self) -> &[DownSet] {
        &self.table
    }

    /// Panics if `x` is not an element of the domain.
    pub fn apply(&self, x: &DownSet) -> &DownSet {
        let i = self.dom.index_of(x).expect("element of the domain lattice");
        &self.table[i]
    }

    /// `self` first, then `g`.
    pub fn then(&self, g: &LatticeMap) -> Result<LatticeMap> {
        if self.cod != g.dom {
            return Err(CoreError::LatticeMismatch);
        }
        let table = self.table.iter().map(|y| g.apply(y).clone()).collect();
        Ok(LatticeMap { dom: self.dom.clone(), cod: g.cod.clone(), table })
    }

    /// Finite joins, including the empty one.
    pub fn check_joins(&self) -> Result<()> {
        if !self.table[0].is_empty() {
            return Err(CoreError::NotPreserving { what: "bottom", detail: format!("f(⊥) = {:?}", self.table[0]) });
        }
        let els = self.dom.elements()?;
        for (i, x) in els.iter().enumerate() {
            for y in &els[i + 1..] {
                if *self.apply(&x.union(y)) != self.table[i].union(self.apply(y)) {
                    return Err(CoreError::NotPreserving { what: "joins", detail: format!("{x:?} ∨ {y:?}") });
                }
            }
        }
        Ok(())
    }

    /// Finite meets, including the empty one.
    pub fn check_meets(&self) -> Result<()> {
        let els = self.dom.elements()?;
        let last = els.len() - 1;
        if self.table[last] != self.cod.top() {
            return Err(CoreError::NotPreserving { what: "top", detail: format!("f(⊤) = {:?}", self.table[last]) });
        }
        for (i, x) in els.iter().enumerate() {
            for y in &els[i + 1..] {
                if *self.apply(&x.intersection(y)) != self.table[i].intersection(self.apply(y)) {
                    return Err(CoreError::NotPreserving { what: "meets", detail: format!("{x:?} ∧ {y:?}") });
                }
            }
        }
        Ok(())
    }

    pub fn preserves_joins(&self) -> bool {
        self.check_joins().is_ok()
    }

    pub fn preserves_meets(&self) -> bool {
        self.check_meets().is_ok()
    }

    /// `f*(d') = ⋀{d | d' <= f(d)}`; needs `f` to preserve finite meets.
    pub fn left_adjoint(&self) -> Result<LatticeMap> {
        self.check_meets()?;
        let els = self.dom.elements()?;
        LatticeMap::from_fn_unchecked(&self.cod, &self.dom, |y| {
            let mut acc = self.dom.top();
            for (x, fx) in els.iter().zip(&self.table) {
                if y.is_subset(fx) {
                    acc = acc.intersection(x);
                }
            }
            acc
        })
    }

    /// `f_*(d') = ⋁{d | f(d) <= d'}`; needs `f` to preserve finite joins.
    pub fn right_adjoint(&self) -> Result<LatticeMap> {
        self.check_joins()?;
        let els = self.dom.elements()?;
        LatticeMap::from_fn_unchecked(&self.cod, &self.dom, |y| {
            let mut acc = DownSet::empty();
            for (x, fx) in els.iter().zip(&self.table) {
                if fx.is_subset(y) {
                    acc = acc.union(x);
                }
            }
            acc
        })
    }

    /// `self ⊣ g`: `self(x) <= y <=> x <= g(y)` for all `x`, `y`.
    pub fn is_left_adjoint_of(&self, g: &LatticeMap) -> Result<bool> {
        if self.dom != g.cod || self.cod != g.dom {
            return Err(CoreError::LatticeMismatch);
        }
        let xs = self.dom.elements()?;
        let ys = self.cod.elements()?;
        Ok(xs.iter().zip(&self.table).all(|(x, fx)| {
            ys.iter().zip(&g.table).all(|(y, gy)| fx.is_subset(y) == x.is_subset(gy))
        }))
    }
}

/// A lattice homomorphism (preserves finite joins and meets).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeHom(LatticeMap);

impl LatticeHom {
    pub fn new(f: LatticeMap) -> Result<LatticeHom> {
        f.check_joins()?;
        f.check_meets()?;
        Ok(LatticeHom(f))
    }

    pub fn identity(d: &FiniteDistLattice) -> Result<LatticeHom> {
        Ok(LatticeHom(LatticeMap::identity(d)?))
    }

    pub fn map(&self) -> &LatticeMap {
        &self.0
    }

    pub fn into_map(self) -> LatticeMap {
        self.0
    }

    pub fn then(&self, g: &LatticeHom) -> Result<LatticeHom> {
        Ok(LatticeHom(self.0.then(&g.0)?))
    }
}

impl core::ops::Deref for LatticeHom {
    type Target = LatticeMap;
    fn deref(&self) -> &LatticeMap {
        &self.0
    }
}

/// Morphism part of Birkhoff duality: the left adjoint of `f` restricted to
/// join-primes, as a monotone map from the primes of `cod` to those of `dom`.
pub fn dualize_hom(f: &LatticeHom) -> Result<MonotoneMap> {
    let l = f.left_adjoint()?;
    let table = (0..f.cod().base().len())
        .map(|q| {
            let v = l.apply(&f.cod().prime(q));
            f.dom().as_prime(v).ok_or_else(|| CoreError::NotPreserving {
                what: "join-primes",
                detail: format!("left adjoint sends ↓{q} to {v:?}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    MonotoneMap::new(f.cod().base().clone(), f.dom().base().clone(), table)
}

/// `S ↦ φ⁻¹[S]`, from the downsets of `cod φ` to those of `dom φ`.
pub fn dualize_map(phi: &MonotoneMap) -> Result<LatticeHom> {
    let dom = FiniteDistLattice::from_poset(phi.cod());
    let cod = FiniteDistLattice::from_poset(phi.dom());
    LatticeHom::new(LatticeMap::from_fn(&dom, &cod, |s| DownSet::from_bits_unchecked(phi.preimage(s)))?)
}
