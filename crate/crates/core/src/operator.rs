//! Join operators between tensor powers and their dual order relations.
//!
//! A join-preserving map is stored by its values on join-primes. Its dual
//! relates `c` (a prime of the codomain) to `p` (a prime of the domain) iff
//! `c <= f(↓p)`. Composition is contravariant-free under the crate's variance
//! convention: the dual of `g∘h` is `dual(g)` followed by `dual(h)`.

use alloc::format;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::error::{CoreError, Result};
use crate::lattice::{FiniteDistLattice, LatticeMap};
use crate::order::{product_poset, DownSet, OrderRelation, Poset};
use crate::tensor::{tensor_power, TensorElement};

/// A join-preserving map between finite distributive lattices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JoinMap {
    dom: FiniteDistLattice,
    cod: FiniteDistLattice,
    table: Vec<DownSet>,
}

impl JoinMap {
    /// `table[p]` is the image of the join-prime `↓p`; it must be monotone in `p`.
    pub fn new(dom: FiniteDistLattice, cod: FiniteDistLattice, table: Vec<DownSet>) -> Result<JoinMap> {
        let base = dom.base();
        if table.len() != base.len() {
            return Err(CoreError::ArityMismatch { expected: base.len(), found: table.len() });
        }
        for t in &table {
            if !cod.base().is_downset(t.bits()) {
                cod.base().downset(t.bits().clone())?;
            }
        }
        for p in 0..base.len() {
            for q in base.down(p).iter() {
                if !table[q].is_subset(&table[p]) {
                    return Err(CoreError::NotMonotone { x: q, y: p });
                }
            }
        }
        Ok(JoinMap { dom, cod, table })
    }

    pub fn identity(d: &FiniteDistLattice) -> JoinMap {
        JoinMap { dom: d.clone(), cod: d.clone(), table: d.primes() }
    }

    /// Restriction of a join-preserving full table.
    pub fn from_lattice_map(f: &LatticeMap) -> Result<JoinMap> {
        f.check_joins()?;
        let table = f.dom().primes().iter().map(|p| f.apply(p).clone()).collect();
        Ok(JoinMap { dom: f.dom().clone(), cod: f.cod().clone(), table })
    }

    pub fn to_lattice_map(&self) -> Result<LatticeMap> {
        LatticeMap::from_fn(&self.dom, &self.cod, |x| self.eval(x))
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

    /// Join of the prime values below `x`.
    pub fn eval(&self, x: &BitSet) -> DownSet {
        let mut acc = BitSet::new();
        for p in x.iter() {
            acc.union_with(&self.table[p]);
        }
        DownSet::from_bits_unchecked(acc)
    }

    /// `self` first, then `g`.
    pub fn then(&self, g: &JoinMap) -> Result<JoinMap> {
        if self.cod != g.dom {
            return Err(CoreError::LatticeMismatch);
        }
        let table = self.table.iter().map(|x| g.eval(x)).collect();
        Ok(JoinMap { dom: self.dom.clone(), cod: g.cod.clone(), table })
    }

    /// `self ⊗ g` on the product bases (row-major).
    pub fn tensor(&self, g: &JoinMap) -> JoinMap {
        let dom = FiniteDistLattice::from_poset(&product_poset(&[self.dom.base().clone(), g.dom.base().clone()]));
        let cod = FiniteDistLattice::from_poset(&product_poset(&[self.cod.base().clone(), g.cod.base().clone()]));
        self.tensor_in(g, dom, cod)
    }

    fn tensor_in(&self, g: &JoinMap, dom: FiniteDistLattice, cod: FiniteDistLattice) -> JoinMap {
        let nb = g.cod.base().len();
        let mut table = Vec::with_capacity(dom.base().len());
        for a in &self.table {
            for b in &g.table {
                let mut acc = BitSet::new();
                for x in a.iter() {
                    for y in b.iter() {
                        acc.insert(x * nb + y);
                    }
                }
                table.push(DownSet::from_bits_unchecked(acc));
            }
        }
        JoinMap { dom, cod, table }
    }

    /// `self^⊗m` between the `m`-th tensor powers.
    pub fn power(&self, m: usize) -> JoinMap {
        if m == 1 {
            return self.clone();
        }
        let dom = tensor_power(&self.dom, m);
        let cod = tensor_power(&self.cod, m);
        let mut acc = JoinMap::identity(&FiniteDistLattice::chain(1));
        for _ in 0..m {
            acc = acc.tensor(self);
        }
        JoinMap { dom, cod, table: acc.table }
    }

    /// `c R p <=> c <= f(↓p)`, from the primes of `cod` to those of `dom`.
    pub fn dual(&self) -> OrderRelation {
        let n = self.cod.base().len();
        let mut rows = alloc::vec![BitSet::new(); n];
        for (p, t) in self.table.iter().enumerate() {
            for c in t.iter() {
                rows[c].insert(p);
            }
        }
        OrderRelation::from_rows_unchecked(self.cod.base().clone(), self.dom.base().clone(), rows)
    }

    /// Inverse of [`JoinMap::dual`].
    pub fn from_dual(dom: &FiniteDistLattice, cod: &FiniteDistLattice, r: &OrderRelation) -> Result<JoinMap> {
        if r.dom() != cod.base() || r.cod() != dom.base() {
            return Err(CoreError::PosetMismatch);
        }
        let mut table = alloc::vec![BitSet::new(); dom.base().len()];
        for (c, row) in r.rows().iter().enumerate() {
            for p in row.iter() {
                table[p].insert(c);
            }
        }
        let table = table.into_iter().map(DownSet::from_bits_unchecked).collect();
        Ok(JoinMap { dom: dom.clone(), cod: cod.clone(), table })
    }
}

/// Lattice and arities shared by a family of operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpace {
    lattice: FiniteDistLattice,
    k: usize,
    n: usize,
    dom: FiniteDistLattice,
    cod: FiniteDistLattice,
}

impl OperatorSpace {
    pub fn new(lattice: &FiniteDistLattice, k: usize, n: usize) -> OperatorSpace {
        OperatorSpace {
            lattice: lattice.clone(),
            k,
            n,
            dom: tensor_power(lattice, k),
            cod: tensor_power(lattice, n),
        }
    }

    pub fn lattice(&self) -> &FiniteDistLattice {
        &self.lattice
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `D^⊗k`
    pub fn dom(&self) -> &FiniteDistLattice {
        &self.dom
    }

    /// `D^⊗n`
    pub fn cod(&self) -> &FiniteDistLattice {
        &self.cod
    }

    pub fn operator(&self, table: Vec<DownSet>) -> Result<Operator> {
        let map = JoinMap::new(self.dom.clone(), self.cod.clone(), table)?;
        Ok(Operator { space: self.clone(), map })
    }

    pub fn identity(&self) -> Result<Operator> {
        if self.k != self.n {
            return Err(CoreError::ArityMismatch { expected: self.k, found: self.n });
        }
        Ok(Operator { space: self.clone(), map: JoinMap::identity(&self.dom) })
    }

    pub fn relation(&self, rel: OrderRelation) -> Result<DualRelation> {
        if rel.dom() != self.cod.base() || rel.cod() != self.dom.base() {
            return Err(CoreError::PosetMismatch);
        }
        Ok(DualRelation { space: self.clone(), rel })
    }
}

/// A `(k, n)`-ary join operator `D^⊗k → D^⊗n`, stored on prime `k`-tuples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Operator {
    space: OperatorSpace,
    map: JoinMap,
}

impl Operator {
    /// `table[b]` is the value at the prime tuple with row-major index `b`.
    pub fn new(lattice: &FiniteDistLattice, k: usize, n: usize, table: Vec<DownSet>) -> Result<Operator> {
        OperatorSpace::new(lattice, k, n).operator(table)
    }

    pub fn space(&self) -> &OperatorSpace {
        &self.space
    }

    pub fn lattice(&self) -> &FiniteDistLattice {
        &self.space.lattice
    }

    pub fn k(&self) -> usize {
        self.space.k
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn table(&self) -> &[DownSet] {
        self.map.table()
    }

    pub fn map(&self) -> &JoinMap {
        &self.map
    }

    pub fn eval(&self, t: &TensorElement) -> Result<TensorElement> {
        if t.arity() != self.k() {
            return Err(CoreError::ArityMismatch { expected: self.k(), found: t.arity() });
        }
        if !self.space.dom.contains(t.members().bits()) {
            return Err(CoreError::LatticeMismatch);
        }
        Ok(TensorElement::from_downset(self.n(), self.map.eval(t.members())))
    }

    /// Evaluate on a downset of `J(D)^k` directly.
    pub fn apply(&self, x: &BitSet) -> DownSet {
        self.map.eval(x)
    }

    /// `self` first, then `g`: the operator `g ∘ self`.
    pub fn then(&self, g: &Operator) -> Result<Operator> {
        if self.lattice() != g.lattice() || self.n() != g.k() {
            return Err(CoreError::ArityMismatch { expected: self.n(), found: g.k() });
        }
        let space = OperatorSpace {
            lattice: self.space.lattice.clone(),
            k: self.k(),
            n: g.n(),
            dom: self.space.dom.clone(),
            cod: g.space.cod.clone(),
        };
        Ok(Operator { space, map: self.map.then(&g.map)? })
    }

    /// `self ⊗ g`, a `(k+k', n+n')`-ary operator.
    pub fn tensor(&self, g: &Operator) -> Result<Operator> {
        if self.lattice() != g.lattice() {
            return Err(CoreError::LatticeMismatch);
        }
        let space = OperatorSpace::new(self.lattice(), self.k() + g.k(), self.n() + g.n());
        let map = self.map.tensor_in(&g.map, space.dom.clone(), space.cod.clone());
        Ok(Operator { space, map })
    }
}

/// The dual of a `(k, n)`-operator: a stable relation from `J(D)^n` to `J(D)^k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualRelation {
    space: OperatorSpace,
    rel: OrderRelation,
}

impl DualRelation {
    /// Checked construction from pairs `(a, b)`, `a` a row-major index into
    /// `J(D)^n` and `b` into `J(D)^k`.
    pub fn new(
        lattice: &FiniteDistLattice,
        k: usize,
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<DualRelation> {
        let space = OperatorSpace::new(lattice, k, n);
        let rel = OrderRelation::new(space.cod.base().clone(), space.dom.base().clone(), pairs)?;
        Ok(DualRelation { space, rel })
    }

    pub fn space(&self) -> &OperatorSpace {
        &self.space
    }

    pub fn poset(&self) -> &Poset {
        self.space.lattice.base()
    }

    pub fn k(&self) -> usize {
        self.space.k
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn relation(&self) -> &OrderRelation {
        &self.rel
    }
}

pub fn dualize_operator(op: &Operator) -> DualRelation {
    DualRelation { space: op.space.clone(), rel: op.map.dual() }
}

pub fn dualize_relation(r: &DualRelation) -> Operator {
    let map = JoinMap::from_dual(&r.space.dom, &r.space.cod, &r.rel).expect("relation shaped by its space");
    Operator { space: r.space.clone(), map }
}

/// Classification of an operator; each flag is computed on both sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct OperatorFlags {
    pub pure: bool,
    pub meet_preserving_nonempty: bool,
    pub top_preserving: bool,
}

/// Algebraic side: preservation of binary meets and of the top element.
pub fn operator_flags(op: &Operator) -> OperatorFlags {
    let top = op.space.dom.top();
    let top_preserving = op.apply(&top) == op.space.cod.top();
    let meet_preserving_nonempty = match op.space.dom.elements() {
        Ok(els) => els.iter().enumerate().all(|(i, s)| {
            let fs = op.apply(s);
            els[i + 1..].iter().all(|t| op.apply(&s.intersection(t)) == fs.intersection(&op.apply(t)))
        }),
        // joins distribute, so prime pairs suffice on large carriers
        Err(_) => {
            let base = op.space.dom.base();
            (0..base.len()).all(|a| {
                (0..base.len()).all(|b| {
                    op.apply(&base.down(a).intersection(base.down(b))) == op.table()[a].intersection(&op.table()[b])
                })
            })
        }
    };
    OperatorFlags { pure: top_preserving && meet_preserving_nonempty, meet_preserving_nonempty, top_preserving }
}

/// Relational side: partial function, totality, graph of a monotone map.
pub fn relation_flags(r: &DualRelation) -> OperatorFlags {
    OperatorFlags {
        pure: r.rel.as_function().is_some(),
        meet_preserving_nonempty: r.rel.is_partial_function(),
        top_preserving: r.rel.is_total(),
    }
}

pub fn classify(op: &Operator) -> Result<OperatorFlags> {
    let a = operator_flags(op);
    let b = relation_flags(&dualize_operator(op));
    if a != b {
        return Err(CoreError::Disagreement {
            what: "operator classification",
            detail: format!("operator side {a:?}, relation side {b:?}, table {:?}", op.table()),
        });
    }
    Ok(a)
}

/// Both sides of a dualization identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCheck {
    pub dual_of_composite: OrderRelation,
    pub composite_of_duals: OrderRelation,
}

impl DualCheck {
    fn verify(self, what: &'static str) -> Result<DualCheck> {
        if self.dual_of_composite != self.composite_of_duals {
            let l = self.dual_of_composite.pairs();
            let r = self.composite_of_duals.pairs();
            let diff = l.iter().find(|p| !r.contains(p)).or_else(|| r.iter().find(|p| !l.contains(p)));
            return Err(CoreError::Disagreement { what, detail: format!("first differing pair {diff:?}") });
        }
        Ok(self)
    }
}

/// `dual(g ∘ h) = dual(g) ; dual(h)`.
pub fn dual_compose(h: &Operator, g: &Operator) -> Result<DualCheck> {
    let gh = h.then(g)?;
    DualCheck {
        dual_of_composite: gh.map.dual(),
        composite_of_duals: g.map.dual().compose(&h.map.dual())?,
    }
    .verify("dual of composite")
}

/// `dual(h ⊗ g) = dual(h) × dual(g)`.
pub fn dual_tensor(h: &Operator, g: &Operator) -> Result<DualCheck> {
    let hg = h.tensor(g)?;
    let space = hg.space();
    DualCheck {
        dual_of_composite: hg.map.dual(),
        composite_of_duals: h.map.dual().tensor_in(
            &g.map.dual(),
            space.cod.base().clone(),
            space.dom.base().clone(),
        ),
    }
    .verify("dual of tensor")
}

/// The identity operator on `D^⊗n` dualizes to the order of `J(D)^n`.
pub fn dual_identity(d: &FiniteDistLattice, n: usize) -> Result<DualCheck> {
    let space = OperatorSpace::new(d, n, n);
    let id = space.identity()?;
    DualCheck {
        dual_of_composite: id.map.dual(),
        composite_of_duals: OrderRelation::identity(space.dom.base()),
    }
    .verify("dual of identity")
}

/// `f^⊗n ∘ a = b ∘ f^⊗k` for a join-preserving `f` between the carriers.
pub fn is_operator_morphism(f: &JoinMap, a: &Operator, b: &Operator) -> Result<bool> {
    if a.k() != b.k() || a.n() != b.n() {
        return Err(CoreError::ArityMismatch { expected: a.k(), found: b.k() });
    }
    if f.dom() != a.lattice() || f.cod() != b.lattice() {
        return Err(CoreError::LatticeMismatch);
    }
    let (fk, fn_) = (f.power(a.k()), f.power(a.n()));
    Ok(a.map.then(&fn_)?.table == fk.then(&b.map)?.table)
}

/// The dual square: `dual(f)^n ; dual(a) = dual(b) ; dual(f)^k`, computed with
/// relations only.
pub fn is_relation_morphism(rf: &OrderRelation, ra: &DualRelation, rb: &DualRelation) -> Result<bool> {
    if ra.k() != rb.k() || ra.n() != rb.n() {
        return Err(CoreError::ArityMismatch { expected: ra.k(), found: rb.k() });
    }
    let power = |m: usize, dom: &Poset, cod: &Poset| {
        if m == 1 {
            return rf.clone();
        }
        let mut acc = OrderRelation::identity(&Poset::chain(1));
        for _ in 0..m {
            acc = acc.tensor(rf);
        }
        OrderRelation::from_rows_unchecked(dom.clone(), cod.clone(), acc.rows().to_vec())
    };
    let fn_ = power(ra.n(), rb.space.cod.base(), ra.space.cod.base());
    let fk = power(ra.k(), rb.space.dom.base(), ra.space.dom.base());
    Ok(fn_.compose(&ra.rel)? == rb.rel.compose(&fk)?)
}
