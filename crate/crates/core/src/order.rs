//! Finite posets, downsets, monotone maps and order relations.
//!
//! Order relations follow one variance convention throughout the crate:
//! `x' <= x`, `x R y`, `y <= y'` imply `x' R y'`. So the image `R(x)` of an
//! element is an upset of the codomain, and it shrinks as `x` grows. Kleisli
//! identities are `x R y <=> x <= y`, and composition is plain relational
//! composition (`r` first, then `s`).

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::bits::BitSet;
use crate::error::{CoreError, Result};

struct PosetData {
    down: Vec<BitSet>,
    up: Vec<BitSet>,
    labels: Option<Vec<String>>,
}

/// A finite poset on `0..n`. Cheap to clone.
#[derive(Clone)]
pub struct Poset(Arc<PosetData>);

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.down == other.0.down
    }
}
impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({}) ", self.len())?;
        let mut l = f.debug_list();
        for i in 0..self.len() {
            for j in self.0.up[i].iter() {
                if i != j {
                    l.entry(&(i, j));
                }
            }
        }
        l.finish()
    }
}

impl Poset {
    pub(crate) fn from_down(down: Vec<BitSet>) -> Poset {
        let n = down.len();
        let mut up = vec![BitSet::new(); n];
        for (j, d) in down.iter().enumerate() {
            for i in d.iter() {
                up[i].insert(j);
            }
        }
        Poset(Arc::new(PosetData { down, up, labels: None }))
    }

    /// Strict constructor from a full order matrix `leq[i][j] <=> i <= j`.
    pub fn from_matrix(leq: &[Vec<bool>]) -> Result<Poset> {
        let n = leq.len();
        for row in leq {
            if row.len() != n {
                return Err(CoreError::IndexOutOfRange { index: row.len(), bound: n });
            }
        }
        let mut down = vec![BitSet::new(); n];
        for i in 0..n {
            for j in 0..n {
                if leq[i][j] {
                    down[j].insert(i);
                }
            }
        }
        Self::checked(down)
    }

    /// From a list of `(i, j)` pairs meaning `i <= j`. Reflexive pairs may be
    /// omitted; the list must otherwise already be transitive.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        let mut down: Vec<BitSet> = (0..n).map(BitSet::singleton).collect();
        for &(i, j) in pairs {
            for k in [i, j] {
                if k >= n {
                    return Err(CoreError::IndexOutOfRange { index: k, bound: n });
                }
            }
            down[j].insert(i);
        }
        Self::checked(down)
    }

    /// From generating pairs `i <= j`, taking the reflexive-transitive closure.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        let mut down: Vec<BitSet> = (0..n).map(BitSet::singleton).collect();
        for &(i, j) in covers {
            for k in [i, j] {
                if k >= n {
                    return Err(CoreError::IndexOutOfRange { index: k, bound: n });
                }
            }
            down[j].insert(i);
        }
        loop {
            let mut changed = false;
            for j in 0..n {
                let mut acc = down[j].clone();
                for i in down[j].iter() {
                    acc.union_with(&down[i]);
                }
                if acc != down[j] {
                    down[j] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Self::checked(down)
    }

    fn checked(down: Vec<BitSet>) -> Result<Poset> {
        let n = down.len();
        for j in 0..n {
            if !down[j].contains(j) {
                return Err(CoreError::NotReflexive(j));
            }
            for i in down[j].iter() {
                if i != j && down[i].contains(j) {
                    return Err(CoreError::NotAntisymmetric(i, j));
                }
                if let Some(k) = down[i].difference(&down[j]).first() {
                    return Err(CoreError::NotTransitive(k, i, j));
                }
            }
        }
        Ok(Self::from_down(down))
    }

    /// Attach element names (one per element).
    pub fn with_labels(self, labels: Vec<String>) -> Result<Poset> {
        if labels.len() != self.len() {
            return Err(CoreError::IndexOutOfRange { index: labels.len(), bound: self.len() });
        }
        Ok(Poset(Arc::new(PosetData {
            down: self.0.down.clone(),
            up: self.0.up.clone(),
            labels: Some(labels),
        })))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.0.labels.as_deref()
    }

    /// `0 < 1 < .. < n-1`
    pub fn chain(n: usize) -> Poset {
        Self::from_down((0..n).map(|j| BitSet::full(j + 1)).collect())
    }

    pub fn antichain(n: usize) -> Poset {
        Self::from_down((0..n).map(BitSet::singleton).collect())
    }

    pub fn len(&self) -> usize {
        self.0.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.0.down[j].contains(i)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Principal downset `↓i`.
    #[inline]
    pub fn down(&self, i: usize) -> &BitSet {
        &self.0.down[i]
    }

    /// Principal upset `↑i`.
    #[inline]
    pub fn up(&self, i: usize) -> &BitSet {
        &self.0.up[i]
    }

    pub fn is_discrete(&self) -> bool {
        self.0.down.iter().all(|d| d.len() == 1)
    }

    /// The opposite order.
    pub fn dual(&self) -> Poset {
        Self::from_down(self.0.up.clone())
    }

    /// All pairs `(i, j)` with `i <= j`, ascending.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for i in 0..self.len() {
            for j in self.up(i).iter() {
                v.push((i, j));
            }
        }
        v
    }

    fn check_range(&self, s: &BitSet) -> Result<()> {
        if s.bound() > self.len() {
            return Err(CoreError::IndexOutOfRange { index: s.bound() - 1, bound: self.len() });
        }
        Ok(())
    }

    pub fn downset_closure(&self, seed: &BitSet) -> Result<DownSet> {
        self.check_range(seed)?;
        let mut d = BitSet::new();
        for i in seed.iter() {
            d.union_with(self.down(i));
        }
        Ok(DownSet(d))
    }

    pub fn upset_closure(&self, seed: &BitSet) -> Result<BitSet> {
        self.check_range(seed)?;
        let mut u = BitSet::new();
        for i in seed.iter() {
            u.union_with(self.up(i));
        }
        Ok(u)
    }

    /// Checked conversion; the error names a missing element.
    pub fn downset(&self, s: BitSet) -> Result<DownSet> {
        self.check_range(&s)?;
        if let Some(m) = s.iter().find(|&m| !self.down(m).is_subset(&s)) {
            let below = self.down(m).difference(&s).first().expect("not a subset");
            return Err(CoreError::NotDownset { member: m, below });
        }
        Ok(DownSet(s))
    }

    pub fn is_downset(&self, s: &BitSet) -> bool {
        s.bound() <= self.len() && s.iter().all(|m| self.down(m).is_subset(s))
    }

    pub fn is_upset(&self, s: &BitSet) -> bool {
        s.bound() <= self.len() && s.iter().all(|m| self.up(m).is_subset(s))
    }

    pub fn maximal(&self, s: &BitSet) -> BitSet {
        s.iter().filter(|&m| self.up(m).intersection(s).len() == 1).collect()
    }

    pub fn minimal(&self, s: &BitSet) -> BitSet {
        s.iter().filter(|&m| self.down(m).intersection(s).len() == 1).collect()
    }

    /// Indices in an order compatible with `<=` (smaller elements first).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.len()).collect();
        v.sort_by_key(|&i| self.down(i).len());
        v
    }

    /// All downsets in ascending `BitSet` order, or `None` once more than
    /// `limit` have been found.
    pub fn downsets_limited(&self, limit: usize) -> Option<Vec<DownSet>> {
        let mut order = self.linear_extension();
        order.reverse();
        let mut out = Vec::new();
        // depth-first over the elements from the top down; an element is forced
        // into the set once anything above it is in
        let mut stack: Vec<(usize, BitSet)> = vec![(0, BitSet::new())];
        while let Some((k, cur)) = stack.pop() {
            if k == order.len() {
                out.push(DownSet(cur));
                if out.len() > limit {
                    return None;
                }
                continue;
            }
            let x = order[k];
            if self.up(x).intersects(&cur) {
                let mut c = cur;
                c.insert(x);
                stack.push((k + 1, c));
            } else {
                let mut c = cur.clone();
                c.insert(x);
                stack.push((k + 1, c));
                stack.push((k + 1, cur));
            }
        }
        out.sort();
        Some(out)
    }

    pub fn downsets(&self) -> Vec<DownSet> {
        self.downsets_limited(usize::MAX).unwrap_or_default()
    }

    /// `self^n` with row-major tuple indexing; `self^0` is the one-point poset.
    pub fn power(&self, n: usize) -> Poset {
        product_poset(&vec![self.clone(); n])
    }
}

/// Tuple index of `t` in a product with factor sizes `sizes`, row-major.
pub fn tuple_index(sizes: &[usize], t: &[usize]) -> usize {
    sizes.iter().zip(t).fold(0, |acc, (&n, &x)| acc * n + x)
}

/// Inverse of [`tuple_index`].
pub fn tuple_of(sizes: &[usize], mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; sizes.len()];
    for (slot, &n) in t.iter_mut().zip(sizes).rev() {
        *slot = idx % n;
        idx /= n;
    }
    t
}

/// Product of posets, componentwise order, row-major tuple indexing.
/// The empty product is the one-point poset.
pub fn product_poset(ps: &[Poset]) -> Poset {
    let mut acc = Poset::chain(1);
    for p in ps {
        acc = product2(&acc, p);
    }
    acc
}

fn product2(a: &Poset, b: &Poset) -> Poset {
    let (na, nb) = (a.len(), b.len());
    let mut down = Vec::with_capacity(na * nb);
    for x in 0..na {
        for y in 0..nb {
            let mut d = BitSet::new();
            for x2 in a.down(x).iter() {
                for y2 in b.down(y).iter() {
                    d.insert(x2 * nb + y2);
                }
            }
            down.push(d);
        }
    }
    Poset::from_down(down)
}

/// A downward-closed subset of some poset. The poset itself is not stored;
/// constructors that take one check closure.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DownSet(BitSet);

impl DownSet {
    pub fn empty() -> DownSet {
        DownSet(BitSet::new())
    }

    /// No check is made; callers promise the set is downward closed.
    pub fn from_bits_unchecked(b: BitSet) -> DownSet {
        DownSet(b)
    }

    pub fn bits(&self) -> &BitSet {
        &self.0
    }

    pub fn into_bits(self) -> BitSet {
        self.0
    }

    pub fn union(&self, o: &DownSet) -> DownSet {
        DownSet(self.0.union(&o.0))
    }

    pub fn intersection(&self, o: &DownSet) -> DownSet {
        DownSet(self.0.intersection(&o.0))
    }
}

impl Deref for DownSet {
    type Target = BitSet;
    fn deref(&self) -> &BitSet {
        &self.0
    }
}

impl fmt::Debug for DownSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "↓{:?}", self.0)
    }
}

/// A monotone map between posets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonotoneMap {
    dom: Poset,
    cod: Poset,
    table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom: Poset, cod: Poset, table: Vec<usize>) -> Result<MonotoneMap> {
        if table.len() != dom.len() {
            return Err(CoreError::ArityMismatch { expected: dom.len(), found: table.len() });
        }
        for &t in &table {
            if t >= cod.len() {
                return Err(CoreError::IndexOutOfRange { index: t, bound: cod.len() });
            }
        }
        for x in 0..dom.len() {
            for y in dom.up(x).iter() {
                if !cod.leq(table[x], table[y]) {
                    return Err(CoreError::NotMonotone { x, y });
                }
            }
        }
        Ok(MonotoneMap { dom, cod, table })
    }

    pub fn identity(p: &Poset) -> MonotoneMap {
        MonotoneMap { dom: p.clone(), cod: p.clone(), table: (0..p.len()).collect() }
    }

    pub fn dom(&self) -> &Poset {
        &self.dom
    }

    pub fn cod(&self) -> &Poset {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self` first, then `g`.
    pub fn then(&self, g: &MonotoneMap) -> Result<MonotoneMap> {
        if self.cod != g.dom {
            return Err(CoreError::PosetMismatch);
        }
        Ok(MonotoneMap {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            table: self.table.iter().map(|&y| g.table[y]).collect(),
        })
    }

    pub fn preimage(&self, s: &BitSet) -> BitSet {
        (0..self.dom.len()).filter(|&x| s.contains(self.table[x])).collect()
    }

    pub fn image(&self, s: &BitSet) -> BitSet {
        s.iter().map(|x| self.table[x]).collect()
    }

    pub fn is_order_embedding(&self) -> bool {
        (0..self.dom.len()).all(|x| {
            (0..self.dom.len()).all(|y| self.dom.leq(x, y) == self.cod.leq(self.table[x], self.table[y]))
        })
    }
}

/// A relation between posets, stable under the crate's variance convention.
#[derive(Clone, PartialEq, Eq)]
pub struct OrderRelation {
    dom: Poset,
    cod: Poset,
    rows: Vec<BitSet>,
}

impl fmt::Debug for OrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl OrderRelation {
    pub fn new(dom: Poset, cod: Poset, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<OrderRelation> {
        let mut rows = vec![BitSet::new(); dom.len()];
        for (x, y) in pairs {
            if x >= dom.len() {
                return Err(CoreError::IndexOutOfRange { index: x, bound: dom.len() });
            }
            if y >= cod.len() {
                return Err(CoreError::IndexOutOfRange { index: y, bound: cod.len() });
            }
            rows[x].insert(y);
        }
        Self::from_rows(dom, cod, rows)
    }

    /// `rows[x]` is the image of `x`.
    pub fn from_rows(dom: Poset, cod: Poset, rows: Vec<BitSet>) -> Result<OrderRelation> {
        if rows.len() != dom.len() {
            return Err(CoreError::ArityMismatch { expected: dom.len(), found: rows.len() });
        }
        for (x, row) in rows.iter().enumerate() {
            if row.bound() > cod.len() {
                return Err(CoreError::IndexOutOfRange { index: row.bound() - 1, bound: cod.len() });
            }
            for y in row.iter() {
                if !cod.up(y).is_subset(row) {
                    return Err(CoreError::UnstableRelation(x, y));
                }
            }
            for x2 in dom.down(x).iter() {
                if let Some(y) = row.difference(&rows[x2]).first() {
                    return Err(CoreError::UnstableRelation(x, y));
                }
            }
        }
        Ok(OrderRelation { dom, cod, rows })
    }

    pub(crate) fn from_rows_unchecked(dom: Poset, cod: Poset, rows: Vec<BitSet>) -> OrderRelation {
        OrderRelation { dom, cod, rows }
    }

    pub fn empty(dom: &Poset, cod: &Poset) -> OrderRelation {
        OrderRelation { dom: dom.clone(), cod: cod.clone(), rows: vec![BitSet::new(); dom.len()] }
    }

    pub fn full(dom: &Poset, cod: &Poset) -> OrderRelation {
        OrderRelation { dom: dom.clone(), cod: cod.clone(), rows: vec![BitSet::full(cod.len()); dom.len()] }
    }

    /// `x R y <=> x <= y`.
    pub fn identity(p: &Poset) -> OrderRelation {
        OrderRelation { dom: p.clone(), cod: p.clone(), rows: (0..p.len()).map(|x| p.up(x).clone()).collect() }
    }

    /// `x R y <=> f(x) <= y`.
    pub fn graph(f: &MonotoneMap) -> OrderRelation {
        OrderRelation {
            dom: f.dom.clone(),
            cod: f.cod.clone(),
            rows: f.table.iter().map(|&y| f.cod.up(y).clone()).collect(),
        }
    }

    pub fn dom(&self) -> &Poset {
        &self.dom
    }

    pub fn cod(&self) -> &Poset {
        &self.cod
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn image(&self, x: usize) -> &BitSet {
        &self.rows[x]
    }

    /// `{x | x R y}`, a downset of the domain.
    pub fn preimage(&self, y: usize) -> BitSet {
        (0..self.dom.len()).filter(|&x| self.rows[x].contains(y)).collect()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for (x, r) in self.rows.iter().enumerate() {
            v.extend(r.iter().map(|y| (x, y)));
        }
        v
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(BitSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(BitSet::is_empty)
    }

    /// Every element relates to something.
    pub fn is_total(&self) -> bool {
        self.rows.iter().all(|r| !r.is_empty())
    }

    /// Every image is empty or a principal upset `↑y`.
    pub fn is_partial_function(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty() || self.principal(r).is_some())
    }

    /// If every image is a principal upset `↑f(x)`, the monotone map `f`.
    pub fn as_function(&self) -> Option<MonotoneMap> {
        let table = self.rows.iter().map(|r| self.principal(r)).collect::<Option<Vec<_>>>()?;
        MonotoneMap::new(self.dom.clone(), self.cod.clone(), table).ok()
    }

    fn principal(&self, r: &BitSet) -> Option<usize> {
        let m = self.cod.minimal(r);
        match m.first() {
            Some(y) if m.len() == 1 && self.cod.up(y) == r => Some(y),
            _ => None,
        }
    }

    /// `self` first, then `s`: `x (r;s) z <=> ∃y. x r y ∧ y s z`.
    pub fn compose(&self, s: &OrderRelation) -> Result<OrderRelation> {
        if self.cod != s.dom {
            return Err(CoreError::PosetMismatch);
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitSet::new();
                for y in r.iter() {
                    acc.union_with(&s.rows[y]);
                }
                acc
            })
            .collect();
        Ok(OrderRelation { dom: self.dom.clone(), cod: s.cod.clone(), rows })
    }

    /// `(x, x') R (y, y') <=> x r y ∧ x' s y'` on product posets.
    pub fn tensor(&self, s: &OrderRelation) -> OrderRelation {
        let dom = product2(&self.dom, &s.dom);
        let cod = product2(&self.cod, &s.cod);
        self.tensor_in(s, dom, cod)
    }

    /// [`Self::tensor`] with the product posets supplied by the caller.
    pub fn tensor_in(&self, s: &OrderRelation, dom: Poset, cod: Poset) -> OrderRelation {
        let nb = s.cod.len();
        let mut rows = Vec::with_capacity(dom.len());
        for r in &self.rows {
            for q in &s.rows {
                let mut acc = BitSet::new();
                for y in r.iter() {
                    for y2 in q.iter() {
                        acc.insert(y * nb + y2);
                    }
                }
                rows.push(acc);
            }
        }
        OrderRelation { dom, cod, rows }
    }
}

/// The Kleisli calculus of the downset monad under the crate's convention.
pub mod kleisli {
    use super::*;

    pub fn identity(p: &Poset) -> OrderRelation {
        OrderRelation::identity(p)
    }

    pub fn compose(r: &OrderRelation, s: &OrderRelation) -> Result<OrderRelation> {
        r.compose(s)
    }

    pub fn tensor(r: &OrderRelation, s: &OrderRelation) -> OrderRelation {
        r.tensor(s)
    }
}
