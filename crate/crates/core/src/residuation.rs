//! Residuation algebras, their comultiplications, ideals and morphisms.
//!
//! An algebra on `D` is stored as its multiplication on pairs of primes,
//! `μ(p, q) = μ(↓p ⊗ ↓q)`, monotone in both arguments. The residuals are
//!
//! * `x\z = {q | ∀p∈x: μ(p,q) ⊆ z}`
//! * `z/y = {p | ∀q∈y: μ(p,q) ⊆ z}`
//!
//! so nothing here needs the element list of `D` unless it says so.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitSet;
use crate::enumerate::for_each_monotone_table;
use crate::error::{CoreError, Result};
use crate::lattice::{FiniteDistLattice, LatticeHom, LatticeMap, ELEMENT_LIMIT};
use crate::operator::JoinMap;
use crate::order::{DownSet, Poset};
use crate::tensor::{omega, tensor_elements, tensor_power, BoxElement, TensorElement};

#[derive(Clone, PartialEq, Eq)]
pub struct ResiduationAlgebra {
    lattice: FiniteDistLattice,
    mu: Vec<DownSet>,
    unit: Option<DownSet>,
}

impl fmt::Debug for ResiduationAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ResiduationAlgebra").field("mu", &self.mu).field("unit", &self.unit).finish()
    }
}

fn element_of(d: &FiniteDistLattice, x: &DownSet) -> Result<()> {
    d.base().downset(x.bits().clone()).map(|_| ())
}

impl ResiduationAlgebra {
    /// `mu[p * m + q]` is `μ(↓p ⊗ ↓q)`.
    pub fn from_multiplication(lattice: &FiniteDistLattice, mu: Vec<DownSet>) -> Result<ResiduationAlgebra> {
        let base = lattice.base();
        let m = base.len();
        if mu.len() != m * m {
            return Err(CoreError::ArityMismatch { expected: m * m, found: mu.len() });
        }
        for v in &mu {
            element_of(lattice, v)?;
        }
        for p in 0..m {
            for q in 0..m {
                let v = &mu[p * m + q];
                for p2 in base.down(p).iter() {
                    if !mu[p2 * m + q].is_subset(v) {
                        return Err(CoreError::NotMonotone { x: p2 * m + q, y: p * m + q });
                    }
                }
                for q2 in base.down(q).iter() {
                    if !mu[p * m + q2].is_subset(v) {
                        return Err(CoreError::NotMonotone { x: p * m + q2, y: p * m + q });
                    }
                }
            }
        }
        Ok(Self::build(lattice.clone(), mu))
    }

    fn build(lattice: FiniteDistLattice, mu: Vec<DownSet>) -> ResiduationAlgebra {
        let mut r = ResiduationAlgebra { lattice, mu, unit: None };
        r.unit = r.find_unit();
        r
    }

    /// The only candidate is the set of primes `p` with `μ(p,q), μ(q,p) <= ↓q`
    /// for every `q`.
    fn find_unit(&self) -> Option<DownSet> {
        let base = self.lattice.base();
        let m = base.len();
        let e: BitSet = (0..m)
            .filter(|&p| (0..m).all(|q| self.mu(p, q).is_subset(base.down(q)) && self.mu(q, p).is_subset(base.down(q))))
            .collect();
        let e = DownSet::from_bits_unchecked(e);
        (0..m)
            .all(|q| {
                let y = self.lattice.prime(q);
                self.multiply(&e, &y) == y && self.multiply(&y, &e) == y
            })
            .then_some(e)
    }

    /// Builds the algebra from full residual tables, `lres[a * n + c] = a\c`
    /// and `rres[c * n + b] = c/b`, indexed by element position.
    pub fn from_residuals(
        lattice: &FiniteDistLattice,
        lres: &[DownSet],
        rres: &[DownSet],
    ) -> Result<ResiduationAlgebra> {
        let els = lattice.elements()?;
        let n = els.len();
        for t in [lres, rres] {
            if t.len() != n * n {
                return Err(CoreError::ArityMismatch { expected: n * n, found: t.len() });
            }
            for v in t {
                element_of(lattice, v)?;
            }
        }
        let ix = |x: &DownSet| lattice.index_of(x).expect("element of the lattice");
        let top = n - 1;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if els[b].is_subset(&lres[a * n + c]) != els[a].is_subset(&rres[c * n + b]) {
                        return Err(CoreError::InvalidResiduation(format!(
                            "b <= a\\c and a <= c/b differ at a = {:?}, b = {:?}, c = {:?}",
                            els[a], els[b], els[c]
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            if lres[a * n + top] != els[top] || rres[top * n + a] != els[top] {
                return Err(CoreError::InvalidResiduation(format!("residual of ⊤ by {:?} is not ⊤", els[a])));
            }
            for c in 0..n {
                for c2 in c + 1..n {
                    let k = ix(&els[c].intersection(&els[c2]));
                    if lres[a * n + k] != lres[a * n + c].intersection(&lres[a * n + c2])
                        || rres[k * n + a] != rres[c * n + a].intersection(&rres[c2 * n + a])
                    {
                        return Err(CoreError::InvalidResiduation(format!(
                            "residuals by {:?} do not preserve {:?} ∧ {:?}",
                            els[a], els[c], els[c2]
                        )));
                    }
                }
            }
        }
        let m = lattice.base().len();
        let mut mu = Vec::with_capacity(m * m);
        for p in 0..m {
            let a = ix(&lattice.prime(p));
            for q in 0..m {
                let yq = lattice.prime(q);
                let mut acc = lattice.top();
                for (c, z) in els.iter().enumerate() {
                    if yq.is_subset(&lres[a * n + c]) {
                        acc = acc.intersection(z);
                    }
                }
                mu.push(acc);
            }
        }
        let r = ResiduationAlgebra::from_multiplication(lattice, mu)?;
        if r.lres_table()? != lres || r.rres_table()? != rres {
            return Err(CoreError::Disagreement {
                what: "residual tables",
                detail: "the multiplication read off the tables does not reproduce them".into(),
            });
        }
        Ok(r)
    }

    pub fn lattice(&self) -> &FiniteDistLattice {
        &self.lattice
    }

    pub fn mu(&self, p: usize, q: usize) -> &DownSet {
        &self.mu[p * self.lattice.base().len() + q]
    }

    pub fn mu_table(&self) -> &[DownSet] {
        &self.mu
    }

    /// `μ(x ⊗ y)`.
    pub fn multiply(&self, x: &BitSet, y: &BitSet) -> DownSet {
        let mut acc = BitSet::new();
        for p in x.iter() {
            for q in y.iter() {
                acc.union_with(self.mu(p, q));
            }
        }
        DownSet::from_bits_unchecked(acc)
    }

    pub fn multiply_tensor(&self, t: &TensorElement) -> Result<DownSet> {
        if t.arity() != 2 {
            return Err(CoreError::ArityMismatch { expected: 2, found: t.arity() });
        }
        let m = self.lattice.base().len();
        let mut acc = BitSet::new();
        for i in t.members().iter() {
            acc.union_with(self.mu(i / m, i % m));
        }
        Ok(DownSet::from_bits_unchecked(acc))
    }

    /// `x\z`.
    pub fn lres(&self, x: &BitSet, z: &BitSet) -> DownSet {
        let m = self.lattice.base().len();
        DownSet::from_bits_unchecked((0..m).filter(|&q| x.iter().all(|p| self.mu(p, q).is_subset(z))).collect())
    }

    /// `z/y`.
    pub fn rres(&self, z: &BitSet, y: &BitSet) -> DownSet {
        let m = self.lattice.base().len();
        DownSet::from_bits_unchecked((0..m).filter(|&p| y.iter().all(|q| self.mu(p, q).is_subset(z))).collect())
    }

    pub fn unit(&self) -> Option<&DownSet> {
        self.unit.as_ref()
    }

    pub fn is_prime_unital(&self) -> bool {
        self.unit.as_ref().is_some_and(|e| self.lattice.is_join_prime(e))
    }

    /// `a\c` at `a * n + c`.
    pub fn lres_table(&self) -> Result<Vec<DownSet>> {
        let els = self.lattice.elements()?;
        Ok(els.iter().flat_map(|a| els.iter().map(move |c| self.lres(a, c))).collect())
    }

    /// `c/b` at `c * n + b`.
    pub fn rres_table(&self) -> Result<Vec<DownSet>> {
        let els = self.lattice.elements()?;
        Ok(els.iter().flat_map(|c| els.iter().map(move |b| self.rres(c, b))).collect())
    }

    /// Every `e` with `e\z = z = z/e` for all `z`, by search.
    pub fn units_exhaustive(&self) -> Result<Vec<DownSet>> {
        let els = self.lattice.elements()?;
        Ok(els
            .iter()
            .filter(|e| els.iter().all(|z| self.lres(e, z) == *z && self.rres(z, e) == *z))
            .cloned()
            .collect())
    }

    /// The algebra with the multiplication reversed; it swaps the residuals.
    pub fn opposite(&self) -> ResiduationAlgebra {
        let m = self.lattice.base().len();
        let mu = (0..m * m).map(|i| self.mu(i % m, i / m).clone()).collect();
        ResiduationAlgebra { lattice: self.lattice.clone(), mu, unit: self.unit.clone() }
    }

    /// The multiplication as a join map on the tensor square.
    pub fn multiplication_map(&self) -> JoinMap {
        JoinMap::new(tensor_power(&self.lattice, 2), self.lattice.clone(), self.mu.clone())
            .expect("monotone by construction")
    }
}

/// Calls `f` on every residuation algebra on `d`. Stops when `f` returns false.
pub fn for_each_algebra<F>(d: &FiniteDistLattice, mut f: F) -> Result<bool>
where
    F: FnMut(ResiduationAlgebra) -> bool,
{
    let values = d.elements()?;
    let square = d.base().power(2);
    Ok(for_each_monotone_table(&square, values, |t| f(ResiduationAlgebra::build(d.clone(), t.to_vec()))))
}

/// `μ(x ⊗ y) = ⋀{z | y <= x\z}`, evaluated on prime pairs from residuals only.
pub fn mu_from_residuals(r: &ResiduationAlgebra) -> Result<JoinMap> {
    let d = r.lattice();
    let els = d.elements()?;
    let m = d.base().len();
    let mut table = Vec::with_capacity(m * m);
    for p in 0..m {
        let x = d.prime(p);
        for q in 0..m {
            let y = d.prime(q);
            let mut acc = d.top();
            for z in els {
                if y.is_subset(&r.lres(&x, z)) {
                    acc = acc.intersection(z);
                }
            }
            table.push(acc);
        }
    }
    JoinMap::new(tensor_power(d, 2), d.clone(), table)
}

/// A meet-preserving comultiplication `γ: D → D ⊗ D`, tabulated per element,
/// with an optional counit `ε(x) = [e <= x]` stored as `e`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Comonoid {
    lattice: FiniteDistLattice,
    gamma: Vec<TensorElement>,
    counit: Option<DownSet>,
}

impl Comonoid {
    pub fn new(lattice: &FiniteDistLattice, gamma: Vec<TensorElement>, counit: Option<DownSet>) -> Result<Comonoid> {
        let els = lattice.elements()?;
        let n = els.len();
        if gamma.len() != n {
            return Err(CoreError::ArityMismatch { expected: n, found: gamma.len() });
        }
        let sq = lattice.base().power(2);
        for g in &gamma {
            if g.arity() != 2 {
                return Err(CoreError::ArityMismatch { expected: 2, found: g.arity() });
            }
            sq.downset(g.members().bits().clone())?;
        }
        if let Some(e) = &counit {
            element_of(lattice, e)?;
        }
        if gamma[n - 1] != TensorElement::top(lattice, 2) {
            return Err(CoreError::NotPreserving { what: "top", detail: format!("γ(⊤) = {:?}", gamma[n - 1]) });
        }
        for a in 0..n {
            for b in a + 1..n {
                let k = lattice.index_of(&els[a].intersection(&els[b])).expect("element");
                if gamma[k] != gamma[a].meet(&gamma[b]) {
                    return Err(CoreError::NotPreserving {
                        what: "meets",
                        detail: format!("γ({:?} ∧ {:?})", els[a], els[b]),
                    });
                }
            }
        }
        Ok(Comonoid { lattice: lattice.clone(), gamma, counit })
    }

    pub fn lattice(&self) -> &FiniteDistLattice {
        &self.lattice
    }

    /// Panics if `z` is not an element.
    pub fn gamma(&self, z: &DownSet) -> &TensorElement {
        &self.gamma[self.lattice.index_of(z).expect("element of the lattice")]
    }

    pub fn gamma_table(&self) -> &[TensorElement] {
        &self.gamma
    }

    pub fn counit(&self) -> Option<&DownSet> {
        self.counit.as_ref()
    }

    /// `γ̄ = ω ∘ γ`.
    pub fn gamma_bar(&self, z: &DownSet) -> Result<BoxElement> {
        omega(&self.lattice, self.gamma(z))
    }

    /// `γ` preserves all finite joins, including `γ(⊥) = ⊥`.
    pub fn is_pure(&self) -> Result<bool> {
        let els = self.lattice.elements()?;
        if !self.gamma[0].members().is_empty() {
            return Ok(false);
        }
        for a in 0..els.len() {
            for b in a + 1..els.len() {
                if *self.gamma(&els[a].union(&els[b])) != self.gamma[a].join(&self.gamma[b]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `(γ̄ ⊠ id) γ̄ = (id ⊠ γ̄) γ̄`, as upsets of `J³`.
    pub fn is_coassociative(&self) -> Result<bool> {
        let d = &self.lattice;
        let base = d.base();
        let m = base.len();
        let bars = (0..m).map(|p| Ok(self.gamma_bar(&d.meet_prime(p))?.members().clone())).collect::<Result<Vec<_>>>()?;
        for z in d.elements()? {
            let u = self.gamma_bar(z)?;
            let mut left = BitSet::new();
            let mut right = BitSet::new();
            for t in u.members().iter() {
                let (p, q) = (t / m, t % m);
                for v in bars[p].iter() {
                    for r in base.up(q).iter() {
                        left.insert(v * m + r);
                    }
                }
                for a in base.up(p).iter() {
                    for v in bars[q].iter() {
                        right.insert(a * m * m + v);
                    }
                }
            }
            if left != right {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(ε ⊠ id) γ̄ = id = (id ⊠ ε) γ̄` for `ε(x) = [e <= x]`.
    pub fn is_counit(&self, e: &DownSet) -> Result<bool> {
        let base = self.lattice.base();
        let m = base.len();
        for z in self.lattice.elements()? {
            let u = self.gamma_bar(z)?;
            let mut left = BitSet::new();
            let mut right = BitSet::new();
            for t in u.members().iter() {
                let (p, q) = (t / m, t % m);
                if e.contains(p) {
                    left.union_with(base.up(q));
                }
                if e.contains(q) {
                    right.union_with(base.up(p));
                }
            }
            if left.complement(m) != *z.bits() || right.complement(m) != *z.bits() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn counits_exhaustive(&self) -> Result<Vec<DownSet>> {
        let mut out = Vec::new();
        for e in self.lattice.elements()? {
            if self.is_counit(e)? {
                out.push(e.clone());
            }
        }
        Ok(out)
    }
}

fn pair_product(m: usize, acc: &mut BitSet, xs: &BitSet, ys: &BitSet) {
    for p in xs.iter() {
        for q in ys.iter() {
            acc.insert(p * m + q);
        }
    }
}

/// `γ(z) = ⋁_p ↓p ⊗ (p\z)`.
pub fn gamma_from_residuals(r: &ResiduationAlgebra) -> Result<Comonoid> {
    let d = r.lattice();
    let m = d.base().len();
    let gamma = d
        .elements()?
        .iter()
        .map(|z| {
            let mut acc = BitSet::new();
            for p in 0..m {
                let x = d.prime(p);
                pair_product(m, &mut acc, &x, &r.lres(&x, z));
            }
            TensorElement::from_downset(2, DownSet::from_bits_unchecked(acc))
        })
        .collect();
    Comonoid::new(d, gamma, r.unit().cloned())
}

/// `γ(z) = {(p, q) | μ(p, q) <= z}`, the right adjoint of `μ`.
pub fn gamma_from_multiplication(r: &ResiduationAlgebra) -> Result<Comonoid> {
    let d = r.lattice();
    let m = d.base().len();
    let gamma = d
        .elements()?
        .iter()
        .map(|z| {
            let bits = (0..m * m).filter(|&i| r.mu(i / m, i % m).is_subset(z)).collect();
            TensorElement::from_downset(2, DownSet::from_bits_unchecked(bits))
        })
        .collect();
    Comonoid::new(d, gamma, r.unit().cloned())
}

/// `x\z = x ⊸ γ(z)` and `z/y = γ(z) ⟜ y`.
pub fn residuals_from_gamma(c: &Comonoid) -> Result<ResiduationAlgebra> {
    let d = c.lattice();
    let els = d.elements()?;
    let m = d.base().len();
    let limp = |x: &DownSet, t: &TensorElement| -> DownSet {
        DownSet::from_bits_unchecked((0..m).filter(|&q| x.iter().all(|p| t.members().contains(p * m + q))).collect())
    };
    let rimp = |t: &TensorElement, y: &DownSet| -> DownSet {
        DownSet::from_bits_unchecked((0..m).filter(|&p| y.iter().all(|q| t.members().contains(p * m + q))).collect())
    };
    let lres: Vec<DownSet> = els.iter().flat_map(|a| els.iter().map(move |z| limp(a, c.gamma(z)))).collect();
    let rres: Vec<DownSet> = els.iter().flat_map(|z| els.iter().map(move |b| rimp(c.gamma(z), b))).collect();
    let r = ResiduationAlgebra::from_residuals(d, &lres, &rres)?;
    if c.counit().is_some() && c.counit() != r.unit() {
        return Err(CoreError::Disagreement {
            what: "counit and unit",
            detail: format!("counit {:?}, unit {:?}", c.counit(), r.unit()),
        });
    }
    Ok(r)
}

/// `μ(t) <= z <=> t <= γ(z)` for every `t` in the tensor square and every `z`.
pub fn is_adjoint(mu: &JoinMap, c: &Comonoid) -> Result<bool> {
    let d = c.lattice();
    if mu.cod() != d || *mu.dom() != tensor_power(d, 2) {
        return Err(CoreError::LatticeMismatch);
    }
    let ts = tensor_elements(d, 2)?;
    for t in &ts {
        let mt = mu.eval(t.members());
        for z in d.elements()? {
            if mt.is_subset(z) != t.leq(c.gamma(z)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ResiduationFlags {
    pub pure: bool,
    pub associative: bool,
    pub unital: bool,
    pub prime_unital: bool,
    pub derivation: bool,
    pub join_preserving_at_primes: bool,
}

fn agree(what: &'static str, routes: &[bool]) -> Result<bool> {
    if routes.iter().any(|&b| b != routes[0]) {
        return Err(CoreError::Disagreement { what, detail: format!("routes gave {routes:?}") });
    }
    Ok(routes[0])
}

/// `p\-` and `-/p` preserve finite joins for every prime `p`.
fn pure_by_residuals(r: &ResiduationAlgebra) -> Result<bool> {
    let d = r.lattice();
    let els = d.elements()?;
    let bot = d.bottom();
    for p in d.primes() {
        if !r.lres(&p, &bot).is_empty() || !r.rres(&bot, &p).is_empty() {
            return Ok(false);
        }
        for (i, x) in els.iter().enumerate() {
            for y in &els[i + 1..] {
                let j = x.union(y);
                if r.lres(&p, &j) != r.lres(&p, x).union(&r.lres(&p, y))
                    || r.rres(&j, &p) != r.rres(x, &p).union(&r.rres(y, &p))
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `μ` sends prime pairs to primes and `μ(x⊗y) = ⊥` only when `x` or `y` is.
fn pure_by_multiplication(r: &ResiduationAlgebra) -> Result<bool> {
    let d = r.lattice();
    if !r.mu_table().iter().all(|v| d.is_join_prime(v)) {
        return Ok(false);
    }
    let els = d.elements()?;
    Ok(els.iter().all(|x| els.iter().all(|y| r.multiply(x, y).is_empty() == (x.is_empty() || y.is_empty()))))
}

fn assoc_by_residuals(r: &ResiduationAlgebra) -> Result<bool> {
    let els = r.lattice().elements()?;
    Ok(els.iter().all(|x| {
        els.iter().all(|z| {
            let xz = r.lres(x, z);
            els.iter().all(|y| r.lres(x, &r.rres(z, y)) == r.rres(&xz, y))
        })
    }))
}

fn assoc_by_multiplication(r: &ResiduationAlgebra) -> bool {
    let d = r.lattice();
    let m = d.base().len();
    (0..m).all(|p| {
        (0..m).all(|q| {
            (0..m).all(|s| {
                r.multiply(r.mu(p, q), &d.prime(s)) == r.multiply(&d.prime(p), r.mu(q, s))
            })
        })
    })
}

/// For every prime filter `↑p`, `a ∈ ↑p` and `b, c` there is `a' ∈ ↑p` with
/// `a\(b∨c) <= (a'\b) ∨ (a'\c)`.
pub fn is_join_preserving_at_primes(r: &ResiduationAlgebra) -> Result<bool> {
    let d = r.lattice();
    let els = d.elements()?;
    for p in 0..d.base().len() {
        let filter: Vec<&DownSet> = els.iter().filter(|a| a.contains(p)).collect();
        for a in &filter {
            for b in els {
                for c in els {
                    let lhs = r.lres(a, &b.union(c));
                    if !filter.iter().any(|a2| lhs.is_subset(&r.lres(a2, b).union(&r.lres(a2, c)))) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Pure, associative and unital are each decided along every available
/// route; a disagreement between routes is an error.
pub fn classify(r: &ResiduationAlgebra) -> Result<ResiduationFlags> {
    let c = gamma_from_residuals(r)?;
    let pure = agree("purity", &[c.is_pure()?, pure_by_residuals(r)?, pure_by_multiplication(r)?])?;
    let associative =
        agree("associativity", &[assoc_by_residuals(r)?, c.is_coassociative()?, assoc_by_multiplication(r)])?;
    let units = r.units_exhaustive()?;
    let counits = c.counits_exhaustive()?;
    if units.len() > 1 || units.first() != r.unit() || counits.first() != r.unit() {
        return Err(CoreError::Disagreement {
            what: "unit",
            detail: format!("candidate {:?}, units {units:?}, counits {counits:?}", r.unit()),
        });
    }
    let prime_unital = r.is_prime_unital();
    Ok(ResiduationFlags {
        pure,
        associative,
        unital: r.unit().is_some(),
        prime_unital,
        derivation: pure && associative && prime_unital,
        join_preserving_at_primes: is_join_preserving_at_primes(r)?,
    })
}

/// Derivation algebras are pure, associative and prime-unital.
pub fn check_derivation(r: &ResiduationAlgebra) -> Result<()> {
    let f = classify(r)?;
    if f.derivation {
        return Ok(());
    }
    let mut missing = Vec::new();
    for (ok, name) in [(f.pure, "pure"), (f.associative, "associative"), (f.prime_unital, "prime-unital")] {
        if !ok {
            missing.push(name);
        }
    }
    Err(CoreError::NotDerivation(missing.join(", ")))
}

fn close(
    d: &FiniteDistLattice,
    seed: &[DownSet],
    mut divide: impl FnMut(&DownSet, &mut Vec<DownSet>),
) -> Result<Vec<DownSet>> {
    for s in seed {
        element_of(d, s)?;
    }
    let mut set: BTreeSet<DownSet> = BTreeSet::new();
    let mut queue: Vec<DownSet> = Vec::new();
    for x in [d.bottom(), d.top()].into_iter().chain(seed.iter().cloned()) {
        if set.insert(x.clone()) {
            queue.push(x);
        }
    }
    let mut fresh = Vec::new();
    while let Some(x) = queue.pop() {
        fresh.clear();
        divide(&x, &mut fresh);
        for y in &set {
            fresh.push(x.intersection(y));
            fresh.push(x.union(y));
        }
        for y in fresh.drain(..) {
            if !set.contains(&y) {
                if set.len() >= ELEMENT_LIMIT {
                    return Err(CoreError::TooLarge { what: "residuation ideal", size: ELEMENT_LIMIT });
                }
                set.insert(y.clone());
                queue.push(y);
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// The least bounded sublattice containing `seed` and closed under `z\x` and
/// `x/z` for all `z` in the algebra. Since `(⋁ᵢpᵢ)\x = ⋀ᵢ pᵢ\x`, dividing by
/// primes suffices, so the lattice itself need not be enumerable.
pub fn residuation_ideal(r: &ResiduationAlgebra, seed: &[DownSet]) -> Result<Vec<DownSet>> {
    let d = r.lattice();
    let primes = d.primes();
    close(d, seed, |x, out| {
        for p in &primes {
            out.push(r.lres(p, x));
            out.push(r.rres(x, p));
        }
    })
}

/// [`residuation_ideal`], dividing by every element.
pub fn residuation_ideal_exhaustive(r: &ResiduationAlgebra, seed: &[DownSet]) -> Result<Vec<DownSet>> {
    let d = r.lattice();
    let els = d.elements()?;
    close(d, seed, |x, out| {
        for z in els {
            out.push(r.lres(z, x));
            out.push(r.rres(x, z));
        }
    })
}

/// A bounded sublattice closed under its own residuals, relabelled as an
/// algebra on the downsets of its join-irreducibles.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    algebra: ResiduationAlgebra,
    generators: Vec<DownSet>,
}

impl Subalgebra {
    pub fn algebra(&self) -> &ResiduationAlgebra {
        &self.algebra
    }

    /// `generators()[i]` is the ambient element of the `i`-th prime.
    pub fn generators(&self) -> &[DownSet] {
        &self.generators
    }

    pub fn embed(&self, x: &BitSet) -> DownSet {
        let mut acc = BitSet::new();
        for i in x.iter() {
            acc.union_with(&self.generators[i]);
        }
        DownSet::from_bits_unchecked(acc)
    }

    /// The element of the subalgebra embedding as `x`, if there is one.
    pub fn restrict(&self, x: &DownSet) -> Option<DownSet> {
        let s = DownSet::from_bits_unchecked(
            (0..self.generators.len()).filter(|&i| self.generators[i].is_subset(x)).collect(),
        );
        (self.embed(&s) == *x).then_some(s)
    }
}

pub fn subalgebra(r: &ResiduationAlgebra, elements: &[DownSet]) -> Result<Subalgebra> {
    let d = r.lattice();
    let set: BTreeSet<DownSet> = elements.iter().cloned().collect();
    for x in &set {
        element_of(d, x)?;
    }
    let bad = |what: &str| Err(CoreError::InvalidResiduation(format!("subset is not closed under {what}")));
    if !set.contains(&d.bottom()) || !set.contains(&d.top()) {
        return bad("the bounds");
    }
    for x in &set {
        for z in &set {
            if !set.contains(&x.union(z)) || !set.contains(&x.intersection(z)) {
                return bad("joins and meets");
            }
            if !set.contains(&r.lres(x, z)) || !set.contains(&r.rres(z, x)) {
                return bad("residuals");
            }
        }
    }
    let generators: Vec<DownSet> = set
        .iter()
        .filter(|j| {
            let mut below = BitSet::new();
            for i in set.iter().filter(|i| i.is_subset(j) && i != j) {
                below.union_with(i);
            }
            below != *j.bits()
        })
        .cloned()
        .collect();
    let k = generators.len();
    let leq: Vec<Vec<bool>> =
        (0..k).map(|i| (0..k).map(|j| generators[i].is_subset(&generators[j])).collect()).collect();
    let lattice = FiniteDistLattice::from_poset(&Poset::from_matrix(&leq)?);
    let restrict = |x: &DownSet| DownSet::from_bits_unchecked((0..k).filter(|&i| generators[i].is_subset(x)).collect());
    let mut mu = Vec::with_capacity(k * k);
    for a in &generators {
        for b in &generators {
            let mut acc = d.top();
            for z in &set {
                if b.is_subset(&r.lres(a, z)) {
                    acc = acc.intersection(z);
                }
            }
            mu.push(restrict(&acc));
        }
    }
    let sub = Subalgebra { algebra: ResiduationAlgebra::from_multiplication(&lattice, mu)?, generators };
    for x in &set {
        let sx = sub.restrict(x).ok_or_else(|| CoreError::InvalidResiduation("not a distributive sublattice".into()))?;
        for z in &set {
            let sz = sub.restrict(z).expect("checked above");
            if sub.embed(&sub.algebra.lres(&sx, &sz)) != r.lres(x, z)
                || sub.embed(&sub.algebra.rres(&sz, &sx)) != r.rres(z, x)
            {
                return Err(CoreError::Disagreement {
                    what: "subalgebra residuals",
                    detail: format!("at {x:?}, {z:?}"),
                });
            }
        }
    }
    Ok(sub)
}

fn check_ends(f: &LatticeMap, r: &FiniteDistLattice, s: &FiniteDistLattice) -> Result<()> {
    if f.dom() != r || f.cod() != s {
        return Err(CoreError::LatticeMismatch);
    }
    Ok(())
}

fn units<'a>(r: &'a ResiduationAlgebra, s: &'a ResiduationAlgebra) -> Result<(&'a DownSet, &'a DownSet)> {
    Ok((r.unit().ok_or(CoreError::NoUnit)?, s.unit().ok_or(CoreError::NoUnit)?))
}

/// With `f*` the left adjoint of `f`: `f*(e') = e`,
/// `y\f(z) = f(f*(y)\z)` and `f(z)/y = f(z/f*(y))`.
pub fn is_open_morphism(r: &ResiduationAlgebra, s: &ResiduationAlgebra, f: &LatticeHom) -> Result<bool> {
    check_ends(f, r.lattice(), s.lattice())?;
    let (e, e2) = units(r, s)?;
    let fl = f.left_adjoint()?;
    if fl.apply(e2) != e {
        return Ok(false);
    }
    let zs = r.lattice().elements()?;
    for y in s.lattice().elements()? {
        let ly = fl.apply(y);
        for z in zs {
            let fz = f.apply(z);
            if s.lres(y, fz) != *f.apply(&r.lres(ly, z)) || s.rres(fz, y) != *f.apply(&r.rres(z, ly)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The forth, back (both sides) and unit conditions, with the back
/// witnesses found by search.
pub fn satisfies_forth_back(r: &ResiduationAlgebra, s: &ResiduationAlgebra, f: &LatticeHom) -> Result<bool> {
    check_ends(f, r.lattice(), s.lattice())?;
    let (e, e2) = units(r, s)?;
    let xs = r.lattice().elements()?;
    let forth = xs.iter().all(|x| {
        xs.iter().all(|z| {
            r_le(f.apply(&r.lres(x, z)), &s.lres(f.apply(x), f.apply(z)))
                && r_le(f.apply(&r.rres(z, x)), &s.rres(f.apply(z), f.apply(x)))
        })
    });
    if !forth {
        return Ok(false);
    }
    let unit = xs.iter().all(|x| e.is_subset(x) == e2.is_subset(f.apply(x)));
    if !unit {
        return Ok(false);
    }
    for y in s.lattice().elements()? {
        for z in xs {
            let fz = f.apply(z);
            let above: Vec<&DownSet> = xs.iter().filter(|x| y.is_subset(f.apply(x))).collect();
            let target = s.lres(y, fz);
            if !above.iter().any(|x| *f.apply(&r.lres(x, z)) == target) {
                return Ok(false);
            }
            let target = s.rres(fz, y);
            if !above.iter().any(|x| *f.apply(&r.rres(z, x)) == target) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn r_le(a: &DownSet, b: &DownSet) -> bool {
    a.is_subset(b)
}

/// Both characterisations of a residuation morphism; they must agree.
pub fn is_residuation_morphism(r: &ResiduationAlgebra, s: &ResiduationAlgebra, f: &LatticeHom) -> Result<bool> {
    agree("residuation morphism", &[is_open_morphism(r, s, f)?, satisfies_forth_back(r, s, f)?])
}

fn check_corelational(rho: &LatticeMap) -> Result<()> {
    rho.check_joins()?;
    let top = rho.dom().top();
    if *rho.apply(&top) != rho.cod().top() {
        return Err(CoreError::NotPreserving { what: "top", detail: format!("ρ(⊤) = {:?}", rho.apply(&top)) });
    }
    Ok(())
}

/// `ρ(x\z) <= ρ(x)\ρ(z)` and `e' <= ρ(e)`, for `ρ` preserving joins and `⊤`.
pub fn is_corelational_morphism(r: &ResiduationAlgebra, s: &ResiduationAlgebra, rho: &LatticeMap) -> Result<bool> {
    check_ends(rho, r.lattice(), s.lattice())?;
    check_corelational(rho)?;
    let (e, e2) = units(r, s)?;
    if !e2.is_subset(rho.apply(e)) {
        return Ok(false);
    }
    let xs = r.lattice().elements()?;
    Ok(xs.iter().all(|x| xs.iter().all(|z| rho.apply(&r.lres(x, z)).is_subset(&s.lres(rho.apply(x), rho.apply(z))))))
}

fn counits<'a>(c: &'a Comonoid, d: &'a Comonoid) -> Result<(&'a DownSet, &'a DownSet)> {
    Ok((c.counit().ok_or(CoreError::NoUnit)?, d.counit().ok_or(CoreError::NoUnit)?))
}

/// `(f ⊠ f) γ̄ = γ̄' f` and `ε = ε' f`.
pub fn is_coalgebra_morphism(c: &Comonoid, c2: &Comonoid, f: &LatticeHom) -> Result<bool> {
    check_ends(f, c.lattice(), c2.lattice())?;
    let (e, e2) = counits(c, c2)?;
    let d = c.lattice();
    let xs = d.elements()?;
    if !xs.iter().all(|x| e.is_subset(x) == e2.is_subset(f.apply(x))) {
        return Ok(false);
    }
    let m = d.base().len();
    let m2 = c2.lattice().base().len();
    let images: Vec<BitSet> = (0..m).map(|p| f.apply(&d.meet_prime(p)).complement(m2)).collect();
    for z in xs {
        let mut acc = BitSet::new();
        for t in c.gamma_bar(z)?.members().iter() {
            pair_product(m2, &mut acc, &images[t / m], &images[t % m]);
        }
        if acc != *c2.gamma_bar(f.apply(z))?.members() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(ρ ⊗ ρ) γ <= γ' ρ` and `ε <= ε' ρ`, for `ρ` preserving joins and `⊤`.
pub fn is_corelational_comonoid_morphism(c: &Comonoid, c2: &Comonoid, rho: &LatticeMap) -> Result<bool> {
    check_ends(rho, c.lattice(), c2.lattice())?;
    check_corelational(rho)?;
    let (e, e2) = counits(c, c2)?;
    if !e2.is_subset(rho.apply(e)) {
        return Ok(false);
    }
    let d = c.lattice();
    let m = d.base().len();
    let m2 = c2.lattice().base().len();
    let images: Vec<&DownSet> = (0..m).map(|p| rho.apply(&d.prime(p))).collect();
    for z in d.elements()? {
        let mut acc = BitSet::new();
        for t in c.gamma(z).members().iter() {
            pair_product(m2, &mut acc, images[t / m], images[t % m]);
        }
        if !acc.is_subset(c2.gamma(rho.apply(z)).members()) {
            return Ok(false);
        }
    }
    Ok(true)
}
