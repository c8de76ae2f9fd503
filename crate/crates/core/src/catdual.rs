//! Relational monoids, finite categories and residuation CABAs.
//!
//! Composition is diagrammatic throughout: `x∘y` is "`x` then `y`", defined
//! in a category when `cod x = dom y`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::error::{CoreError, Result};
use crate::lattice::{FiniteDistLattice, LatticeHom, LatticeMap};
use crate::monoid::OrderedMonoid;
use crate::order::DownSet;
use crate::residuation::ResiduationAlgebra;

/// A carrier `0..n`, a multiplication relation `x∘y ⊆ M` and identities `E`.
/// Only the shape is enforced; the laws are reported by [`RelationalMonoid::flags`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct RelationalMonoid {
    n: usize,
    comp: Vec<BitSet>,
    units: BitSet,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct RelMonFlags {
    pub associative: bool,
    pub unital: bool,
    pub partial: bool,
    pub local: bool,
}

impl RelationalMonoid {
    /// `comp[x * n + y]` is `x∘y`.
    pub fn new(n: usize, comp: Vec<BitSet>, units: BitSet) -> Result<RelationalMonoid> {
        if comp.len() != n * n {
            return Err(CoreError::ArityMismatch { expected: n * n, found: comp.len() });
        }
        for s in comp.iter().chain([&units]) {
            if let Some(i) = s.iter().find(|&i| i >= n) {
                return Err(CoreError::IndexOutOfRange { index: i, bound: n });
            }
        }
        Ok(RelationalMonoid { n, comp, units })
    }

    pub fn from_monoid(m: &OrderedMonoid) -> RelationalMonoid {
        let n = m.len();
        let comp = m.table().iter().map(|&c| BitSet::singleton(c)).collect();
        RelationalMonoid { n, comp, units: BitSet::singleton(m.unit()) }
    }

    /// `(℘(X), +, ∅)`: disjoint subsets compose to their union, others not
    /// at all. Subsets are numbered by their bit patterns.
    pub fn disjoint_union(x: usize) -> RelationalMonoid {
        let n = 1 << x;
        let comp = (0..n * n)
            .map(|c| {
                let (a, b) = (c / n, c % n);
                if a & b == 0 {
                    BitSet::singleton(a | b)
                } else {
                    BitSet::new()
                }
            })
            .collect();
        RelationalMonoid { n, comp, units: BitSet::singleton(0) }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn comp(&self, x: usize, y: usize) -> &BitSet {
        &self.comp[x * self.n + y]
    }

    pub fn table(&self) -> &[BitSet] {
        &self.comp
    }

    pub fn units(&self) -> &BitSet {
        &self.units
    }

    /// `x ∘@ y`: the composite is non-empty.
    pub fn defined(&self, x: usize, y: usize) -> bool {
        !self.comp(x, y).is_empty()
    }

    /// `A∘B = ⋃ {x∘y | x ∈ A, y ∈ B}`.
    pub fn lift(&self, a: &BitSet, b: &BitSet) -> BitSet {
        let mut acc = BitSet::new();
        for x in a.iter() {
            for y in b.iter() {
                acc.union_with(self.comp(x, y));
            }
        }
        acc
    }

    pub fn flags(&self) -> RelMonFlags {
        let n = self.n;
        let associative = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let (sx, sz) = (BitSet::singleton(x), BitSet::singleton(z));
                    self.lift(self.comp(x, y), &sz) == self.lift(&sx, self.comp(y, z))
                })
            })
        });
        let unital = (0..n).all(|x| {
            let sx = BitSet::singleton(x);
            self.lift(&self.units, &sx) == sx && self.lift(&sx, &self.units) == sx
        });
        let partial = self.comp.iter().all(|c| c.len() <= 1);
        let local = (0..n).all(|x| {
            (0..n).filter(|&y| self.defined(x, y)).all(|y| {
                (0..n).all(|z| self.comp(y, z).iter().all(|v| self.defined(x, v)))
            })
        });
        RelMonFlags { associative, unital, partial, local }
    }

    /// `A? = {n | ∃m ∈ A: m ∘@ n}`.
    pub fn question(&self, a: &BitSet) -> BitSet {
        (0..self.n).filter(|&y| a.iter().any(|x| self.defined(x, y))).collect()
    }
}

/// Every associative unital relational monoid on `0..n`.
pub fn relational_monoids(n: usize) -> Vec<RelationalMonoid> {
    let mut out = Vec::new();
    for mask in 1u64..1 << n {
        for_each_unit_shape(n, &BitSet::from_word(mask), |m| {
            let f = m.flags();
            if f.associative && f.unital {
                out.push(m.clone());
            }
        });
    }
    out
}

/// Calls `visit` on every multiplication with `e∘x, x∘e ⊆ {x}` for `e ∈ E`,
/// a superset of the unital ones.
pub fn for_each_unit_shape(n: usize, units: &BitSet, mut visit: impl FnMut(&RelationalMonoid)) {
    let subsets: Vec<BitSet> = (0u64..1 << n).map(BitSet::from_word).collect();
    let options: Vec<Vec<BitSet>> = (0..n * n)
        .map(|c| {
            let (x, y) = (c / n, c % n);
            subsets
                .iter()
                .filter(|s| {
                    (!units.contains(x) || s.is_subset(&BitSet::singleton(y)))
                        && (!units.contains(y) || s.is_subset(&BitSet::singleton(x)))
                })
                .cloned()
                .collect()
        })
        .collect();
    let mut choice = vec![0usize; n * n];
    let mut m = RelationalMonoid { n, comp: options.iter().map(|o| o[0].clone()).collect(), units: units.clone() };
    loop {
        visit(&m);
        let mut k = 0;
        while k < n * n && choice[k] + 1 == options[k].len() {
            choice[k] = 0;
            m.comp[k] = options[k][0].clone();
            k += 1;
        }
        if k == n * n {
            return;
        }
        choice[k] += 1;
        m.comp[k] = options[k][choice[k]].clone();
    }
}

/// Every multiplication relation and identity set on `0..n`.
pub fn for_each_shape(n: usize, mut visit: impl FnMut(&RelationalMonoid)) -> Result<()> {
    let cells = n * n;
    let bits = cells * n + n;
    if bits > 24 {
        return Err(CoreError::TooLarge { what: "relational monoid shapes", size: 1 << bits.min(63) });
    }
    for code in 0u64..1 << bits {
        let mask = (1u64 << n) - 1;
        let comp = (0..cells).map(|c| BitSet::from_word(code >> (c * n) & mask)).collect();
        let units = BitSet::from_word(code >> (cells * n) & mask);
        visit(&RelationalMonoid { n, comp, units });
    }
    Ok(())
}

/// A finite category with explicit composition. `compose[f * m + g]` is
/// `f` then `g`, present exactly when `cod f = dom g`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteCategory {
    objects: usize,
    dom: Vec<usize>,
    cod: Vec<usize>,
    identities: Vec<usize>,
    compose: Vec<Option<usize>>,
}

impl FiniteCategory {
    pub fn new(
        objects: usize,
        dom: Vec<usize>,
        cod: Vec<usize>,
        identities: Vec<usize>,
        compose: Vec<Option<usize>>,
    ) -> Result<FiniteCategory> {
        let m = dom.len();
        let bad = |s: String| Err(CoreError::InvalidCategory(s));
        if cod.len() != m || identities.len() != objects || compose.len() != m * m {
            return bad("table sizes do not match".into());
        }
        if dom.iter().chain(&cod).any(|&o| o >= objects) || identities.iter().any(|&f| f >= m) {
            return bad("index out of range".into());
        }
        for (o, &i) in identities.iter().enumerate() {
            if dom[i] != o || cod[i] != o {
                return bad(format!("identity {i} of object {o} is not an endomorphism of it"));
            }
        }
        for f in 0..m {
            for g in 0..m {
                match compose[f * m + g] {
                    None if cod[f] == dom[g] => return bad(format!("{f};{g} is missing")),
                    Some(_) if cod[f] != dom[g] => return bad(format!("{f};{g} is not composable")),
                    Some(h) if h >= m || dom[h] != dom[f] || cod[h] != cod[g] => {
                        return bad(format!("{f};{g} has the wrong type"))
                    }
                    _ => {}
                }
            }
            if compose[identities[dom[f]] * m + f] != Some(f) || compose[f * m + identities[cod[f]]] != Some(f) {
                return bad(format!("identity law fails at {f}"));
            }
        }
        let c = FiniteCategory { objects, dom, cod, identities, compose };
        for f in 0..m {
            for g in 0..m {
                let Some(fg) = c.then(f, g) else { continue };
                for h in 0..m {
                    if let Some(gh) = c.then(g, h) {
                        if c.then(fg, h) != c.then(f, gh) {
                            return bad(format!("({f};{g});{h} differs from {f};({g};{h})"));
                        }
                    }
                }
            }
        }
        Ok(c)
    }

    /// One object, morphisms the monoid elements.
    pub fn from_monoid(m: &OrderedMonoid) -> FiniteCategory {
        let n = m.len();
        FiniteCategory {
            objects: 1,
            dom: vec![0; n],
            cod: vec![0; n],
            identities: vec![m.unit()],
            compose: m.table().iter().map(|&c| Some(c)).collect(),
        }
    }

    pub fn discrete(k: usize) -> FiniteCategory {
        FiniteCategory {
            objects: k,
            dom: (0..k).collect(),
            cod: (0..k).collect(),
            identities: (0..k).collect(),
            compose: (0..k * k).map(|c| (c / k == c % k).then_some(c / k)).collect(),
        }
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn morphisms(&self) -> usize {
        self.dom.len()
    }

    pub fn dom(&self, f: usize) -> usize {
        self.dom[f]
    }

    pub fn cod(&self, f: usize) -> usize {
        self.cod[f]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn then(&self, f: usize, g: usize) -> Option<usize> {
        self.compose[f * self.morphisms() + g]
    }

    pub fn compose_table(&self) -> &[Option<usize>] {
        &self.compose
    }

    /// Objects renumbered in the order of their identity morphisms.
    pub fn canonical(&self) -> FiniteCategory {
        let mut order: Vec<usize> = (0..self.objects).collect();
        order.sort_by_key(|&o| self.identities[o]);
        let mut rename = vec![0; self.objects];
        for (new, &old) in order.iter().enumerate() {
            rename[old] = new;
        }
        FiniteCategory {
            objects: self.objects,
            dom: self.dom.iter().map(|&o| rename[o]).collect(),
            cod: self.cod.iter().map(|&o| rename[o]).collect(),
            identities: order.iter().map(|&o| self.identities[o]).collect(),
            compose: self.compose.clone(),
        }
    }
}

pub fn category_to_relmon(c: &FiniteCategory) -> RelationalMonoid {
    let comp = c.compose.iter().map(|h| h.map(BitSet::singleton).unwrap_or_default()).collect();
    RelationalMonoid { n: c.morphisms(), comp, units: c.identities.iter().copied().collect() }
}

/// Objects are the identities in ascending order; `f : e → e'` where `e`
/// and `e'` are the unique identities with `e∘f = f = f∘e'`.
pub fn relmon_to_category(m: &RelationalMonoid) -> Result<FiniteCategory> {
    let f = m.flags();
    let missing: Vec<&str> = [
        (f.associative, "associative"),
        (f.unital, "unital"),
        (f.partial, "partial"),
        (f.local, "local"),
    ]
    .iter()
    .filter(|(ok, _)| !ok)
    .map(|&(_, what)| what)
    .collect();
    if !missing.is_empty() {
        return Err(CoreError::InvalidRelMonoid(format!("not {}", missing.join(", "))));
    }
    let units: Vec<usize> = m.units.iter().collect();
    let side = |x: usize, left: bool| -> Result<usize> {
        let sx = BitSet::singleton(x);
        let hits: Vec<usize> = (0..units.len())
            .filter(|&i| if left { *m.comp(units[i], x) == sx } else { *m.comp(x, units[i]) == sx })
            .collect();
        match hits[..] {
            [o] => Ok(o),
            _ => Err(CoreError::InvalidRelMonoid(format!("{x} has {} one-sided units", hits.len()))),
        }
    };
    let n = m.n;
    let dom = (0..n).map(|x| side(x, true)).collect::<Result<Vec<_>>>()?;
    let cod = (0..n).map(|x| side(x, false)).collect::<Result<Vec<_>>>()?;
    let compose = m.comp.iter().map(|c| c.first()).collect();
    FiniteCategory::new(units.len(), dom, cod, units, compose)
}

/// Categories with at most `max_objects` objects and `max_morphisms`
/// morphisms. Identities come first and the remaining morphisms are sorted
/// by `(dom, cod)`, so some isomorphic copies remain.
pub fn categories(max_objects: usize, max_morphisms: usize) -> Vec<FiniteCategory> {
    let mut out = Vec::new();
    for k in 0..=max_objects {
        for m in k..=max_morphisms {
            if k == 0 && m > 0 {
                continue;
            }
            let extra = m - k;
            // nondecreasing (dom, cod) codes for the non-identity morphisms
            let mut types = vec![0usize; extra];
            loop {
                let mut dom: Vec<usize> = (0..k).collect();
                let mut cod: Vec<usize> = (0..k).collect();
                dom.extend(types.iter().map(|t| t / k.max(1)));
                cod.extend(types.iter().map(|t| t % k.max(1)));
                categories_with_types(k, &dom, &cod, &mut out);
                if !next_sorted(&mut types, k * k) {
                    break;
                }
            }
        }
    }
    out
}

fn next_sorted(v: &mut [usize], bound: usize) -> bool {
    let mut i = v.len();
    while i > 0 {
        i -= 1;
        if v[i] + 1 < bound {
            v[i] += 1;
            let x = v[i];
            for y in &mut v[i + 1..] {
                *y = x;
            }
            return true;
        }
    }
    false
}

fn categories_with_types(k: usize, dom: &[usize], cod: &[usize], out: &mut Vec<FiniteCategory>) {
    let m = dom.len();
    // free cells: composable pairs of non-identities
    let mut cells = Vec::new();
    let mut options = Vec::new();
    let mut compose: Vec<Option<usize>> = vec![None; m * m];
    for f in 0..m {
        for g in 0..m {
            if cod[f] != dom[g] {
                continue;
            }
            if f < k {
                compose[f * m + g] = Some(g);
            } else if g < k {
                compose[f * m + g] = Some(f);
            } else {
                let hom: Vec<usize> = (0..m).filter(|&h| dom[h] == dom[f] && cod[h] == cod[g]).collect();
                if hom.is_empty() {
                    return;
                }
                cells.push(f * m + g);
                options.push(hom);
            }
        }
    }
    let mut choice = vec![0usize; cells.len()];
    loop {
        for (i, &c) in cells.iter().enumerate() {
            compose[c] = Some(options[i][choice[i]]);
        }
        if let Ok(c) = FiniteCategory::new(k, dom.to_vec(), cod.to_vec(), (0..k).collect(), compose.clone()) {
            out.push(c);
        }
        let mut i = 0;
        while i < cells.len() && choice[i] + 1 == options[i].len() {
            choice[i] = 0;
            i += 1;
        }
        if i == cells.len() {
            return;
        }
        choice[i] += 1;
    }
}

/// Whether some bijection of morphisms carries one category onto the other.
pub fn categories_isomorphic(a: &FiniteCategory, b: &FiniteCategory) -> bool {
    let m = a.morphisms();
    if m != b.morphisms() || a.objects != b.objects || m > 8 {
        return false;
    }
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        let ok = (0..m).all(|f| {
            (0..m).all(|g| a.then(f, g).map(|h| perm[h]) == b.then(perm[f], perm[g]))
        }) && a.identities.iter().all(|&i| b.identities.contains(&perm[i]));
        if ok {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A residuation algebra on a powerset, atoms numbered `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResCaba {
    algebra: ResiduationAlgebra,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct ResCabaFlags {
    pub unital: bool,
    pub associative: bool,
    pub functional: bool,
    pub local: bool,
    pub categorical: bool,
}

impl ResCaba {
    pub fn new(algebra: ResiduationAlgebra) -> Result<ResCaba> {
        if !algebra.lattice().base().is_discrete() {
            return Err(CoreError::InvalidResiduation("lattice is not a powerset".into()));
        }
        Ok(ResCaba { algebra })
    }

    pub fn algebra(&self) -> &ResiduationAlgebra {
        &self.algebra
    }

    pub fn lattice(&self) -> &FiniteDistLattice {
        self.algebra.lattice()
    }

    pub fn atoms(&self) -> usize {
        self.lattice().base().len()
    }

    pub fn top(&self) -> BitSet {
        BitSet::full(self.atoms())
    }

    pub fn lres(&self, a: &BitSet, c: &BitSet) -> BitSet {
        self.algebra.lres(a, c).bits().clone()
    }

    pub fn rres(&self, c: &BitSet, a: &BitSet) -> BitSet {
        self.algebra.rres(c, a).bits().clone()
    }

    pub fn multiply(&self, a: &BitSet, b: &BitSet) -> BitSet {
        self.algebra.multiply(a, b).bits().clone()
    }

    pub fn unit(&self) -> Option<&BitSet> {
        self.algebra.unit().map(|e| e.bits())
    }

    /// `x? = ¬(x\⊥)`.
    pub fn question(&self, x: &BitSet) -> BitSet {
        self.lres(x, &BitSet::new()).complement(self.atoms())
    }

    fn elements(&self) -> Result<Vec<BitSet>> {
        Ok(self.lattice().elements()?.iter().map(|x| x.bits().clone()).collect())
    }

    /// `x?\x? = ⊤` for every `x`.
    pub fn is_local(&self) -> Result<bool> {
        let top = self.top();
        Ok(self.elements()?.iter().all(|x| {
            let q = self.question(x);
            self.lres(&q, &q) == top
        }))
    }

    /// `A?∘M ⊆ A?` for every `A`.
    pub fn is_local_by_composition(&self) -> Result<bool> {
        let top = self.top();
        Ok(self.elements()?.iter().all(|x| {
            let q = self.question(x);
            self.multiply(&q, &top).is_subset(&q)
        }))
    }

    /// `a\-` preserves binary joins for every atom `a`.
    pub fn is_functional(&self) -> Result<bool> {
        let els = self.elements()?;
        Ok((0..self.atoms()).all(|a| {
            let a = BitSet::singleton(a);
            els.iter().all(|c| {
                els.iter().all(|d| self.lres(&a, &c.union(d)) == self.lres(&a, c).union(&self.lres(&a, d)))
            })
        }))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.atoms();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let (a, b, c) = (BitSet::singleton(a), BitSet::singleton(b), BitSet::singleton(c));
                    self.multiply(&self.multiply(&a, &b), &c) == self.multiply(&a, &self.multiply(&b, &c))
                })
            })
        })
    }
}

pub fn classify_rescaba(r: &ResCaba) -> Result<ResCabaFlags> {
    let local = r.is_local()?;
    if local != r.is_local_by_composition()? {
        return Err(CoreError::Disagreement { what: "locality", detail: format!("{r:?}") });
    }
    let unital = r.unit().is_some();
    let associative = r.is_associative();
    let functional = r.is_functional()?;
    Ok(ResCabaFlags { unital, associative, functional, local, categorical: unital && associative && functional && local })
}

/// `A\C = {b | A∘b ⊆ C}` on `℘(M)`.
pub fn relmon_to_rescaba(m: &RelationalMonoid) -> ResCaba {
    let lattice = FiniteDistLattice::boolean(m.n);
    let mu = m.comp.iter().map(|c| DownSet::from_bits_unchecked(c.clone())).collect();
    let algebra = ResiduationAlgebra::from_multiplication(&lattice, mu).expect("every relation is monotone on a powerset");
    ResCaba { algebra }
}

/// Multiplication on atoms; the identities are the unit, or empty if there is none.
pub fn rescaba_to_relmon(r: &ResCaba) -> RelationalMonoid {
    let n = r.atoms();
    let comp = (0..n * n).map(|c| r.algebra.mu(c / n, c % n).bits().clone()).collect();
    RelationalMonoid { n, comp, units: r.unit().cloned().unwrap_or_default() }
}

/// `℘(f)(x∘y) = f(x)∘f(y)` and `f(E) ⊆ E'`.
pub fn is_functorial(m: &RelationalMonoid, m2: &RelationalMonoid, f: &[usize]) -> Result<bool> {
    check_function(m, m2, f)?;
    let image = |s: &BitSet| -> BitSet { s.iter().map(|x| f[x]).collect() };
    let pure = (0..m.n).all(|x| (0..m.n).all(|y| image(m.comp(x, y)) == *m2.comp(f[x], f[y])));
    Ok(pure && image(&m.units).is_subset(&m2.units))
}

/// `℘(f)(x∘y) ⊆ f(x)∘f(y)` and `f(E) ⊆ E'`. Between categories these are
/// exactly the functors; [`is_functorial`] additionally asks that
/// non-composable pairs stay non-composable.
pub fn is_functor(m: &RelationalMonoid, m2: &RelationalMonoid, f: &[usize]) -> Result<bool> {
    check_function(m, m2, f)?;
    let lax = (0..m.n).all(|x| (0..m.n).all(|y| m.comp(x, y).iter().all(|z| m2.comp(f[x], f[y]).contains(f[z]))));
    Ok(lax && m.units.iter().all(|e| m2.units.contains(f[e])))
}

fn check_function(m: &RelationalMonoid, m2: &RelationalMonoid, f: &[usize]) -> Result<()> {
    if f.len() != m.n {
        return Err(CoreError::ArityMismatch { expected: m.n, found: f.len() });
    }
    match f.iter().find(|&&y| y >= m2.n) {
        Some(&y) => Err(CoreError::IndexOutOfRange { index: y, bound: m2.n }),
        None => Ok(()),
    }
}

/// The inverse image `f⁻¹ : ℘(M') → ℘(M)` of any function.
pub fn preimage(m: &RelationalMonoid, m2: &RelationalMonoid, f: &[usize]) -> Result<LatticeHom> {
    check_function(m, m2, f)?;
    let map = LatticeMap::from_fn(&FiniteDistLattice::boolean(m2.n), &FiniteDistLattice::boolean(m.n), |b| {
        DownSet::from_bits_unchecked((0..m.n).filter(|&x| b.contains(f[x])).collect())
    })?;
    LatticeHom::new(map)
}

/// The lax unital morphism `f⁻¹` dual to a functorial morphism.
pub fn dualize_functor(m: &RelationalMonoid, m2: &RelationalMonoid, f: &[usize]) -> Result<LatticeHom> {
    if !is_functorial(m, m2, f)? {
        return Err(CoreError::NotFunctorial(format!("{f:?}")));
    }
    preimage(m, m2, f)
}

/// Recovers `f` from a complete homomorphism of powersets: `f(x)` is the
/// atom whose image contains `x`.
pub fn function_of(h: &LatticeHom) -> Option<Vec<usize>> {
    let n2 = h.dom().base().len();
    let n = h.cod().base().len();
    let mut f = vec![usize::MAX; n];
    for y in 0..n2 {
        for x in h.apply(&h.dom().prime(y)).iter() {
            if f[x] != usize::MAX {
                return None;
            }
            f[x] = y;
        }
    }
    f.iter().all(|&y| y != usize::MAX).then_some(f)
}

/// `x'\h(z) = h(h*(x')\z)` for all `x'`, `z`. Both sides turn joins in `x'`
/// into meets, so atoms `x'` suffice.
pub fn is_rescaba_morphism(r: &ResCaba, r2: &ResCaba, h: &LatticeHom) -> Result<bool> {
    if h.dom() != r.lattice() || h.cod() != r2.lattice() {
        return Err(CoreError::LatticeMismatch);
    }
    let hl = h.left_adjoint()?;
    let zs = r.lattice().elements()?;
    Ok(r2.lattice().primes().iter().all(|x| {
        let lx = hl.apply(x);
        zs.iter().all(|z| r2.algebra.lres(x, h.apply(z)) == *h.apply(&r.algebra.lres(lx, z)))
    }))
}

/// The right-residual analogue of [`is_rescaba_morphism`].
pub fn is_rescaba_morphism_right(r: &ResCaba, r2: &ResCaba, h: &LatticeHom) -> Result<bool> {
    if h.dom() != r.lattice() || h.cod() != r2.lattice() {
        return Err(CoreError::LatticeMismatch);
    }
    let hl = h.left_adjoint()?;
    let zs = r.lattice().elements()?;
    Ok(r2.lattice().primes().iter().all(|x| {
        let lx = hl.apply(x);
        zs.iter().all(|z| r2.algebra.rres(h.apply(z), x) == *h.apply(&r.algebra.rres(z, lx)))
    }))
}

/// `e' ≤ h(e)`.
pub fn is_lax_unital(r: &ResCaba, r2: &ResCaba, h: &LatticeHom) -> Result<bool> {
    let e = r.algebra.unit().ok_or(CoreError::NoUnit)?;
    let e2 = r2.algebra.unit().ok_or(CoreError::NoUnit)?;
    Ok(e2.is_subset(h.apply(e)))
}
