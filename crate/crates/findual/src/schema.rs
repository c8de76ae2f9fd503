//! The on-disk format: one JSON object per file, discriminated by `kind`.
//!
//! Nested posets (`lattice`, `base`, `dom`, `cod`, `poset`) are written as
//! `{n, leq}` without a `kind` field. Lattice elements are lists of points
//! of the base poset; operator elements are lists of prime tuples.

use serde::{Deserialize, Serialize};

use findual_core::catdual::{FiniteCategory, RelationalMonoid};
use findual_core::lattice::canonicalize;
use findual_core::monoid::{OrderedMonoid, RelationalMonoidMorphism};
use findual_core::operator::{DualRelation, Operator, OperatorSpace};
use findual_core::order::{tuple_index, tuple_of};
use findual_core::reglang::Dfa;
use findual_core::residuation::ResiduationAlgebra;
use findual_core::{
    AbstractLattice, BitSet, DownSet, FiniteDistLattice, LatticeHom, LatticeMap, MonotoneMap, OrderRelation, Poset,
};

use crate::CliError;

/// Largest prime-tuple space an operator file may ask for.
const MAX_TUPLES: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub n: usize,
    /// Pairs `[i, j]` meaning `i <= j`; reflexive pairs may be left out.
    #[serde(default)]
    pub leq: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub base: PosetFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub lattice: PosetFile,
    pub k: usize,
    pub n: usize,
    /// One entry per prime `k`-tuple in row-major order, each a list of
    /// prime `n`-tuples.
    pub table: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationFile {
    pub lattice: PosetFile,
    pub k: usize,
    pub n: usize,
    /// `[c, p]` with `c` an `n`-tuple and `p` a `k`-tuple.
    pub pairs: Vec<[Vec<usize>; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetFile>,
    pub mult: Vec<Vec<usize>>,
    pub unit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationalMorphismFile {
    pub dom: MonoidFile,
    pub cod: MonoidFile,
    pub pairs: Vec<[usize; 2]>,
}

/// A join-preserving map `𝒟(dom) → 𝒟(cod)` given on the primes of `dom`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorelationalMapFile {
    pub dom: MonoidFile,
    pub cod: MonoidFile,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonotoneMapFile {
    pub dom: PosetFile,
    pub cod: PosetFile,
    pub table: Vec<usize>,
}

/// A lattice homomorphism `𝒟(dom) → 𝒟(cod)` given on the primes of `dom`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeHomFile {
    pub dom: PosetFile,
    pub cod: PosetFile,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfaFile {
    pub states: usize,
    /// One character per letter.
    pub alphabet: String,
    /// `delta[q][a]`
    pub delta: Vec<Vec<usize>>,
    pub initial: usize,
    pub accepting: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegexFile {
    pub alphabet: String,
    pub pattern: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub id: usize,
    pub dom: usize,
    pub cod: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: usize,
    pub morphisms: Vec<MorphismEntry>,
    /// `[f, g, h]`: `f` then `g` is `h`.
    pub compose: Vec<[usize; 3]>,
    /// The identity of each object, in object order.
    pub identities: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelMonFile {
    pub n: usize,
    /// `comp[x][y]` is the set `x ∘ y`.
    pub comp: Vec<Vec<Vec<usize>>>,
    #[serde(rename = "E")]
    pub units: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub lattice: PosetFile,
    /// `mu[p][q]` is the product of the primes `↓p` and `↓q`.
    pub mu: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StructureFile {
    Poset(PosetFile),
    Lattice(LatticeFile),
    AbstractLattice(PosetFile),
    Operator(OperatorFile),
    Relation(RelationFile),
    Monoid(MonoidFile),
    RelationalMorphism(RelationalMorphismFile),
    CorelationalMap(CorelationalMapFile),
    MonotoneMap(MonotoneMapFile),
    LatticeHom(LatticeHomFile),
    Dfa(DfaFile),
    Regex(RegexFile),
    Category(CategoryFile),
    #[serde(rename = "relmon", alias = "relational-monoid")]
    RelMon(RelMonFile),
    ResiduationAlgebra(AlgebraFile),
}

impl StructureFile {
    pub fn kind(&self) -> &'static str {
        match self {
            StructureFile::Poset(_) => "poset",
            StructureFile::Lattice(_) => "lattice",
            StructureFile::AbstractLattice(_) => "abstract-lattice",
            StructureFile::Operator(_) => "operator",
            StructureFile::Relation(_) => "relation",
            StructureFile::Monoid(_) => "monoid",
            StructureFile::RelationalMorphism(_) => "relational-morphism",
            StructureFile::CorelationalMap(_) => "corelational-map",
            StructureFile::MonotoneMap(_) => "monotone-map",
            StructureFile::LatticeHom(_) => "lattice-hom",
            StructureFile::Dfa(_) => "dfa",
            StructureFile::Regex(_) => "regex",
            StructureFile::Category(_) => "category",
            StructureFile::RelMon(_) => "relmon",
            StructureFile::ResiduationAlgebra(_) => "residuation-algebra",
        }
    }
}

/// A loaded and validated structure.
#[derive(Clone, Debug)]
pub enum Structure {
    Poset(Poset),
    Lattice(FiniteDistLattice),
    AbstractLattice(AbstractLattice),
    Operator(Operator),
    Relation(DualRelation),
    Monoid(OrderedMonoid),
    RelationalMorphism(RelationalMonoidMorphism),
    CorelationalMap { dom: OrderedMonoid, cod: OrderedMonoid, map: LatticeMap },
    MonotoneMap(MonotoneMap),
    LatticeHom(LatticeHom),
    Dfa(Dfa),
    Category(FiniteCategory),
    RelMon(RelationalMonoid),
    Algebra(ResiduationAlgebra),
}

fn schema<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Schema(msg.into()))
}

fn check_index(what: &str, i: usize, bound: usize) -> Result<usize, CliError> {
    if i >= bound {
        return schema(format!("{what} {i} out of range (size {bound})"));
    }
    Ok(i)
}

fn bits(what: &str, xs: &[usize], bound: usize) -> Result<BitSet, CliError> {
    xs.iter().map(|&x| check_index(what, x, bound)).collect()
}

fn sorted(b: &BitSet) -> Vec<usize> {
    b.iter().collect()
}

pub fn load_poset(f: &PosetFile) -> Result<Poset, CliError> {
    for &[i, j] in &f.leq {
        check_index("point", i, f.n)?;
        check_index("point", j, f.n)?;
    }
    let pairs: Vec<(usize, usize)> = f.leq.iter().map(|&[i, j]| (i, j)).collect();
    Ok(Poset::from_pairs(f.n, &pairs)?)
}

pub fn emit_poset(p: &Poset) -> PosetFile {
    PosetFile { n: p.len(), leq: p.pairs().into_iter().filter(|(a, b)| a != b).map(|(a, b)| [a, b]).collect() }
}

fn element(d: &FiniteDistLattice, xs: &[usize]) -> Result<DownSet, CliError> {
    Ok(d.element(bits("point", xs, d.base().len())?)?)
}

fn tuple_space(m: usize, arity: usize) -> Result<Vec<usize>, CliError> {
    match m.checked_pow(arity as u32) {
        Some(t) if t <= MAX_TUPLES => Ok(vec![m; arity]),
        _ => schema(format!("{m}^{arity} prime tuples is more than {MAX_TUPLES}")),
    }
}

fn tuple(sizes: &[usize], t: &[usize]) -> Result<usize, CliError> {
    if t.len() != sizes.len() {
        return schema(format!("tuple {t:?} should have length {}", sizes.len()));
    }
    for (&x, &m) in t.iter().zip(sizes) {
        check_index("tuple entry", x, m)?;
    }
    Ok(tuple_index(sizes, t))
}

fn load_operator(f: &OperatorFile) -> Result<Operator, CliError> {
    let p = load_poset(&f.lattice)?;
    let (sk, sn) = (tuple_space(p.len(), f.k)?, tuple_space(p.len(), f.n)?);
    let space = OperatorSpace::new(&FiniteDistLattice::from_poset(&p), f.k, f.n);
    let rows = sk.iter().product::<usize>();
    if f.table.len() != rows {
        return schema(format!("operator table has {} entries, expected {rows}", f.table.len()));
    }
    let mut table = Vec::with_capacity(rows);
    for entry in &f.table {
        let b = entry.iter().map(|t| tuple(&sn, t)).collect::<Result<BitSet, _>>()?;
        table.push(space.cod().element(b)?);
    }
    Ok(space.operator(table)?)
}

pub fn emit_operator(h: &Operator) -> OperatorFile {
    let m = h.lattice().base().len();
    let sn = vec![m; h.n()];
    let table = h.table().iter().map(|x| x.iter().map(|i| tuple_of(&sn, i)).collect()).collect();
    OperatorFile { lattice: emit_poset(h.lattice().base()), k: h.k(), n: h.n(), table }
}

fn load_relation(f: &RelationFile) -> Result<DualRelation, CliError> {
    let p = load_poset(&f.lattice)?;
    let (sk, sn) = (tuple_space(p.len(), f.k)?, tuple_space(p.len(), f.n)?);
    let space = OperatorSpace::new(&FiniteDistLattice::from_poset(&p), f.k, f.n);
    let pairs = f.pairs.iter().map(|[c, q]| Ok((tuple(&sn, c)?, tuple(&sk, q)?))).collect::<Result<Vec<_>, CliError>>()?;
    let rel = OrderRelation::new(space.cod().base().clone(), space.dom().base().clone(), pairs)?;
    Ok(space.relation(rel)?)
}

pub fn emit_relation(r: &DualRelation) -> RelationFile {
    let m = r.space().lattice().base().len();
    let (sk, sn) = (vec![m; r.k()], vec![m; r.n()]);
    let pairs = r.relation().pairs().into_iter().map(|(c, q)| [tuple_of(&sn, c), tuple_of(&sk, q)]).collect();
    RelationFile { lattice: emit_poset(r.space().lattice().base()), k: r.k(), n: r.n(), pairs }
}

pub fn load_monoid(f: &MonoidFile) -> Result<OrderedMonoid, CliError> {
    let n = f.mult.len();
    let carrier = match &f.poset {
        Some(p) => load_poset(p)?,
        None => Poset::antichain(n),
    };
    if carrier.len() != n {
        return schema(format!("monoid has {n} rows but its poset has {} points", carrier.len()));
    }
    let mut mult = Vec::with_capacity(n * n);
    for row in &f.mult {
        if row.len() != n {
            return schema(format!("multiplication row of length {}, expected {n}", row.len()));
        }
        for &x in row {
            mult.push(check_index("element", x, n)?);
        }
    }
    check_index("unit", f.unit, n)?;
    Ok(OrderedMonoid::new(carrier, mult, f.unit)?)
}

pub fn emit_monoid(m: &OrderedMonoid) -> MonoidFile {
    let n = m.len();
    MonoidFile {
        poset: (!m.carrier().is_discrete()).then(|| emit_poset(m.carrier())),
        mult: m.table().chunks(n.max(1)).map(<[usize]>::to_vec).collect(),
        unit: m.unit(),
    }
}

fn join_of_primes(d: &FiniteDistLattice, table: &[DownSet], x: &DownSet) -> DownSet {
    x.iter().fold(d.bottom(), |acc, p| acc.union(&table[p]))
}

/// A join-preserving map from values on primes; monotonicity is checked
/// by the lattice map constructor.
fn map_on_primes(dom: &FiniteDistLattice, cod: &FiniteDistLattice, table: &[Vec<usize>]) -> Result<LatticeMap, CliError> {
    if table.len() != dom.base().len() {
        return schema(format!("map table has {} entries, expected {}", table.len(), dom.base().len()));
    }
    let values = table.iter().map(|xs| element(cod, xs)).collect::<Result<Vec<_>, _>>()?;
    Ok(LatticeMap::from_fn(dom, cod, |x| join_of_primes(cod, &values, x))?)
}

fn emit_map_on_primes(f: &LatticeMap) -> Vec<Vec<usize>> {
    f.dom().primes().iter().map(|p| sorted(f.apply(p))).collect()
}

pub fn emit_category(c: &FiniteCategory) -> CategoryFile {
    let m = c.morphisms();
    let morphisms = (0..m).map(|f| MorphismEntry { id: f, dom: c.dom(f), cod: c.cod(f) }).collect();
    let compose = (0..m * m).filter_map(|i| c.compose_table()[i].map(|h| [i / m, i % m, h])).collect();
    CategoryFile { objects: c.objects(), morphisms, compose, identities: c.identities().to_vec() }
}

fn load_category(f: &CategoryFile) -> Result<FiniteCategory, CliError> {
    let m = f.morphisms.len();
    let (mut dom, mut cod) = (vec![usize::MAX; m], vec![0; m]);
    for e in &f.morphisms {
        let id = check_index("morphism id", e.id, m)?;
        if dom[id] != usize::MAX {
            return schema(format!("morphism id {id} is repeated"));
        }
        dom[id] = check_index("object", e.dom, f.objects)?;
        cod[id] = check_index("object", e.cod, f.objects)?;
    }
    if f.identities.len() != f.objects {
        return schema(format!("{} identities for {} objects", f.identities.len(), f.objects));
    }
    for &i in &f.identities {
        check_index("morphism", i, m)?;
    }
    let mut compose = vec![None; m * m];
    for &[a, b, c] in &f.compose {
        for x in [a, b, c] {
            check_index("morphism", x, m)?;
        }
        if compose[a * m + b].replace(c).is_some_and(|old| old != c) {
            return schema(format!("composite of {a} and {b} given twice"));
        }
    }
    Ok(FiniteCategory::new(f.objects, dom, cod, f.identities.clone(), compose)?)
}

pub fn emit_relmon(r: &RelationalMonoid) -> RelMonFile {
    let n = r.len();
    let comp = (0..n).map(|x| (0..n).map(|y| sorted(r.comp(x, y))).collect()).collect();
    RelMonFile { n, comp, units: sorted(r.units()) }
}

fn load_relmon(f: &RelMonFile) -> Result<RelationalMonoid, CliError> {
    let n = f.n;
    if f.comp.len() != n || f.comp.iter().any(|row| row.len() != n) {
        return schema(format!("composition table must be {n} by {n}"));
    }
    let comp = f.comp.iter().flatten().map(|xs| bits("element", xs, n)).collect::<Result<Vec<_>, _>>()?;
    Ok(RelationalMonoid::new(n, comp, bits("element", &f.units, n)?)?)
}

pub fn emit_algebra(r: &ResiduationAlgebra) -> AlgebraFile {
    let m = r.lattice().base().len();
    let mu = (0..m).map(|p| (0..m).map(|q| sorted(r.mu(p, q))).collect()).collect();
    AlgebraFile { lattice: emit_poset(r.lattice().base()), mu }
}

fn load_algebra(f: &AlgebraFile) -> Result<ResiduationAlgebra, CliError> {
    let d = FiniteDistLattice::from_poset(&load_poset(&f.lattice)?);
    let m = d.base().len();
    if f.mu.len() != m || f.mu.iter().any(|row| row.len() != m) {
        return schema(format!("multiplication table must be {m} by {m}"));
    }
    let mu = f.mu.iter().flatten().map(|xs| element(&d, xs)).collect::<Result<Vec<_>, _>>()?;
    Ok(ResiduationAlgebra::from_multiplication(&d, mu)?)
}

pub fn emit_dfa(d: &Dfa) -> DfaFile {
    let k = d.alphabet().len();
    DfaFile {
        states: d.states(),
        alphabet: d.alphabet().iter().collect(),
        delta: d.transitions().chunks(k.max(1)).map(<[usize]>::to_vec).collect(),
        initial: d.initial(),
        accepting: sorted(d.accepting()),
    }
}

fn load_dfa(f: &DfaFile) -> Result<Dfa, CliError> {
    let alphabet: Vec<char> = f.alphabet.chars().collect();
    if f.delta.len() != f.states || f.delta.iter().any(|row| row.len() != alphabet.len()) {
        return schema(format!("transition table must be {} by {}", f.states, alphabet.len()));
    }
    let delta = f.delta.iter().flatten().map(|&q| check_index("state", q, f.states)).collect::<Result<Vec<_>, _>>()?;
    check_index("initial state", f.initial, f.states)?;
    let accepting = bits("state", &f.accepting, f.states)?;
    Ok(Dfa::new(alphabet, f.states, delta, f.initial, accepting)?)
}

pub fn emit_relational_morphism(rho: &RelationalMonoidMorphism) -> RelationalMorphismFile {
    RelationalMorphismFile {
        dom: emit_monoid(rho.dom()),
        cod: emit_monoid(rho.cod()),
        pairs: rho.relation().pairs().into_iter().map(|(a, b)| [a, b]).collect(),
    }
}

pub fn emit_corelational_map(dom: &OrderedMonoid, cod: &OrderedMonoid, f: &LatticeMap) -> CorelationalMapFile {
    CorelationalMapFile { dom: emit_monoid(dom), cod: emit_monoid(cod), table: emit_map_on_primes(f) }
}

pub fn emit_lattice_hom(h: &LatticeHom) -> LatticeHomFile {
    LatticeHomFile { dom: emit_poset(h.dom().base()), cod: emit_poset(h.cod().base()), table: emit_map_on_primes(h) }
}

pub fn emit_monotone_map(f: &MonotoneMap) -> MonotoneMapFile {
    MonotoneMapFile { dom: emit_poset(f.dom()), cod: emit_poset(f.cod()), table: f.table().to_vec() }
}

/// The explicit inclusion order on the elements of a downset lattice.
pub fn emit_abstract_lattice(d: &FiniteDistLattice) -> Result<PosetFile, CliError> {
    Ok(emit_poset(AbstractLattice::from_lattice(d)?.order()))
}

pub fn load(file: &StructureFile) -> Result<Structure, CliError> {
    Ok(match file {
        StructureFile::Poset(f) => Structure::Poset(load_poset(f)?),
        StructureFile::Lattice(f) => Structure::Lattice(FiniteDistLattice::from_poset(&load_poset(&f.base)?)),
        StructureFile::AbstractLattice(f) => {
            let a = AbstractLattice::new(load_poset(f)?)?;
            // only distributive lattices have a dual here
            canonicalize(&a)?;
            Structure::AbstractLattice(a)
        }
        StructureFile::Operator(f) => Structure::Operator(load_operator(f)?),
        StructureFile::Relation(f) => Structure::Relation(load_relation(f)?),
        StructureFile::Monoid(f) => Structure::Monoid(load_monoid(f)?),
        StructureFile::RelationalMorphism(f) => {
            let (dom, cod) = (load_monoid(&f.dom)?, load_monoid(&f.cod)?);
            for &[a, b] in &f.pairs {
                check_index("element", a, dom.len())?;
                check_index("element", b, cod.len())?;
            }
            let rel = OrderRelation::new(dom.carrier().clone(), cod.carrier().clone(), f.pairs.iter().map(|&[a, b]| (a, b)))?;
            Structure::RelationalMorphism(RelationalMonoidMorphism::new(dom, cod, rel)?)
        }
        StructureFile::CorelationalMap(f) => {
            let (dom, cod) = (load_monoid(&f.dom)?, load_monoid(&f.cod)?);
            let map = map_on_primes(
                &FiniteDistLattice::from_poset(dom.carrier()),
                &FiniteDistLattice::from_poset(cod.carrier()),
                &f.table,
            )?;
            Structure::CorelationalMap { dom, cod, map }
        }
        StructureFile::MonotoneMap(f) => {
            let (dom, cod) = (load_poset(&f.dom)?, load_poset(&f.cod)?);
            for &x in &f.table {
                check_index("point", x, cod.len())?;
            }
            if f.table.len() != dom.len() {
                return schema(format!("map table has {} entries, expected {}", f.table.len(), dom.len()));
            }
            Structure::MonotoneMap(MonotoneMap::new(dom, cod, f.table.clone())?)
        }
        StructureFile::LatticeHom(f) => {
            let dom = FiniteDistLattice::from_poset(&load_poset(&f.dom)?);
            let cod = FiniteDistLattice::from_poset(&load_poset(&f.cod)?);
            Structure::LatticeHom(LatticeHom::new(map_on_primes(&dom, &cod, &f.table)?)?)
        }
        StructureFile::Dfa(f) => Structure::Dfa(load_dfa(f)?),
        StructureFile::Regex(f) => {
            let alphabet: Vec<char> = f.alphabet.chars().collect();
            Structure::Dfa(Dfa::from_regex(&f.pattern, &alphabet)?)
        }
        StructureFile::Category(f) => Structure::Category(load_category(f)?),
        StructureFile::RelMon(f) => Structure::RelMon(load_relmon(f)?),
        StructureFile::ResiduationAlgebra(f) => Structure::Algebra(load_algebra(f)?),
    })
}
