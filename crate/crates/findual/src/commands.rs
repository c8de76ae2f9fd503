use std::str::FromStr;

use serde_json::{json, Map, Value};

use findual_core::catdual::{
    categories, category_to_relmon, classify_rescaba, relational_monoids, relmon_to_category, relmon_to_rescaba,
    rescaba_to_relmon, RelMonFlags, RelationalMonoid, ResCaba, ResCabaFlags,
};
use findual_core::correspondence::{check_all, check_correspondence, ModalProperty};
use findual_core::enumerate::{for_each_monotone_table, isomorphic, lattices, posets};
use findual_core::lattice::{canonicalize, dual_poset, dualize_hom, dualize_map};
use findual_core::monoid::{
    check_relational_morphism, derivation_to_monoid, dualize_relational_morphism, monoid_to_derivation,
    ordered_monoids, relation_of_dual, OrderedMonoid, RelationalMonoidMorphism,
};
use findual_core::operator::{
    classify as classify_operator, dualize_operator, dualize_relation, relation_flags, Operator, OperatorFlags,
    OperatorSpace,
};
use findual_core::reglang::{gamma_of_language, residuation_ideal_of, syntactic_monoid, Dfa};
use findual_core::residuation::{
    classify as classify_algebra, for_each_algebra, gamma_from_multiplication, gamma_from_residuals,
    is_corelational_morphism, mu_from_residuals, residuals_from_gamma, ResiduationAlgebra, ResiduationFlags,
};
use findual_core::{CoreError, FiniteDistLattice, LatticeMap};

use crate::schema::*;
use crate::{CliError, Outcome};

fn usage<T>(msg: String) -> Result<T, CliError> {
    Err(CliError::Usage(msg))
}

fn kind_of(s: &Structure) -> &'static str {
    match s {
        Structure::Poset(_) => "poset",
        Structure::Lattice(_) => "lattice",
        Structure::AbstractLattice(_) => "abstract-lattice",
        Structure::Operator(_) => "operator",
        Structure::Relation(_) => "relation",
        Structure::Monoid(_) => "monoid",
        Structure::RelationalMorphism(_) => "relational-morphism",
        Structure::CorelationalMap { .. } => "corelational-map",
        Structure::MonotoneMap(_) => "monotone-map",
        Structure::LatticeHom(_) => "lattice-hom",
        Structure::Dfa(_) => "dfa",
        Structure::Category(_) => "category",
        Structure::RelMon(_) => "relmon",
        Structure::Algebra(_) => "residuation-algebra",
    }
}

fn sets(xs: &[impl std::ops::Deref<Target = findual_core::BitSet>]) -> Value {
    xs.iter().map(|x| x.iter().collect::<Vec<_>>()).collect()
}

fn operator_flags_json(f: &OperatorFlags) -> Value {
    json!({
        "pure": f.pure,
        "meet_preserving_nonempty": f.meet_preserving_nonempty,
        "top_preserving": f.top_preserving,
    })
}

fn algebra_flags_json(f: &ResiduationFlags) -> Value {
    json!({
        "pure": f.pure,
        "associative": f.associative,
        "unital": f.unital,
        "prime_unital": f.prime_unital,
        "derivation": f.derivation,
        "join_preserving_at_primes": f.join_preserving_at_primes,
    })
}

fn relmon_flags_json(f: &RelMonFlags) -> Value {
    json!({ "associative": f.associative, "unital": f.unital, "partial": f.partial, "local": f.local })
}

fn rescaba_flags_json(f: &ResCabaFlags) -> Value {
    json!({
        "unital": f.unital,
        "associative": f.associative,
        "functional": f.functional,
        "local": f.local,
        "categorical": f.categorical,
    })
}

/// Flags on both sides of the relational-monoid duality, with the first
/// pair that fails to match.
fn relmon_and_dual(m: &RelationalMonoid) -> Result<(RelMonFlags, ResCabaFlags, Option<String>), CliError> {
    let f = m.flags();
    let c = classify_rescaba(&relmon_to_rescaba(m))?;
    let pairs = [
        ("partial/functional", f.partial, c.functional),
        ("local/local", f.local, c.local),
        ("unital/unital", f.unital, c.unital),
        ("associative/associative", f.associative, c.associative),
    ];
    let bad = pairs.iter().find(|(_, a, b)| a != b).map(|(what, a, b)| format!("{what}: relmon {a}, dual {b}"));
    Ok((f, c, bad))
}

fn corelational_failure(dom: &OrderedMonoid, cod: &OrderedMonoid, map: &LatticeMap) -> Result<Option<String>, CliError> {
    if *map.apply(&map.dom().top()) != map.cod().top() {
        return Ok(Some("map does not preserve the top element".into()));
    }
    if !is_corelational_morphism(&monoid_to_derivation(dom), &monoid_to_derivation(cod), map)? {
        return Ok(Some("map is not a corelational morphism of the derivation algebras".into()));
    }
    Ok(None)
}

pub(crate) fn dualize(s: Structure) -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    out.result = Some(match s {
        Structure::Poset(p) => {
            let d = FiniteDistLattice::from_poset(&p);
            out.details = Some(json!({ "elements": sets(d.elements()?) }));
            StructureFile::AbstractLattice(emit_abstract_lattice(&d)?)
        }
        Structure::Lattice(d) => StructureFile::Poset(emit_poset(&dual_poset(&d))),
        Structure::AbstractLattice(a) => {
            let (d, iso) = canonicalize(&a)?;
            out.details = Some(json!({ "join_primes": a.join_primes(), "embedding": sets(&iso) }));
            StructureFile::Poset(emit_poset(d.base()))
        }
        Structure::Operator(h) => StructureFile::Relation(emit_relation(&dualize_operator(&h))),
        Structure::Relation(r) => StructureFile::Operator(emit_operator(&dualize_relation(&r))),
        Structure::Monoid(m) => StructureFile::ResiduationAlgebra(emit_algebra(&monoid_to_derivation(&m))),
        Structure::Algebra(r) => {
            let flags = classify_algebra(&r)?;
            if flags.derivation {
                StructureFile::Monoid(emit_monoid(&derivation_to_monoid(&r)?))
            } else if r.lattice().base().is_discrete() {
                let m = rescaba_to_relmon(&ResCaba::new(r)?);
                match relmon_to_category(&m) {
                    Ok(c) if m.flags().unital && m.flags().associative => StructureFile::Category(emit_category(&c)),
                    _ => StructureFile::RelMon(emit_relmon(&m)),
                }
            } else {
                out.failure = Some("not a derivation algebra and the lattice is not a powerset".into());
                return Ok(out);
            }
        }
        Structure::Category(c) => {
            StructureFile::ResiduationAlgebra(emit_algebra(relmon_to_rescaba(&category_to_relmon(&c)).algebra()))
        }
        Structure::RelMon(m) => StructureFile::ResiduationAlgebra(emit_algebra(relmon_to_rescaba(&m).algebra())),
        Structure::MonotoneMap(f) => StructureFile::LatticeHom(emit_lattice_hom(&dualize_map(&f)?)),
        Structure::LatticeHom(h) => StructureFile::MonotoneMap(emit_monotone_map(&dualize_hom(&h)?)),
        Structure::RelationalMorphism(rho) => {
            let map = dualize_relational_morphism(&rho)?;
            StructureFile::CorelationalMap(emit_corelational_map(rho.cod(), rho.dom(), &map))
        }
        Structure::CorelationalMap { dom, cod, map } => {
            if let Some(w) = corelational_failure(&dom, &cod, &map)? {
                out.failure = Some(w);
                return Ok(out);
            }
            let rel = relation_of_dual(&map)?;
            let rho = RelationalMonoidMorphism::new(cod, dom, rel)?;
            StructureFile::RelationalMorphism(emit_relational_morphism(&rho))
        }
        s @ Structure::Dfa(_) => return usage(format!("dualize does not apply to {}; try synmon", kind_of(&s))),
    });
    Ok(out)
}

fn modal_flags(h: &Operator) -> Result<Value, CliError> {
    let mut m = Map::new();
    for c in check_all(h)? {
        m.insert(c.property.name().into(), c.operator_side.into());
    }
    Ok(Value::Object(m))
}

pub(crate) fn classify(s: Structure) -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    let flags = match s {
        Structure::Operator(h) => {
            let mut v = json!({ "operator": operator_flags_json(&classify_operator(&h)?) });
            if h.k() == 1 && h.n() == 1 {
                v["modal"] = modal_flags(&h)?;
            }
            v
        }
        Structure::Relation(r) => {
            let h = dualize_relation(&r);
            let mut v = json!({ "relation": operator_flags_json(&relation_flags(&r)) });
            if h.k() == 1 && h.n() == 1 {
                v["modal"] = modal_flags(&h)?;
            }
            v
        }
        Structure::Algebra(r) => {
            let mut v = json!({ "residuation": algebra_flags_json(&classify_algebra(&r)?) });
            if r.lattice().base().is_discrete() {
                v["rescaba"] = rescaba_flags_json(&classify_rescaba(&ResCaba::new(r)?)?);
            }
            v
        }
        Structure::Monoid(m) => json!({ "residuation": algebra_flags_json(&classify_algebra(&monoid_to_derivation(&m))?) }),
        Structure::RelMon(m) => {
            let (f, c, bad) = relmon_and_dual(&m)?;
            out.failure = bad;
            json!({ "relmon": relmon_flags_json(&f), "rescaba": rescaba_flags_json(&c) })
        }
        Structure::Category(c) => {
            let (f, c, bad) = relmon_and_dual(&category_to_relmon(&c))?;
            out.failure = bad;
            json!({ "relmon": relmon_flags_json(&f), "rescaba": rescaba_flags_json(&c) })
        }
        Structure::Lattice(d) => json!({ "lattice": { "distributive": true, "boolean": d.is_boolean() } }),
        Structure::AbstractLattice(a) => {
            let (d, _) = canonicalize(&a)?;
            json!({ "lattice": { "distributive": true, "boolean": d.is_boolean() } })
        }
        s => return usage(format!("classify does not apply to {}", kind_of(&s))),
    };
    out.flags = Some(flags);
    Ok(out)
}

pub(crate) fn correspond(s: Structure, property: Option<&str>) -> Result<Outcome, CliError> {
    let h = match s {
        Structure::Operator(h) => h,
        Structure::Relation(r) => dualize_relation(&r),
        s => return usage(format!("correspond needs a unary operator or relation, not {}", kind_of(&s))),
    };
    let props = match property {
        Some(name) => vec![ModalProperty::from_str(name)?],
        None => ModalProperty::ALL.to_vec(),
    };
    let mut out = Outcome::default();
    let mut flags = Map::new();
    let mut rows = Vec::new();
    for p in props {
        match check_correspondence(&h, p) {
            Ok(c) => {
                flags.insert(p.name().into(), c.operator_side.into());
                rows.push(json!({ "property": p.name(), "operator_side": c.operator_side, "relation_side": c.relation_side }));
            }
            Err(e @ CoreError::Disagreement { .. }) => {
                out.failure = Some(e.to_string());
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    out.flags = Some(Value::Object(flags));
    out.details = Some(json!({ "properties": rows }));
    Ok(out)
}

pub(crate) fn synmon(s: Structure, gamma: bool) -> Result<Outcome, CliError> {
    let Structure::Dfa(d) = s else {
        return usage(format!("synmon needs a dfa or regex, not {}", kind_of(&s)));
    };
    let m = syntactic_monoid(&d)?;
    let ideal = residuation_ideal_of(&d)?;
    let n = m.len();
    let min: &Dfa = m.dfa();
    let letters: Map<String, Value> =
        min.alphabet().iter().enumerate().map(|(a, c)| (c.to_string(), m.letter(a).into())).collect();
    let mut details = json!({
        "input_states": d.states(),
        "minimal_automaton": emit_dfa(min),
        "size": n,
        "unit": m.unit(),
        "witnesses": (0..n).map(|s| min.spell(m.witness(s))).collect::<Vec<_>>(),
        "letters": letters,
        "accepting_elements": m.image().iter().collect::<Vec<_>>(),
        "ideal_size": ideal.elements.len(),
    });
    if gamma {
        let g = gamma_of_language(&d)?;
        let pairs: Vec<[usize; 2]> = g.members().iter().map(|i| [i / n, i % n]).collect();
        details["gamma"] = json!(pairs);
    }
    Ok(Outcome {
        result: Some(StructureFile::Monoid(emit_monoid(&m.ordered_monoid()))),
        details: Some(details),
        ..Outcome::default()
    })
}

pub(crate) fn validate(s: Structure) -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    out.failure = match &s {
        Structure::RelMon(m) => {
            let f = m.flags();
            match (f.associative, f.unital) {
                (false, _) => Some("composition is not associative".into()),
                (_, false) => Some("E is not a unit".into()),
                _ => None,
            }
        }
        Structure::RelationalMorphism(rho) if !check_relational_morphism(rho) => {
            Some("relation is not total or a lax diagram fails".into())
        }
        Structure::CorelationalMap { dom, cod, map } => corelational_failure(dom, cod, map)?,
        _ => None,
    };
    out.flags = Some(json!({ "valid": out.failure.is_none() }));
    Ok(out)
}

/// Counts for one sweep suite; `witness` is the first failure.
struct Suite {
    name: &'static str,
    bound: usize,
    checked: usize,
    failures: usize,
    witness: Option<String>,
}

impl Suite {
    fn new(name: &'static str, bound: usize) -> Suite {
        Suite { name, bound, checked: 0, failures: 0, witness: None }
    }

    fn check(&mut self, ok: Result<bool, CoreError>, what: impl FnOnce() -> String) {
        self.checked += 1;
        let failure = match ok {
            Ok(true) => return,
            Ok(false) => what(),
            Err(e) => format!("{}: {e}", what()),
        };
        self.failures += 1;
        self.witness.get_or_insert(failure);
    }
}

fn sweep_birkhoff(k: usize) -> Suite {
    let mut s = Suite::new("birkhoff", k.min(6));
    for n in 0..=s.bound {
        for p in posets(n) {
            let d = FiniteDistLattice::from_poset(&p);
            s.check(Ok(isomorphic(&dual_poset(&d), &p)), || format!("poset {p:?}"));
        }
    }
    let max_lattice = (1usize << s.bound.min(3)).max(1);
    for m in 1..=max_lattice {
        for a in lattices(m) {
            if a.distributivity_witness().is_some() {
                continue;
            }
            let ok = canonicalize(&a).map(|(d, iso)| {
                d.len() == Ok(a.len())
                    && (0..a.len()).all(|x| (0..a.len()).all(|y| a.order().leq(x, y) == iso[x].is_subset(&iso[y])))
            });
            s.check(ok, || format!("lattice {:?}", a.order()));
        }
    }
    s
}

fn unary_operators(d: &FiniteDistLattice, mut f: impl FnMut(Operator)) {
    let space = OperatorSpace::new(d, 1, 1);
    let values = d.elements().expect("small lattice").to_vec();
    for_each_monotone_table(d.base(), &values, |t| {
        f(space.operator(t.to_vec()).expect("monotone tables are operators"));
        true
    });
}

fn sweep_operators(k: usize, property: Option<ModalProperty>) -> Suite {
    let mut s = Suite::new("operators", k.min(4));
    for n in 0..=s.bound {
        for p in posets(n) {
            let d = FiniteDistLattice::from_poset(&p);
            unary_operators(&d, |h| {
                let r = dualize_operator(&h);
                let shape = classify_operator(&h).map(|f| {
                    let rows = r.relation().rows();
                    let partial = rows.iter().all(|row| p.minimal(row).len() <= 1);
                    let total = rows.iter().all(|row| !row.is_empty());
                    dualize_relation(&r) == h && f.meet_preserving_nonempty == partial && f.top_preserving == total
                });
                let modal = match property {
                    Some(q) => check_correspondence(&h, q).map(|_| true),
                    None => check_all(&h).map(|_| true),
                };
                s.check(shape.and_then(|a| modal.map(|b| a && b)), || format!("operator {:?} on {p:?}", h.table()));
            });
        }
    }
    s
}

fn algebra_round_trips(r: &ResiduationAlgebra) -> Result<bool, CoreError> {
    let flags = classify_algebra(r)?;
    let c = gamma_from_residuals(r)?;
    Ok(c == gamma_from_multiplication(r)?
        && residuals_from_gamma(&c)? == *r
        && mu_from_residuals(r)? == r.multiplication_map()
        && c.is_coassociative()? == flags.associative
        && c.counits_exhaustive()? == r.units_exhaustive()?)
}

fn sweep_residuation(k: usize) -> Suite {
    let mut s = Suite::new("residuation", (k + 1).min(4));
    for n in 0..=3 {
        for p in posets(n) {
            let d = FiniteDistLattice::from_poset(&p);
            if d.len().map_or(true, |l| l > s.bound) {
                continue;
            }
            let mut algebras = Vec::new();
            let done = for_each_algebra(&d, |r| {
                algebras.push(r);
                true
            });
            if let Err(e) = done {
                s.check(Err(e), || format!("enumerating algebras on {p:?}"));
            }
            for r in algebras {
                s.check(algebra_round_trips(&r), || format!("{r:?}"));
            }
        }
    }
    s
}

fn sweep_monoids(k: usize) -> Suite {
    let mut s = Suite::new("monoids", k.min(3));
    for n in 1..=s.bound {
        for m in ordered_monoids(n) {
            let r = monoid_to_derivation(&m);
            s.check(derivation_to_monoid(&r).map(|back| back == m), || format!("{m:?}"));
        }
    }
    s
}

fn sweep_relmons(k: usize) -> Suite {
    let mut s = Suite::new("relational-monoids", k.min(3));
    for n in 1..=s.bound {
        for m in relational_monoids(n) {
            let ok = relmon_and_dual(&m).map_err(|e| match e {
                CliError::Core(e) => e,
                e => CoreError::Disagreement { what: "relational monoid", detail: e.to_string() },
            });
            let ok = ok.map(|(f, _, bad)| {
                bad.is_none()
                    && rescaba_to_relmon(&relmon_to_rescaba(&m)) == m
                    && match relmon_to_category(&m) {
                        Ok(c) => f.partial && f.local && category_to_relmon(&c) == m,
                        Err(_) => !(f.partial && f.local),
                    }
            });
            s.check(ok, || format!("{m:?}"));
        }
    }
    s
}

fn sweep_categories(k: usize) -> Suite {
    let (objects, morphisms) = (k.min(2), (k + 1).min(4));
    let mut s = Suite::new("categories", morphisms);
    for c in categories(objects, morphisms) {
        let m = category_to_relmon(&c);
        let ok = relmon_to_category(&m).and_then(|back| {
            Ok(back == c.canonical() && classify_rescaba(&relmon_to_rescaba(&m))?.categorical)
        });
        s.check(ok, || format!("{c:?}"));
    }
    s
}

pub(crate) fn sweep(k: usize, property: Option<&str>) -> Result<Outcome, CliError> {
    let property = property.map(ModalProperty::from_str).transpose()?;
    let suites = [
        sweep_birkhoff(k),
        sweep_operators(k, property),
        sweep_residuation(k),
        sweep_monoids(k),
        sweep_relmons(k),
        sweep_categories(k),
    ];
    let rows: Vec<Value> = suites
        .iter()
        .map(|s| json!({ "suite": s.name, "bound": s.bound, "checked": s.checked, "failures": s.failures }))
        .collect();
    let failure = suites.iter().find_map(|s| s.witness.as_ref().map(|w| format!("{}: {w}", s.name)));
    Ok(Outcome { details: Some(json!({ "suites": rows })), failure, ..Outcome::default() })
}
