//! Regular languages through their syntactic monoids.
//!
//! Words are slices of letter indices into an alphabet. Regular expressions
//! compile to minimal DFAs (Thompson, subset construction, Moore
//! refinement); the transition monoid of the minimal DFA is the syntactic
//! monoid, and languages are handled as subsets of it.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::error::{CoreError, Result};
use crate::monoid::{monoid_to_derivation, OrderedMonoid};
use crate::order::{DownSet, Poset};
use crate::residuation::{residuation_ideal, subalgebra, ResiduationAlgebra, Subalgebra};
use crate::tensor::TensorElement;

/// Named expressions over `{a, b}` used by tests and sweeps.
pub const CORPUS: &[(&str, &str)] = &[
    ("all", "(a|b)*"),
    ("empty", "∅"),
    ("epsilon", "ε"),
    ("ab-star", "(ab)*"),
    ("a-star-b-star", "a*b*"),
    ("contains-aba", "(a|b)*aba(a|b)*"),
    ("starts-a", "a(a|b)*"),
    ("ends-b", "(a|b)*b"),
    ("even-a", "(b*ab*a)*b*"),
    ("one-a", "b*ab*"),
    ("second-last-a", "(a|b)*a(a|b)"),
    ("aa-or-b-star", "(aa|b)*"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regex {
    Empty,
    Epsilon,
    Letter(usize),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a [char],
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(CoreError::Regex { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn union(&mut self) -> Result<Regex> {
        let mut r = self.concat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            r = Regex::Union(Box::new(r), Box::new(self.concat()?));
        }
        Ok(r)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut r: Option<Regex> = None;
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let x = self.repeat()?;
            r = Some(match r {
                None => x,
                Some(l) => Regex::Concat(Box::new(l), Box::new(x)),
            });
        }
        Ok(r.unwrap_or(Regex::Epsilon))
    }

    fn repeat(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        while let Some(c) = self.peek() {
            r = match c {
                '*' => Regex::Star(Box::new(r)),
                '+' => Regex::Concat(Box::new(r.clone()), Box::new(Regex::Star(Box::new(r)))),
                '?' => Regex::Union(Box::new(r), Box::new(Regex::Epsilon)),
                _ => break,
            };
            self.pos += 1;
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex> {
        let Some(c) = self.peek() else { return self.err("unexpected end") };
        self.pos += 1;
        match c {
            '(' => {
                let r = self.union()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(r)
            }
            'ε' => Ok(Regex::Epsilon),
            '∅' => Ok(Regex::Empty),
            _ => match self.alphabet.iter().position(|&a| a == c) {
                Some(i) => Ok(Regex::Letter(i)),
                None => {
                    self.pos -= 1;
                    self.err("not a letter of the alphabet")
                }
            },
        }
    }
}

impl Regex {
    /// Grammar: `|`, juxtaposition, postfix `* + ?`, parentheses, `ε`, `∅`
    /// and the letters of `alphabet`. Whitespace is ignored.
    pub fn parse(src: &str, alphabet: &[char]) -> Result<Regex> {
        let mut p = Parser { chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, alphabet };
        let r = p.union()?;
        if p.pos != p.chars.len() {
            return p.err("unbalanced ')'");
        }
        Ok(r)
    }

    /// Direct membership test by end positions; used as an oracle.
    pub fn matches(&self, word: &[usize]) -> bool {
        self.ends(word, &BitSet::singleton(0)).contains(word.len())
    }

    fn ends(&self, w: &[usize], starts: &BitSet) -> BitSet {
        match self {
            Regex::Empty => BitSet::new(),
            Regex::Epsilon => starts.clone(),
            Regex::Letter(a) => starts.iter().filter(|&i| i < w.len() && w[i] == *a).map(|i| i + 1).collect(),
            Regex::Concat(l, r) => r.ends(w, &l.ends(w, starts)),
            Regex::Union(l, r) => l.ends(w, starts).union(&r.ends(w, starts)),
            Regex::Star(r) => {
                let mut acc = starts.clone();
                loop {
                    let next = acc.union(&r.ends(w, &acc));
                    if next == acc {
                        return acc;
                    }
                    acc = next;
                }
            }
        }
    }
}

/// Thompson automaton: `eps[q]` and `step[q] = (letter, target)`.
struct Nfa {
    eps: Vec<Vec<usize>>,
    step: Vec<Option<(usize, usize)>>,
}

impl Nfa {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.step.push(None);
        self.eps.len() - 1
    }

    /// Returns `(start, accept)`.
    fn build(&mut self, r: &Regex) -> (usize, usize) {
        let s = self.state();
        let t = self.state();
        match r {
            Regex::Empty => {}
            Regex::Epsilon => self.eps[s].push(t),
            Regex::Letter(a) => self.step[s] = Some((*a, t)),
            Regex::Concat(l, r) => {
                let (ls, lt) = self.build(l);
                let (rs, rt) = self.build(r);
                self.eps[s].push(ls);
                self.eps[lt].push(rs);
                self.eps[rt].push(t);
            }
            Regex::Union(l, r) => {
                for x in [l, r] {
                    let (xs, xt) = self.build(x);
                    self.eps[s].push(xs);
                    self.eps[xt].push(t);
                }
            }
            Regex::Star(x) => {
                let (xs, xt) = self.build(x);
                self.eps[s].extend([xs, t]);
                self.eps[xt].extend([xs, t]);
            }
        }
        (s, t)
    }

    fn closure(&self, set: &BitSet) -> BitSet {
        let mut acc = set.clone();
        let mut stack: Vec<usize> = set.iter().collect();
        while let Some(q) = stack.pop() {
            for &r in &self.eps[q] {
                if acc.insert(r) {
                    stack.push(r);
                }
            }
        }
        acc
    }
}

/// A complete deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<char>,
    delta: Vec<usize>,
    initial: usize,
    accepting: BitSet,
}

impl Dfa {
    /// `delta[q * |alphabet| + a]` is the successor of `q` under letter `a`.
    pub fn new(alphabet: Vec<char>, states: usize, delta: Vec<usize>, initial: usize, accepting: BitSet) -> Result<Dfa> {
        let k = alphabet.len();
        if states == 0 {
            return Err(CoreError::InvalidDfa("no states".into()));
        }
        if delta.len() != states * k {
            return Err(CoreError::InvalidDfa(format!("expected {} transitions, found {}", states * k, delta.len())));
        }
        if let Some(&q) = delta.iter().find(|&&q| q >= states) {
            return Err(CoreError::InvalidDfa(format!("transition to missing state {q}")));
        }
        if initial >= states || accepting.iter().any(|q| q >= states) {
            return Err(CoreError::InvalidDfa("state index out of range".into()));
        }
        let distinct: BTreeSet<char> = alphabet.iter().copied().collect();
        if distinct.len() != k {
            return Err(CoreError::InvalidDfa("repeated letter".into()));
        }
        Ok(Dfa { alphabet, delta, initial, accepting })
    }

    pub fn from_regex(src: &str, alphabet: &[char]) -> Result<Dfa> {
        let r = Regex::parse(src, alphabet)?;
        let mut nfa = Nfa { eps: Vec::new(), step: Vec::new() };
        let (s, t) = nfa.build(&r);
        let k = alphabet.len();
        let start = nfa.closure(&BitSet::singleton(s));
        let mut index: BTreeMap<BitSet, usize> = BTreeMap::new();
        let mut sets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            for a in 0..k {
                let moved: BitSet =
                    sets[i].iter().filter_map(|q| nfa.step[q].filter(|&(b, _)| b == a).map(|(_, r)| r)).collect();
                let next = nfa.closure(&moved);
                let j = *index.entry(next.clone()).or_insert_with(|| {
                    sets.push(next);
                    sets.len() - 1
                });
                delta.push(j);
            }
            i += 1;
        }
        let accepting = (0..sets.len()).filter(|&i| sets[i].contains(t)).collect();
        Ok(Dfa::new(alphabet.to_vec(), sets.len(), delta, 0, accepting)?.minimize())
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.delta.len() / self.alphabet.len().max(1)
    }

    pub fn delta(&self, q: usize, a: usize) -> usize {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn transitions(&self) -> &[usize] {
        &self.delta
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> &BitSet {
        &self.accepting
    }

    pub fn run(&self, q: usize, word: &[usize]) -> usize {
        word.iter().fold(q, |q, &a| self.delta(q, a))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting.contains(self.run(self.initial, word))
    }

    /// Letter indices of a string over the alphabet.
    pub fn word(&self, s: &str) -> Result<Vec<usize>> {
        s.chars()
            .enumerate()
            .map(|(pos, c)| {
                self.alphabet
                    .iter()
                    .position(|&a| a == c)
                    .ok_or(CoreError::Regex { pos, msg: format!("{c:?} is not a letter") })
            })
            .collect()
    }

    pub fn spell(&self, word: &[usize]) -> String {
        word.iter().map(|&a| self.alphabet[a]).collect()
    }

    /// Removes unreachable states, merges equivalent ones and numbers the
    /// result in breadth-first order from the initial state.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let n = self.states();
        let mut class: Vec<usize> = (0..n).map(|q| self.accepting.contains(q) as usize).collect();
        loop {
            let mut ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let next: Vec<usize> = (0..n)
                .map(|q| {
                    let sig: Vec<usize> = core::iter::once(class[q]).chain((0..k).map(|a| class[self.delta(q, a)])).collect();
                    let len = ids.len();
                    *ids.entry(sig).or_insert(len)
                })
                .collect();
            let stable = ids.len() == class.iter().collect::<BTreeSet<_>>().len();
            class = next;
            if stable {
                break;
            }
        }
        // renumber reachable classes breadth first
        let mut order: BTreeMap<usize, usize> = BTreeMap::new();
        let mut rep: Vec<usize> = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        order.insert(class[self.initial], 0);
        rep.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for a in 0..k {
                let r = self.delta(q, a);
                if !order.contains_key(&class[r]) {
                    order.insert(class[r], rep.len());
                    rep.push(r);
                    queue.push_back(r);
                }
            }
        }
        let (order, class) = (&order, &class);
        let delta = rep.iter().flat_map(|&q| (0..k).map(move |a| order[&class[self.delta(q, a)]])).collect();
        let accepting = (0..rep.len()).filter(|&i| self.accepting.contains(rep[i])).collect();
        Dfa { alphabet: self.alphabet.clone(), delta, initial: 0, accepting }
    }

    /// Same shape up to renaming states, for automata without unreachable states.
    pub fn is_isomorphic(&self, other: &Dfa) -> bool {
        let k = self.alphabet.len();
        if self.alphabet != other.alphabet || self.states() != other.states() {
            return false;
        }
        let mut map = vec![usize::MAX; self.states()];
        let mut queue = VecDeque::from([(self.initial, other.initial)]);
        map[self.initial] = other.initial;
        while let Some((p, q)) = queue.pop_front() {
            if self.accepting.contains(p) != other.accepting.contains(q) {
                return false;
            }
            for a in 0..k {
                let (p2, q2) = (self.delta(p, a), other.delta(q, a));
                if map[p2] == usize::MAX {
                    map[p2] = q2;
                    queue.push_back((p2, q2));
                } else if map[p2] != q2 {
                    return false;
                }
            }
        }
        let hit: BTreeSet<usize> = map.iter().copied().collect();
        !hit.contains(&usize::MAX) && hit.len() == map.len()
    }
}

/// The transition monoid of a minimal automaton. Element `i` acts on states
/// by `functions()[i]`; `uv` is `u` first, then `v`.
#[derive(Clone, Debug)]
pub struct SyntacticMonoid {
    dfa: Dfa,
    functions: Vec<Vec<usize>>,
    witnesses: Vec<Vec<usize>>,
    mult: Vec<usize>,
    image: BitSet,
}

/// Elements of `Syn_L` beyond this are refused.
pub const MAX_SYNTACTIC: usize = 4096;

pub fn syntactic_monoid(d: &Dfa) -> Result<SyntacticMonoid> {
    let dfa = d.minimize();
    let n = dfa.states();
    let k = dfa.alphabet.len();
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let id: Vec<usize> = (0..n).collect();
    index.insert(id.clone(), 0);
    let mut functions = vec![id];
    let mut witnesses = vec![Vec::new()];
    let mut i = 0;
    while i < functions.len() {
        for a in 0..k {
            let f: Vec<usize> = functions[i].iter().map(|&q| dfa.delta(q, a)).collect();
            if !index.contains_key(&f) {
                if functions.len() >= MAX_SYNTACTIC {
                    return Err(CoreError::TooLarge { what: "syntactic monoid", size: MAX_SYNTACTIC });
                }
                index.insert(f.clone(), functions.len());
                let mut w = witnesses[i].clone();
                w.push(a);
                functions.push(f);
                witnesses.push(w);
            }
        }
        i += 1;
    }
    let m = functions.len();
    let mut mult = Vec::with_capacity(m * m);
    for f in &functions {
        for g in &functions {
            let fg: Vec<usize> = f.iter().map(|&q| g[q]).collect();
            mult.push(index[&fg]);
        }
    }
    let image = (0..m).filter(|&s| dfa.accepting.contains(functions[s][dfa.initial])).collect();
    Ok(SyntacticMonoid { dfa, functions, witnesses, mult, image })
}

impl SyntacticMonoid {
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn functions(&self) -> &[Vec<usize>] {
        &self.functions
    }

    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.mult[s * self.len() + t]
    }

    pub fn table(&self) -> &[usize] {
        &self.mult
    }

    /// The class of the empty word.
    pub fn unit(&self) -> usize {
        0
    }

    /// `{[v] | v ∈ L}`.
    pub fn image(&self) -> &BitSet {
        &self.image
    }

    /// A shortest word in the class, least in length-lexicographic order.
    pub fn witness(&self, s: usize) -> &[usize] {
        &self.witnesses[s]
    }

    pub fn class_of(&self, word: &[usize]) -> usize {
        word.iter().fold(self.unit(), |s, &a| self.mul(s, self.letter(a)))
    }

    /// The class of a one-letter word.
    pub fn letter(&self, a: usize) -> usize {
        let f: Vec<usize> = (0..self.dfa.states()).map(|q| self.dfa.delta(q, a)).collect();
        self.functions.iter().position(|g| *g == f).expect("letters generate the monoid")
    }

    /// The discrete monoid.
    pub fn monoid(&self) -> OrderedMonoid {
        OrderedMonoid::discrete(self.len(), self.mult.clone(), 0).expect("transition monoid")
    }

    /// `s <= t` iff every context `x·-·y` sending `t` into `L` sends `s` there too.
    pub fn syntactic_order(&self) -> Poset {
        let m = self.len();
        let contexts: Vec<BitSet> = (0..m)
            .map(|t| {
                (0..m * m).filter(|&c| self.image.contains(self.mul(self.mul(c / m, t), c % m))).collect()
            })
            .collect();
        let leq: Vec<Vec<bool>> = (0..m).map(|s| (0..m).map(|t| contexts[t].is_subset(&contexts[s])).collect()).collect();
        Poset::from_matrix(&leq).expect("the syntactic preorder of a minimal monoid is antisymmetric")
    }

    pub fn ordered_monoid(&self) -> OrderedMonoid {
        OrderedMonoid::new(self.syntactic_order(), self.mult.clone(), 0).expect("multiplication is monotone")
    }

    fn check(&self, x: &BitSet) -> Result<()> {
        match x.iter().find(|&s| s >= self.len()) {
            Some(s) => Err(CoreError::IndexOutOfRange { index: s, bound: self.len() }),
            None => Ok(()),
        }
    }

    /// `K\L = {v | Kv ⊆ L}` on subsets of the monoid.
    pub fn left_residual(&self, k: &BitSet, l: &BitSet) -> Result<BitSet> {
        self.check(k)?;
        self.check(l)?;
        Ok((0..self.len()).filter(|&v| k.iter().all(|u| l.contains(self.mul(u, v)))).collect())
    }

    /// `L/K = {v | vK ⊆ L}`.
    pub fn right_residual(&self, l: &BitSet, k: &BitSet) -> Result<BitSet> {
        self.check(k)?;
        self.check(l)?;
        Ok((0..self.len()).filter(|&v| k.iter().all(|u| l.contains(self.mul(v, u)))).collect())
    }

    /// Membership of a word in the language recognized by the subset `x`.
    pub fn recognizes(&self, x: &BitSet, word: &[usize]) -> bool {
        x.contains(self.class_of(word))
    }
}

/// `℘(Syn_L)` as a residuation algebra.
pub fn powerset_algebra(m: &SyntacticMonoid) -> ResiduationAlgebra {
    monoid_to_derivation(&m.monoid())
}

/// The residuation ideal generated by `L` inside `℘(Syn_L)`.
#[derive(Clone, Debug)]
pub struct LanguageIdeal {
    pub monoid: SyntacticMonoid,
    pub algebra: ResiduationAlgebra,
    pub elements: Vec<DownSet>,
    pub subalgebra: Subalgebra,
}

/// Closure by [`residuation_ideal`], cross-checked against the lattice
/// generated by the two-sided quotients `{s | xsy ∈ L}`.
pub fn residuation_ideal_of(d: &Dfa) -> Result<LanguageIdeal> {
    let monoid = syntactic_monoid(d)?;
    let algebra = powerset_algebra(&monoid);
    let l = DownSet::from_bits_unchecked(monoid.image.clone());
    let elements = residuation_ideal(&algebra, &[l])?;
    let direct = quotient_lattice(&monoid);
    if direct != elements {
        return Err(CoreError::Disagreement {
            what: "residuation ideal of a language",
            detail: format!("closure has {} elements, quotient lattice {}", elements.len(), direct.len()),
        });
    }
    let subalgebra = subalgebra(&algebra, &elements)?;
    Ok(LanguageIdeal { monoid, algebra, elements, subalgebra })
}

fn quotient_lattice(m: &SyntacticMonoid) -> Vec<DownSet> {
    let n = m.len();
    let full = BitSet::full(n);
    let mut set: BTreeSet<BitSet> = [BitSet::new(), full].into_iter().collect();
    for x in 0..n {
        for y in 0..n {
            set.insert((0..n).filter(|&s| m.image.contains(m.mul(m.mul(x, s), y))).collect());
        }
    }
    // close under intersections, then unions
    for op in [BitSet::intersection as fn(&BitSet, &BitSet) -> BitSet, BitSet::union] {
        loop {
            let items: Vec<BitSet> = set.iter().cloned().collect();
            let before = set.len();
            for (i, a) in items.iter().enumerate() {
                for b in &items[i + 1..] {
                    set.insert(op(a, b));
                }
            }
            if set.len() == before {
                break;
            }
        }
    }
    set.into_iter().map(DownSet::from_bits_unchecked).collect()
}

/// `γ(L) = ⋁_s {s} ⊗ ({s}\L)` over `℘(Syn_L)`. Must equal both the adjoint
/// `{(s, t) | st ∈ L}` and `{([v], [w]) | vw ∈ L}` found by running the
/// automaton on witnesses.
pub fn gamma_of_language(d: &Dfa) -> Result<TensorElement> {
    let m = syntactic_monoid(d)?;
    let n = m.len();
    let mut formula = BitSet::new();
    for s in 0..n {
        for t in m.left_residual(&BitSet::singleton(s), &m.image)?.iter() {
            formula.insert(s * n + t);
        }
    }
    let mut words = BitSet::new();
    for s in 0..n {
        for t in 0..n {
            let mut vw = m.witness(s).to_vec();
            vw.extend_from_slice(m.witness(t));
            if m.dfa.accepts(&vw) {
                words.insert(s * n + t);
            }
        }
    }
    // the adjoint of multiplication on ℘(Syn_L), read off prime pairs
    let algebra = powerset_algebra(&m);
    let adjoint: BitSet = (0..n * n).filter(|&c| algebra.mu(c / n, c % n).is_subset(&m.image)).collect();
    if formula != words || formula != adjoint {
        return Err(CoreError::Disagreement {
            what: "comultiplication of a language",
            detail: format!("formula {formula:?}, words {words:?}, adjoint {adjoint:?}"),
        });
    }
    Ok(TensorElement::from_downset(2, DownSet::from_bits_unchecked(formula)))
}

/// All words of length at most `max` in length-lexicographic order.
pub fn words_up_to(letters: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..letters {
                let mut v: Vec<usize> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const AB: [char; 2] = ['a', 'b'];

    #[test]
    fn parse_errors() {
        assert!(matches!(Regex::parse("(ab", &AB), Err(CoreError::Regex { pos: 3, .. })));
        assert!(matches!(Regex::parse("ac", &AB), Err(CoreError::Regex { pos: 1, .. })));
        assert!(matches!(Regex::parse("a)", &AB), Err(CoreError::Regex { .. })));
        assert_eq!(Regex::parse("", &AB).unwrap(), Regex::Epsilon);
    }

    #[test]
    fn all_words_give_the_trivial_monoid() {
        let d = Dfa::from_regex("(a|b)*", &AB).unwrap();
        assert_eq!(d.states(), 1);
        let m = syntactic_monoid(&d).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(residuation_ideal_of(&d).unwrap().elements.len(), 2);
    }

    #[test]
    fn even_length_over_one_letter_is_a_group() {
        let d = Dfa::from_regex("(aa)*", &['a']).unwrap();
        let m = syntactic_monoid(&d).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.table(), [0, 1, 1, 0]);
    }

    #[test]
    fn quotient_of_ab_star() {
        let d = Dfa::from_regex("(ab)*", &AB).unwrap();
        let m = syntactic_monoid(&d).unwrap();
        let a = BitSet::singleton(m.class_of(&[0]));
        let q = m.left_residual(&a, m.image()).unwrap();
        let b_ab = Regex::parse("b(ab)*", &AB).unwrap();
        for w in words_up_to(2, 8) {
            assert_eq!(m.recognizes(&q, &w), b_ab.matches(&w), "{w:?}");
        }
        // {ε}\L = L
        assert_eq!(m.left_residual(&BitSet::singleton(m.unit()), m.image()).unwrap(), *m.image());
    }

    #[test]
    fn minimize_drops_unreachable_states() {
        // state 2 is unreachable, states 0 and 1 are equivalent
        let d = Dfa::new(vec!['a'], 3, vec![1, 0, 2], 0, BitSet::from_word(0b111)).unwrap();
        let min = d.minimize();
        assert_eq!(min.states(), 1);
        assert!(min.is_isomorphic(&min.minimize()));
        assert!(Dfa::new(vec!['a'], 1, vec![1], 0, BitSet::new()).is_err());
    }
}
