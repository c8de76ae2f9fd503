//! Growable bit sets over dense element indices.
//!
//! Up to 128 elements live inline; larger universes spill to the heap. The word
//! vector is kept trimmed (no trailing zero words), so equality, hashing and
//! ordering do not depend on how a set was built.

use core::cmp::Ordering;
use core::fmt;

use smallvec::SmallVec;

type Words = SmallVec<[u64; 2]>;

/// A finite set of `usize` indices.
///
/// `Ord` compares sets as binary numbers (bit `i` has weight `2^i`). This is a
/// linear extension of inclusion: `a ⊆ b` implies `a <= b`.
#[derive(Default, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Words,
}

impl Clone for BitSet {
    #[inline]
    fn clone(&self) -> Self {
        BitSet { words: SmallVec::from_slice(&self.words) }
    }
}

#[inline]
fn split(i: usize) -> (usize, u64) {
    (i / 64, 1u64 << (i % 64))
}

impl BitSet {
    pub const fn new() -> Self {
        BitSet { words: SmallVec::new_const() }
    }

    pub fn singleton(i: usize) -> Self {
        let mut s = Self::new();
        s.insert(i);
        s
    }

    /// `{0, .., n-1}`
    pub fn full(n: usize) -> Self {
        let mut words: Words = SmallVec::new();
        words.resize(n / 64, u64::MAX);
        if n % 64 != 0 {
            words.push((1u64 << (n % 64)) - 1);
        }
        BitSet { words }
    }

    pub fn from_word(w: u64) -> Self {
        let mut s = BitSet::new();
        if w != 0 {
            s.words.push(w);
        }
        s
    }

    /// Low 64 bits; the rest is ignored.
    pub fn low_word(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        let (w, b) = split(i);
        self.words.get(w).is_some_and(|x| x & b != 0)
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = split(i);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    pub fn remove(&mut self, i: usize) -> bool {
        let (w, b) = split(i);
        match self.words.get_mut(w) {
            Some(x) if *x & b != 0 => {
                *x &= !b;
                self.trim();
                true
            }
            _ => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// One past the largest member, or 0.
    pub fn bound(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(w) => (self.words.len() - 1) * 64 + (64 - w.leading_zeros() as usize),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        self.words.truncate(other.words.len());
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= *b;
        }
        self.trim();
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !*b;
        }
        self.trim();
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut r = self.clone();
        r.intersect_with(other);
        r
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        let mut r = self.clone();
        r.difference_with(other);
        r
    }

    /// Complement inside `{0, .., n-1}`.
    pub fn complement(&self, n: usize) -> BitSet {
        BitSet::full(n).difference(self)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        if self.words.len() > other.words.len() {
            return false;
        }
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        !self.is_disjoint(other)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, idx: 0, cur: self.words.first().copied().unwrap_or(0) }
    }
}

impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for BitSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = BitSet::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl Extend<usize> for BitSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for i in iter {
            self.insert(i);
        }
    }
}

impl<'a> IntoIterator for &'a BitSet {
    type Item = usize;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + t);
            }
            self.idx += 1;
            self.cur = *self.words.get(self.idx)?;
        }
    }
}
