//! Exact, finite-scale dualities.
//!
//! Finite posets and finite distributive lattices (in downset form), join
//! operators and their dual order relations, residuation algebras with their
//! comultiplications and multiplications, ordered monoids, syntactic monoids of
//! regular languages, and relational monoids versus small categories.
//!
//! Everything is `no_std` with `alloc`; all values are immutable once built.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bits;
pub mod catdual;
pub mod correspondence;
pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod monoid;
pub mod operator;
pub mod order;
pub mod reglang;
pub mod residuation;
pub mod tensor;

pub use bits::BitSet;
pub use error::{CoreError, Result};
pub use lattice::{AbstractLattice, FiniteDistLattice, LatticeHom, LatticeMap};
pub use order::{DownSet, MonotoneMap, OrderRelation, Poset};
