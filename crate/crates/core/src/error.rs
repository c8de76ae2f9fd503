use alloc::string::String;

pub type Result<T, E = CoreError> = core::result::Result<T, E>;

/// Everything that can go wrong in the core. Variants carry enough of a
/// witness to reproduce the failure by hand.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoreError {
    #[error("index {index} out of range (size {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("order is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("order is not antisymmetric: {0} <= {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("order is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),

    #[error("set is not a downset: {below} <= {member} is missing")]
    NotDownset { member: usize, below: usize },
    #[error("map is not monotone: {x} <= {y} but images are not ordered")]
    NotMonotone { x: usize, y: usize },

    #[error("posets do not match")]
    PosetMismatch,
    #[error("lattices do not match")]
    LatticeMismatch,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("not a lattice: elements {0} and {1} have no {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("not distributive: x={0}, y={1}, z={2}")]
    NotDistributive(usize, usize, usize),

    #[error("map does not preserve {what}: {detail}")]
    NotPreserving { what: &'static str, detail: String },

    #[error("relation is not stable: ({0}, {1}) forces a missing pair")]
    UnstableRelation(usize, usize),

    #[error("{what} too large to enumerate ({size} elements)")]
    TooLarge { what: &'static str, size: usize },

    #[error("equivalent characterizations disagree ({what}): {detail}")]
    Disagreement { what: &'static str, detail: String },

    #[error("not a derivation algebra: {0}")]
    NotDerivation(String),
    #[error("residuation algebra has no unit")]
    NoUnit,
    #[error("invalid residuation algebra: {0}")]
    InvalidResiduation(String),

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("invalid relational morphism: {0}")]
    InvalidRelMorphism(String),
    #[error("invalid relational monoid: {0}")]
    InvalidRelMonoid(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("not functorial: {0}")]
    NotFunctorial(String),

    #[error("unknown {what}: {name:?}")]
    Unknown { what: &'static str, name: String },

    #[error("invalid automaton: {0}")]
    InvalidDfa(String),
    #[error("regular expression error at {pos}: {msg}")]
    Regex { pos: usize, msg: String },
}
