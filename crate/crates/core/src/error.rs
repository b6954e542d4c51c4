//! Error type shared by all modules.

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A number that had to be beta-smooth has a prime factor above beta.
    #[error("{value} is not {beta}-smooth (cofactor {cofactor} after trial division)")]
    NotSmooth {
        value: BigInt,
        beta: u32,
        cofactor: BigInt,
    },

    /// The operation is not available for this group.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// `csmmp_gadget` needs a non-commuting pair in the bottom group.
    #[error("the given pair of elements commutes")]
    CommutingPair,

    /// A closed-form oracle was called on the wrong group.
    #[error("operation is only defined on {expected}")]
    WrongGroup { expected: &'static str },

    /// Ball enumeration radius above the configured cap.
    #[error("ball radius {radius} exceeds cap {cap}")]
    CapExceeded { radius: usize, cap: usize },

    /// A support key does not lie in any of the given cosets.
    #[error("support key outside the given coset representatives")]
    KeyOutsideCosets,

    /// A word used a generator index outside the group's alphabet.
    #[error("generator index {index} out of range (alphabet size {alphabet})")]
    UnknownGenerator { index: usize, alphabet: usize },

    /// A word used a generator name the group does not define.
    #[error("unknown generator name `{0}`")]
    UnknownName(String),

    /// A word literal could not be parsed.
    #[error("word syntax error: {0}")]
    WordSyntax(String),

    /// Group construction rejected.
    #[error("invalid group: {0}")]
    InvalidGroup(String),
}
