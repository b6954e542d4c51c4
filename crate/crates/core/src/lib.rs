//! Decision procedures for finitely generated wreath products and free
//! solvable groups: word problem, conjugacy problem, power problem, and
//! cyclic subgroup/submonoid membership, together with brute-force oracles
//! for cross-validation at desk scale.
//!
//! The central abstraction is [`Group`], a closed family of concrete groups
//! (finitely generated abelian groups, the solvable Baumslag-Solitar groups
//! BS(1,q), wreath products of two member groups, and free solvable groups
//! via the Magnus embedding). Every group evaluates [`Word`]s over its
//! generator alphabet into canonical [`Element`] values; all decision
//! procedures work on canonical elements.

pub mod arith;
pub mod abelian;
pub mod bs;
pub mod conjugacy;
pub mod dsl;
pub mod error;
pub mod group;
pub mod oracle;
pub mod power;
pub mod selftest;
pub mod solvable;
pub mod word;
pub mod wreath;

pub use error::Error;
pub use group::{ConjugacyAnswer, Element, Group, Order, PowerAnswer};
pub use word::{Letter, Word};

/// Default smoothness bound for torsion orders, overridable per handle.
pub const DEFAULT_BETA: u32 = 64;

/// Default cap for Cayley-ball enumeration.
pub const DEFAULT_BALL_CAP: usize = 8;
