//! Eventual commutativity and nilpotency for algebras satisfying a two-term
//! multilinear identity `x_1 ⋯ x_n = q · x_{σ(1)} ⋯ x_{σ(n)}`.

pub mod crosscheck;
pub mod error;
pub mod group;
pub mod identity;
pub mod oracle;
pub mod perm;
pub mod saturation;

pub use error::{Error, Result};
pub use identity::TwoTermIdentity;
pub use perm::Permutation;
pub mod report;
pub mod verify;
