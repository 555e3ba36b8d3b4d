//! Exact computation of the rank invariant `k(O)` of nilpotent orbits in the
//! even part of classical Lie superalgebras, together with the parabolic and
//! character machinery built on top of it.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod characters;
pub mod error;
pub mod invariants;
pub mod label;
pub mod linalg;
pub mod parabolic;
pub mod partition;

pub use error::{Error, Result};
pub use label::{OrbitLabel, VeryEvenTag};
pub use partition::Partition;
