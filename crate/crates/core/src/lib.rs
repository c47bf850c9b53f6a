//! LTLf synthesis under partial observability.
//!
//! The pipeline compiles an LTLf specification to explicit finite automata
//! ([`automata`]), turns them into a symbolic DFA game in one of three ways
//! ([`symbolic`]), and solves the resulting reachability game over decision
//! diagrams ([`bdd`], [`game`]). [`bench`] generates the benchmark families.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod automata;
pub mod bench;
pub mod bdd;
pub mod error;
pub mod game;
pub mod limits;
pub mod symbolic;
pub mod ltlf;

pub use error::Error;
pub use limits::Limits;
