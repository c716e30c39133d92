//! Combinatorics on words: divisibility, powers and height.
//!
//! Exact deciders and witnesses for n-divisibility, power detection,
//! Dilworth colorings of tail posets with their selector statistics,
//! height decompositions with the fragment-excision procedure, and exact
//! evaluation of the associated closed-form bounds. Everything here is
//! pure and `no_std` (with `alloc`); IO, parallelism and the CLI live in
//! the `shirshov` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod lcp;

pub mod bounds;
pub mod dilworth;
pub mod divisibility;
pub mod height;
pub mod periodicity;
pub mod search;
pub mod word;

pub use error::{CoreError, CoreResult};
pub use lcp::LcpTable;
pub use word::{compare, compare_letters, k_tail, leftmost_first, Alphabet, LexOutcome, SelectorEntry, TailRef, Theta, Word};
