//! Word problems, Cayley-graph geometry and automatic structures for the
//! Baumslag-Solitar semigroups `S(m,n) = Sg<x,y | yx^m = x^n y>`.
//!
//! * [`semigroup`]: normal forms and multiplication in `S(m,n)`.
//! * [`group`]: the HNN normal form of `G(m,n)`, the equality oracle used everywhere else.
//! * [`geometry`]: exact-rational plane embedding of a branch, cotangents,
//!   critical horizontal distances and bounded Cayley-graph distance.
//! * [`automata`]: finite automata, padded pair languages and composition.
//! * [`synth`]: construction and verification of right- and left-automatic
//!   structures for finitely generated subsemigroups.
//! * [`counterexample`]: checks for the `m = n` non-automatic subsemigroup.

pub mod automata;
pub mod counterexample;
pub mod error;
pub mod geometry;
pub mod group;
pub mod semigroup;
pub mod synth;

pub use error::{Error, Result};
pub use semigroup::{BsParams, NormalForm, SgWord};

/// Default cap on automaton states, ball sizes and graph searches.
pub const DEFAULT_STATE_BUDGET: usize = 200_000;
