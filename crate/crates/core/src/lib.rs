//! Weighted random staircase tableaux.
//!
//! Exact combinatorics for staircase tableaux with symbol weights: the tableau
//! model itself, the generalized Eulerian triangle `v_{a,b}(n,k)` that governs
//! the number of diagonal `α`s, brute-force enumeration oracles, an exact
//! sequential sampler, the exact laws of the statistics of a random tableau,
//! and the `u`/`q` box filling used for exclusion-process weights.
//!
//! The crate is `no_std` and only needs `alloc`. All laws are computed in
//! exact big-rational arithmetic; floating point appears only in root
//! isolation and normal-approximation diagnostics.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod asep;
pub mod distributions;
pub mod enumerate;
mod error;
pub mod eulerian;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod sampler;
pub mod tableau;

pub use error::{Error, Result};
pub use rational::{ExtRational, Rational};
pub use tableau::{Symbol, SymbolCounts, Tableau};
