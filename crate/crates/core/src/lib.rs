//! Finite invertible automata acting on rooted trees.
//!
//! The crate covers the algebra of Mealy automata (dual, product, inverse,
//! minimization), the groups they generate (restriction, equality of tree
//! automorphisms), contraction and the nucleus, a battery of structural checks
//! (nuclearity, smoothness, recurrence, open set condition, level quotients),
//! Schreier-graph towers and tile partitions, and a registry of worked examples.
//!
//! It is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod analysis;
pub mod automaton;
pub mod error;
pub mod examples;
pub mod graph;
pub mod group;
pub mod recursion;
pub mod schreier;

pub use automaton::{Automaton, Letter, Run, SquareTile, StateId};
pub use error::{Error, Result};
pub use graph::LabeledGraph;
pub use group::{Gen, Group, GroupWord, WreathDecomposition};
