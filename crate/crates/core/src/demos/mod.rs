//! Graphs and posets as combinatorial Hopf algebras.

pub mod graph;
pub mod poset;
