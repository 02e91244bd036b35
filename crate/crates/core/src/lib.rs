//! Exact computation in the Hopf algebras of quasisymmetric functions and
//! shuffles: composition combinatorics, characters and infinitesimal
//! characters, shuffle bases and quasisymmetric power sums, universal maps,
//! and small graph and poset Hopf algebras.

pub mod character;
pub mod composition;
pub mod constructions;
pub mod demos;
pub mod element;
pub mod error;
pub mod format;
pub mod functional;
pub mod hopf;
pub mod polynomial;
pub mod qps;
pub mod rational;
pub mod registry;
pub mod universal;

pub use composition::Composition;
pub use element::{Basis, Element, TensorElement};
pub use error::{Error, Result};
pub use functional::Functional;
pub use hopf::{HopfProvider, QSymHopf, ShHopf, Violation};
pub use rational::Rational;
