//! Generalized approximation spaces: a finite universe with an arbitrary
//! binary relation, mappings between such spaces, the relations they induce,
//! and rough approximations. [`propcheck`] sweeps small universes to confirm
//! the algebraic laws connecting these pieces and to find counterexamples to
//! the ones that do not hold.

pub mod approx;
pub mod error;
pub mod mapping;
pub mod propcheck;
pub mod relation;
pub mod relmap;

#[cfg(test)]
mod fixtures;

pub use error::{Error, Result};
pub use mapping::{FiniteMapping, NeighborhoodKind, NeighborhoodOperator, Side};
pub use relation::{BinaryRelation, Subset, Universe};
