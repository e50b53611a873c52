//! Exact-arithmetic Poisson cohomology on polynomial bivectors.

pub mod algebra;
pub mod assembly;
pub mod complexes;
pub mod error;
pub mod io;
pub mod linalg;
pub mod models;
pub mod multivec;
pub mod poisson;

pub use algebra::{Monomial, Polynomial, Scalar, WeightVector};
pub use error::{Error, Result};
pub use multivec::{MultiIndex, Multivector};
pub use poisson::PoissonStructure;

// Worked examples and property tests share the unit-test binary so they
// always run ahead of the acceptance target.
#[cfg(test)]
extern crate self as poisson_core;

#[cfg(test)]
#[path = "../tests/examples.rs"]
mod examples;

#[cfg(test)]
#[path = "../tests/properties.rs"]
mod properties;
