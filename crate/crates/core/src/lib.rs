//! Exact computations for finite-dimensional Jordan superalgebras over the
//! rationals: identity checks, invariant forms, Peirce and spectral data,
//! structure Lie superalgebras, orbit tangent spaces and the orbit metric.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod linalg;
pub mod poly;
pub mod ratfn;
pub mod scalar;
pub mod algebra;
pub mod catalog;
pub mod superfn;
pub mod decomposition;
pub mod orbits;
pub mod isomorphisms;
pub mod io;
pub mod reproduction;
pub mod suite;

pub use algebra::{BilinearForm, SuperAlgebra, SuperBasis};
pub use catalog::{parse_catalog_name, CatalogEntry};
pub use error::{Error, Result};
pub use scalar::Rational;
