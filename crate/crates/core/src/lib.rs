//! Exact-arithmetic engine for torus-equivariant bi-vector fields on smooth
//! toric varieties.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is exact: lattice
//! data lives in `i64` vectors and arbitrary-precision integer matrices, bivector
//! coefficients are arbitrary-precision rationals.
//!
//! The layers build on each other:
//!
//! - [`linalg`]: Smith normal form, unimodular inverses, exact rational rank.
//! - [`fan`]: cones, fans, smoothness and completeness, dual frames,
//!   cone intersections by double description, the built-in fan gallery.
//! - [`orbits`]: orbit-cone correspondence, chart-local views of orbits.
//! - [`bivector`]: the `(A, α)` presentation of an equivariant bivector, chart
//!   transitions, regularity and the Poisson criterion.
//! - [`degeneracy`]: rank on every orbit, degeneracy-locus stratification and
//!   the degeneracy-locus certificate.
//! - [`sampling`]: catalogues of globally regular bivectors for randomized checks.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bivector;
pub mod degeneracy;
mod error;
pub mod fan;
pub mod linalg;
pub mod orbits;
mod polyhedral;
pub mod sampling;

pub use error::{Error, Result};

pub use bivector::{Atlas, BaseChart, ChartPresentation, EquivariantBivector};
pub use degeneracy::{FanBivector, Stratification, TheoremCertificate};
pub use fan::{Cone, Covector, Fan, LatticeVector};
pub use linalg::{IntMatrix, Matrix, RatMatrix};
pub use orbits::{ChartOrbit, OrbitRef};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
