//! Exact-arithmetic certificates for the invariant theory and orbit
//! geometry of Klein's simple group of order 168 acting on the projective
//! plane, and of its central extension of order 504.
//!
//! The crate builds the groups from their generator matrices over a
//! cyclotomic field, constructs the classical invariants of degrees
//! 4, 6, 14 and 21, checks the degree-42 relation between them, surveys
//! semiinvariants and special orbits, analyzes the singularities of the
//! associated invariant plane curves, and assembles everything into a
//! machine-readable certificate.
//!
//! Everything is computed in exact arithmetic; floating point appears
//! only in one validation oracle for the reflection generator's entries.

pub mod arith;
pub mod certificate;
pub mod cli;
pub mod curves;
pub mod group;
pub mod invariants;
pub mod orbits;
pub mod poly;
pub mod ring;

pub use arith::{CyclotomicField, FieldElement, FieldRef, Matrix3};
pub use ring::{Rational, Ring};
