//! Exact arithmetic kernel: arbitrary-precision rationals, cyclotomic
//! fields parametrized by conductor, and 3x3 linear algebra over them.

pub mod cyclotomic;
pub mod matrix;

pub use cyclotomic::{CyclotomicField, FieldElement, FieldRef};
pub use matrix::{Matrix3, Vector3};
