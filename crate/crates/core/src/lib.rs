//! Exact rank of the degree-d evaluation map for unions of jets on lines
//! (plus free points) in projective space.
//!
//! Everything here is pure computation over GF(p) or the integers and
//! builds without `std`; file formats and the command line live in the
//! `jetrank` crate.

#![no_std]

extern crate alloc;

pub mod admissibility;
pub mod conditions;
pub mod error;
pub mod field;
pub mod geometry;
pub mod linalg;
pub mod verifier;

pub use error::{Error, Result};
pub use field::{PrimeModulus, Scalar, DEFAULT_MODULUS};
pub use geometry::{Configuration, Jet, Line, ProjPoint, Weight};
pub use linalg::Matrix;
