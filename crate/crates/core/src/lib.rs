//! Complex-contour quadrature, modified conjugation and path-integral
//! numerics for quantum theories with complex actions.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conjugation;
pub mod contour;
pub mod delta;
pub mod error;
pub mod fock;
pub mod fpi;
pub mod harness;
pub mod tolerances;
pub mod xi;

pub use num_complex::Complex64;

pub use error::{Error, Result};

/// Shorthand used throughout the crate.
pub type C64 = Complex64;
