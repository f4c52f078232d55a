//! Numerical laboratory for the multiplicity theory of Riemann zeta zeros.
//!
//! The crate evaluates ζ(s) and its companions from scratch at desk scale
//! (|t| ≤ 1000), locates and certifies critical-line zeros, evaluates a
//! family of zero-multiplicity bounds with their free parameters exposed,
//! and implements the Mellin kernel / Möbius mollifier machinery with
//! cross-validated independent computations.

// `!(x > 0.0)` guards intentionally catch NaN along with the wrong sign.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Plain `n % d == 0` reads better in sieve code than is_multiple_of.
#![allow(clippy::manual_is_multiple_of)]
// Tabulated quadrature abscissas keep their full printed precision.
#![allow(clippy::excessive_precision)]

pub mod bounds;
pub mod density;
pub mod engine;
pub mod error;
pub mod eval;
pub mod gamma;
pub mod kernel;
pub mod mollifier;
pub mod multiplicity;
pub mod quad;
pub mod sieve;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result};
pub use eval::{EvalResult, SPoint};

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;
