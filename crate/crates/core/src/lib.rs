//! Exact Wiener-chaos calculus over finitely many Gaussian coordinates.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is exact rational
//! arithmetic unless a function name says otherwise; floating point only appears
//! at named evaluation boundaries such as [`algebra::ParamPoly::eval_f64`],
//! [`algebra::real_roots`] and norms that need a square root.
//!
//! * [`algebra`]: rationals, parameter polynomials, Hermite polynomials, roots.
//! * [`wick`]: moments and cumulants of Gaussian polynomials by Isserlis recursion.
//! * [`chaos`]: symmetric kernels, multiple integrals, Malliavin operators.
//! * [`counterexamples`]: the `H1 + H3` and `H1 + H5` constructions.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod chaos;
pub mod counterexamples;
mod error;
pub mod wick;

pub use error::{Error, Result};
