//! Exact Gaussian moments and cumulants of polynomial functionals.

mod cov;
mod moments;
mod polynomial;

pub use cov::{CovSpec, PSD_TOL};
pub use moments::{
    cumulant, expectation, gaussian_moment, gaussian_moment_bivariate_conditional, MomentEngine,
    DEGREE_CAP,
};
pub use polynomial::{FloatPolynomial, GaussianPolynomial};
