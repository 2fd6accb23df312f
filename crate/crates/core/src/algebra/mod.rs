//! Exact scalar and polynomial algebra.

mod hermite;
mod param_poly;
mod rational;
mod roots;

pub use hermite::{from_hermite_basis, hermite, hermite_expand, hermite_table, HermitePoly};
pub use param_poly::ParamPoly;
pub use rational::{
    binomial, double_factorial, factorial, gaussian_moment_1d, is_nonnegative, rat, ratio, to_f64,
    Rational,
};
pub(crate) use rational::int;
pub use roots::{real_roots, DEFAULT_ROOT_TOL, ISOLATION_CELLS};
