//! Monte Carlo experiments, verification suites and reports built on `wiener-core`.

pub mod config;
pub mod kernels;
pub mod montecarlo;
pub mod report;
pub mod suites;
