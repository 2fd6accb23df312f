//! Seeded simulation of chaos elements and empirical distances to the Gaussian.

mod experiment;
mod normal;
mod rng;
mod sample;
mod stats;

pub use experiment::clt_experiment;
pub use normal::{phi, phi_inv};
pub use rng::{chunk_seed, splitmix64, GaussianStream, CHUNK, GENERATOR_ID};
pub use sample::{sample_chaos, sample_family, sample_polynomial, sample_with, SampleSet};
pub use stats::{
    batch_estimate, empirical_kappa4, empirical_moment, gaussian_distance_bound, ks_to_gaussian, w1_error_band,
    wasserstein1_to_gaussian, Estimate, GaussianDistanceBound, BAND_MULTIPLIER, BATCHES,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum McError {
    #[error("need at least {needed} samples, got {got}")]
    SampleTooSmall { needed: usize, got: usize },
    #[error("{0} must be positive and finite")]
    NonPositive(&'static str),
    #[error(transparent)]
    Core(#[from] wiener_core::Error),
}
