use wiener_core::chaos::{Distance, FamilyKind};

use super::rng::{chunk_seed, GENERATOR_ID};
use super::sample::sample_family;
use super::stats::{
    empirical_kappa4, ks_to_gaussian, w1_error_band, wasserstein1_to_gaussian, BAND_MULTIPLIER, BATCHES,
};
use super::McError;
use crate::report::{ExactValue, ExperimentReport};

/// Exact and simulated quantities of a block family along `n_grid`.
///
/// Point `n` is simulated with seed `chunk_seed(seed, n)`. Verdicts: exact
/// `kappa4` strictly decreasing; at every `n`, `W1 <= (1/sigma) sqrt(Var Gamma)
/// + 3 band`; and `W1` non-increasing up to `3 band`, with
/// `band = ln(samples) / sqrt(samples)`.
pub fn clt_experiment(
    kind: FamilyKind,
    n_grid: &[usize],
    samples: usize,
    seed: u64,
) -> Result<ExperimentReport, McError> {
    let band = BAND_MULTIPLIER * w1_error_band(samples);
    let mut report = ExperimentReport::new("clt");
    report
        .param("family", kind.name())
        .param("n_grid", n_grid)
        .param("samples", samples)
        .param("seed", seed)
        .param("generator_id", GENERATOR_ID)
        .param("batches", BATCHES)
        .tolerance("exact", 0.0)
        .tolerance("w1_band", band);

    let mut kappa4s = Vec::new();
    let mut w1s = Vec::new();
    for &n in n_grid {
        let fam = kind.at(n)?;
        let key = Some(n as u64);
        let variance = fam.variance();
        let kappa4 = fam.kappa4()?;
        let sigma = wiener_core::algebra::to_f64(&variance).sqrt();
        let w_bound = fam.stein_bound(Distance::Wasserstein)?;

        let s = sample_family(&fam, samples, chunk_seed(seed, n as u64));
        let w1 = wasserstein1_to_gaussian(&s, sigma)?;
        let ks = ks_to_gaussian(&s, sigma)?;

        report
            .exact("variance", key, &variance)
            .exact("kappa4", key, &kappa4)
            .exact("gamma_variance", key, &fam.gamma_variance()?)
            .exact_as("max_contraction_norm", key, ExactValue::Float { value: fam.max_contraction_norm() })
            .bound("stein_w1", key, w_bound)
            .bound("stein_tv", key, fam.stein_bound(Distance::TotalVariation)?)
            .estimate("kappa4_mc", key, empirical_kappa4(&s)?)
            .statistic("w1", key, w1)
            .statistic("ks", key, ks)
            .verdict("w1_within_stein_bound", key, w1 <= w_bound + band, "w1_band");
        kappa4s.push(kappa4);
        w1s.push(w1);
    }
    let decreasing = kappa4s.windows(2).all(|w| w[1] < w[0]);
    let w1_trend = w1s.windows(2).all(|w| w[1] <= w[0] + band);
    report
        .verdict("kappa4_decreasing", None, decreasing, "exact")
        .verdict("w1_non_increasing", None, w1_trend, "w1_band");
    Ok(report)
}
