use serde::Serialize;

use super::normal::{phi, phi_inv};
use super::{McError, SampleSet};

/// Batches used for every standard error.
pub const BATCHES: usize = 20;
/// Multiplier applied to the estimator error band in verdicts.
pub const BAND_MULTIPLIER: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub point: f64,
    pub std_error: f64,
}

fn require(s: &SampleSet, needed: usize) -> Result<(), McError> {
    if s.len() < needed {
        return Err(McError::SampleTooSmall { needed, got: s.len() });
    }
    Ok(())
}

/// Point estimate on the full sample, standard error from [`BATCHES`] contiguous batch estimates.
pub fn batch_estimate(values: &[f64], stat: impl Fn(&[f64]) -> f64) -> Estimate {
    let n = values.len();
    let batch: Vec<f64> = (0..BATCHES)
        .map(|b| stat(&values[b * n / BATCHES..(b + 1) * n / BATCHES]))
        .collect();
    let mean = batch.iter().sum::<f64>() / BATCHES as f64;
    let var = batch.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (BATCHES - 1) as f64;
    Estimate { point: stat(values), std_error: (var / BATCHES as f64).sqrt() }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn central(xs: &[f64], k: i32) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(k)).sum::<f64>() / xs.len() as f64
}

/// Raw moment `E[X^k]`.
pub fn empirical_moment(s: &SampleSet, k: i32) -> Result<Estimate, McError> {
    require(s, BATCHES)?;
    Ok(batch_estimate(&s.values, |xs| xs.iter().map(|x| x.powi(k)).sum::<f64>() / xs.len() as f64))
}

/// Plug-in `m4 - 3 m2^2` on centered samples.
pub fn empirical_kappa4(s: &SampleSet) -> Result<Estimate, McError> {
    require(s, 100)?;
    Ok(batch_estimate(&s.values, |xs| {
        let m2 = central(xs, 2);
        central(xs, 4) - 3.0 * m2 * m2
    }))
}

fn sorted(s: &SampleSet) -> Vec<f64> {
    let mut xs = s.values.clone();
    xs.sort_by(f64::total_cmp);
    xs
}

/// `(1/n) sum_i |x_(i) - sigma Phi^{-1}((i - 1/2) / n)|`.
pub fn wasserstein1_to_gaussian(s: &SampleSet, sigma: f64) -> Result<f64, McError> {
    require(s, 2)?;
    positive("sigma", sigma)?;
    let xs = sorted(s);
    let n = xs.len() as f64;
    let total: f64 = xs
        .iter()
        .enumerate()
        .map(|(i, x)| (x - sigma * phi_inv((i as f64 + 0.5) / n)).abs())
        .sum();
    Ok(total / n)
}

/// `sup_x |F_n(x) - Phi(x / sigma)|`, evaluated on both sides of every jump.
pub fn ks_to_gaussian(s: &SampleSet, sigma: f64) -> Result<f64, McError> {
    require(s, 1)?;
    positive("sigma", sigma)?;
    let xs = sorted(s);
    let n = xs.len() as f64;
    Ok(xs.iter().enumerate().fold(0.0, |d, (i, &x)| {
        let f = phi(x / sigma);
        d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n)
    }))
}

/// Error band of the W1 estimator at sample size `n`: `ln(n) / sqrt(n)`.
pub fn w1_error_band(n: usize) -> f64 {
    let n = n as f64;
    n.ln() / n.sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GaussianDistanceBound {
    pub tv_bound: f64,
    pub w_bound: f64,
}

/// Distances between `N(0, sigma^2)` and `N(0, sigma_n^2)`:
/// `TV <= 2 |sigma_n^2 - sigma^2| / (sigma_n^2 v sigma^2)` and
/// `W1 <= sqrt(2/pi) |sigma_n^2 - sigma^2| / (sigma_n v sigma)`.
pub fn gaussian_distance_bound(sigma: f64, sigma_n: f64) -> Result<GaussianDistanceBound, McError> {
    positive("sigma", sigma)?;
    positive("sigma_n", sigma_n)?;
    let gap = (sigma_n * sigma_n - sigma * sigma).abs();
    let big = sigma.max(sigma_n);
    Ok(GaussianDistanceBound {
        tv_bound: 2.0 * gap / (big * big),
        w_bound: (2.0 / std::f64::consts::PI).sqrt() * gap / big,
    })
}

fn positive(name: &'static str, x: f64) -> Result<(), McError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(McError::NonPositive(name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: Vec<f64>) -> SampleSet {
        SampleSet::from_values(v)
    }

    fn quantiles(n: usize) -> Vec<f64> {
        (0..n).map(|i| phi_inv((i as f64 + 0.5) / n as f64)).collect()
    }

    #[test]
    fn kappa4_of_constant() {
        let k = empirical_kappa4(&set(vec![2.5; 200])).unwrap();
        assert_eq!((k.point, k.std_error), (0.0, 0.0));
        assert!(matches!(empirical_kappa4(&set(vec![0.0; 99])), Err(McError::SampleTooSmall { .. })));
    }

    #[test]
    fn wasserstein_examples() {
        assert_eq!(wasserstein1_to_gaussian(&set(quantiles(50)), 1.0).unwrap(), 0.0);
        let w = wasserstein1_to_gaussian(&set(vec![0.0, 0.0]), 1.0).unwrap();
        assert!((w - 0.674_489_750_196_081_7).abs() < 1e-12);
        assert!(wasserstein1_to_gaussian(&set(vec![0.0]), 1.0).is_err());
    }

    #[test]
    fn ks_examples() {
        assert_eq!(ks_to_gaussian(&set(vec![0.0]), 1.0).unwrap(), 0.5);
        let n = 40;
        let d = ks_to_gaussian(&set(quantiles(n)), 1.0).unwrap();
        assert!((d - 0.5 / n as f64).abs() < 1e-12);
        assert!(ks_to_gaussian(&set(vec![1e6]), 1.0).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn distance_bound_examples() {
        assert_eq!(
            gaussian_distance_bound(1.3, 1.3).unwrap(),
            GaussianDistanceBound { tv_bound: 0.0, w_bound: 0.0 }
        );
        let b = gaussian_distance_bound(1.0, 2f64.sqrt()).unwrap();
        assert!((b.tv_bound - 1.0).abs() < 1e-12);
        assert!((b.w_bound - (2.0 / std::f64::consts::PI).sqrt() / 2f64.sqrt()).abs() < 1e-12);
        assert!(gaussian_distance_bound(0.0, 1.0).is_err());
        assert!(gaussian_distance_bound(1.0, -1.0).is_err());
    }

    #[test]
    fn batch_error_of_known_stat() {
        let xs: Vec<f64> = (0..2000).map(|i| (i % 20) as f64).collect();
        // every batch of 100 consecutive values has the same mean
        let e = batch_estimate(&xs, mean);
        assert_eq!(e.std_error, 0.0);
        assert!((e.point - 9.5).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn shift_moves_w1_by_at_most_shift(xs in prop::collection::vec(-5.0f64..5.0, 2..60), c in -3.0f64..3.0) {
            let base = wasserstein1_to_gaussian(&set(xs.clone()), 1.0).unwrap();
            let moved = wasserstein1_to_gaussian(&set(xs.iter().map(|x| x + c).collect()), 1.0).unwrap();
            prop_assert!((moved - base).abs() <= c.abs() + 1e-12);
        }

        #[test]
        fn ks_is_a_probability_gap(xs in prop::collection::vec(-5.0f64..5.0, 1..60)) {
            let d = ks_to_gaussian(&set(xs.clone()), 1.0).unwrap();
            prop_assert!(d >= 0.5 / xs.len() as f64 - 1e-12 && d <= 1.0);
        }
    }
}
