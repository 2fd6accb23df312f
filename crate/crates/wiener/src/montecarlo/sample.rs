use rayon::prelude::*;
use wiener_core::chaos::{BlockFamily, ChaosElement};
use wiener_core::wick::GaussianPolynomial;

use super::rng::{GaussianStream, CHUNK, GENERATOR_ID};
use super::McError;

/// Reproducible draws: identical `(seed, generator_id, len)` give identical values.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    pub values: Vec<f64>,
    pub seed: u64,
    pub generator_id: String,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn from_values(values: Vec<f64>) -> Self {
        Self { values, seed: 0, generator_id: "fixed".into() }
    }
}

/// Draws `n` values of `f(xi)` with `xi` a vector of `coords` i.i.d. standard normals.
///
/// Work is split into chunks of [`CHUNK`] samples with their own derived seeds and
/// concatenated in chunk order, so the result does not depend on the thread count.
pub fn sample_with<F>(n: usize, seed: u64, coords: usize, f: F) -> SampleSet
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    let parts: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut g = GaussianStream::for_chunk(seed, k as u64);
            let len = CHUNK.min(n - k * CHUNK);
            let mut xi = vec![0.0; coords];
            (0..len)
                .map(|_| {
                    g.fill(&mut xi);
                    f(&xi)
                })
                .collect()
        })
        .collect();
    SampleSet { values: parts.concat(), seed, generator_id: GENERATOR_ID.into() }
}

/// Samples a chaos element over independent standard coordinates.
pub fn sample_chaos(x: &ChaosElement, n: usize, seed: u64) -> SampleSet {
    let f = x.compile().to_float(&[]).expect("chaos elements carry no parameters");
    sample_with(n, seed, x.dim(), |xi| f.eval(xi))
}

/// Samples a Gaussian polynomial whose covariance is evaluated at `assignment`.
///
/// Coordinates are `Z = L xi` with `L L^T = Sigma` from a pivoted factorization,
/// so the bivariate pair becomes `U = xi_1`, `V = rho xi_1 + sqrt(1 - rho^2) xi_2`.
pub fn sample_polynomial(
    f: &GaussianPolynomial,
    assignment: &[(&str, f64)],
    n: usize,
    seed: u64,
) -> Result<SampleSet, McError> {
    let l = f.cov().factor(assignment)?;
    let fp = f.to_float(assignment)?;
    let d = f.dim();
    Ok(sample_with(n, seed, d, |xi| {
        let z: Vec<f64> = l.iter().map(|row| row.iter().zip(xi).map(|(a, b)| a * b).sum()).collect();
        fp.eval(&z)
    }))
}

/// Samples `X_n = n^{-1/2} sum_i B(xi^(i))` block by block.
pub fn sample_family(family: &BlockFamily, n: usize, seed: u64) -> SampleSet {
    let block = family.block().compile().to_float(&[]).expect("chaos elements carry no parameters");
    let bd = family.block().dim();
    let c = family.scale();
    sample_with(n, seed, family.dim(), |xi| c * xi.chunks_exact(bd).map(|z| block.eval(z)).sum::<f64>())
}
