//! Seeded, splittable Gaussian streams.
//!
//! Samples are produced in fixed-size chunks. Chunk `k` of a run with seed `s`
//! draws from a ChaCha8 generator seeded with `splitmix64(s + (k + 1) * GOLDEN)`,
//! i.e. the `(k + 1)`-th output of a SplitMix64 sequence started at `s`. Chunks
//! are independent of scheduling, so serial and parallel runs agree bitwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const GENERATOR_ID: &str = "chacha8/splitmix64-chunks/marsaglia-polar";
/// Samples per chunk.
pub const CHUNK: usize = 4096;
const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn chunk_seed(seed: u64, chunk: u64) -> u64 {
    splitmix64(seed.wrapping_add(chunk.wrapping_mul(GOLDEN)))
}

/// Standard normal draws by the Marsaglia polar method.
pub struct GaussianStream {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), spare: None }
    }

    pub fn for_chunk(seed: u64, chunk: u64) -> Self {
        Self::new(chunk_seed(seed, chunk))
    }

    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.rng.random::<f64>() - 1.0;
            let v = 2.0 * self.rng.random::<f64>() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let f = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * f);
                return u * f;
            }
        }
    }

    pub fn fill(&mut self, out: &mut [f64]) {
        for z in out {
            *z = self.normal();
        }
    }

    /// Uniform integer in `lo..=hi`, for seeded kernel generation.
    pub fn integer(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }
}
