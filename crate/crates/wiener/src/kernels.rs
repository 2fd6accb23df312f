//! Seeded random symmetric kernels with small rational entries.

use itertools::Itertools;
use wiener_core::algebra::ratio;
use wiener_core::chaos::{ChaosElement, SymTensor};

use crate::montecarlo::{chunk_seed, GaussianStream};

/// Entries are `n / m` with `n` in `-3..=3` and `m` in `1..=3`.
pub struct KernelSource {
    stream: GaussianStream,
}

impl KernelSource {
    pub fn new(seed: u64, purpose: u64) -> Self {
        Self { stream: GaussianStream::new(chunk_seed(seed, purpose)) }
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.stream.integer(lo as i64, hi as i64) as usize
    }

    /// A nonzero kernel; each sorted index is filled with probability 0.6.
    pub fn kernel(&mut self, d: usize, p: usize) -> SymTensor {
        loop {
            let mut u = SymTensor::zero(d, p);
            for idx in (0..d).combinations_with_replacement(p) {
                if self.stream.bernoulli(0.6) {
                    let n = self.stream.integer(-3, 3);
                    let m = self.stream.integer(1, 3);
                    u.set(&idx, ratio(n, m));
                }
            }
            if !u.is_zero() {
                return u;
            }
        }
    }

    /// Orders `p < q` of different parity, both at most `max_order`, over `d <= max_dim` coordinates.
    pub fn mixed_parity_pair(&mut self, max_order: usize, max_dim: usize) -> (SymTensor, SymTensor) {
        let (p, q) = loop {
            let (a, b) = (self.range(1, max_order), self.range(1, max_order));
            if a % 2 != b % 2 {
                break (a.min(b), a.max(b));
            }
        };
        let d = self.range(1, max_dim);
        (self.kernel(d, p), self.kernel(d, q))
    }

    /// Orders `p < q <= max_order` over `d <= max_dim` coordinates.
    pub fn increasing_pair(&mut self, max_order: usize, max_dim: usize) -> (SymTensor, SymTensor) {
        let p = self.range(1, max_order - 1);
        let q = self.range(p + 1, max_order);
        let d = self.range(1, max_dim);
        (self.kernel(d, p), self.kernel(d, q))
    }

    /// Any two orders up to `max_order` over a shared `d <= max_dim`.
    pub fn any_pair(&mut self, max_order: usize, max_dim: usize) -> (SymTensor, SymTensor) {
        let (p, q, d) = (self.range(1, max_order), self.range(1, max_order), self.range(1, max_dim));
        (self.kernel(d, p), self.kernel(d, q))
    }

    /// One to `max_components` components of distinct orders up to `max_order`.
    pub fn element(&mut self, max_components: usize, max_order: usize, max_dim: usize) -> ChaosElement {
        let d = self.range(1, max_dim);
        let count = self.range(1, max_components.min(max_order));
        let mut orders: Vec<usize> = (1..=max_order).collect();
        let mut kernels = Vec::new();
        for _ in 0..count {
            let p = orders.remove(self.range(0, orders.len() - 1));
            kernels.push(self.kernel(d, p));
        }
        ChaosElement::from_kernels(d, kernels).expect("shared dimension")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let draw = || {
            let mut s = KernelSource::new(42, 1);
            (0..5).map(|_| s.mixed_parity_pair(4, 4)).collect::<Vec<_>>()
        };
        let (a, b) = (draw(), draw());
        assert_eq!(a, b);
        for (y, z) in &a {
            assert_ne!(y.order() % 2, z.order() % 2);
            assert!(y.order() < z.order() && !y.is_zero() && !z.is_zero());
        }
    }

    #[test]
    fn pairs_respect_limits() {
        let mut s = KernelSource::new(7, 2);
        for _ in 0..50 {
            let (u, v) = s.increasing_pair(4, 3);
            assert!(u.order() < v.order() && v.order() <= 4 && u.dim() <= 3);
            let x = s.element(3, 3, 3);
            assert!((1..=3).contains(&x.orders().len()));
        }
    }
}
