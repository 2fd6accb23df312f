use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{factorial, int, to_f64, Rational};
use crate::error::{Error, Result};

/// Number of distinct orderings of a multi-index, `p! / prod(multiplicities!)`.
pub fn orbit_size(index: &[usize]) -> BigInt {
    let mut sorted = index.to_vec();
    sorted.sort_unstable();
    let mut denom = BigInt::one();
    let mut run = 1u64;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            denom *= factorial(run);
            run = 1;
        }
    }
    if !sorted.is_empty() {
        denom *= factorial(run);
    }
    factorial(sorted.len() as u64) / denom
}

/// Multiplicities `(coordinate, count)` of a sorted multi-index.
pub fn multiplicities(sorted: &[usize]) -> Vec<(usize, u32)> {
    let mut out: Vec<(usize, u32)> = Vec::new();
    for &i in sorted {
        match out.last_mut() {
            Some((j, k)) if *j == i => *k += 1,
            _ => out.push((i, 1)),
        }
    }
    out
}

/// All distinct orderings of a sorted multi-index, in lexicographic order.
pub fn distinct_permutations(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// A general (not necessarily symmetric) tensor of order `p` over `R^d`, stored sparsely.
///
/// Order 0 is allowed and holds a single scalar under the empty index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    dim: usize,
    order: usize,
    entries: BTreeMap<Vec<usize>, Rational>,
}

impl Tensor {
    pub fn zero(dim: usize, order: usize) -> Self {
        Self { dim, order, entries: BTreeMap::new() }
    }

    /// `e_{i_1} (x) ... (x) e_{i_p}` scaled by `c`.
    pub fn basis(dim: usize, index: &[usize], c: Rational) -> Self {
        let mut t = Self::zero(dim, index.len());
        t.add_entry(index.to_vec(), c);
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn get(&self, index: &[usize]) -> Rational {
        self.entries.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_entry(&mut self, index: Vec<usize>, c: Rational) {
        assert_eq!(index.len(), self.order, "index length must equal the tensor order");
        assert!(index.iter().all(|&i| i < self.dim), "index out of range");
        if c.is_zero() {
            return;
        }
        let sum = self.get(&index) + c;
        if sum.is_zero() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Value of an order-0 tensor.
    pub fn scalar(&self) -> Option<Rational> {
        (self.order == 0).then(|| self.get(&[]))
    }

    /// Squared Euclidean norm over all `d^p` entries.
    pub fn norm_sq(&self) -> Rational {
        self.entries.values().fold(Rational::zero(), |acc, v| acc + v * v)
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(to_f64(&self.norm_sq()))
    }
}

/// Symmetric tensor of order `p >= 1` over `R^d`.
///
/// Only sorted multi-indices are stored; the value at any permutation of a stored
/// index is the same. Inner products and norms are those of the full tensor in
/// `(R^d)^{(x) p}`, so a stored coefficient `u_a` contributes `orbit_size(a) u_a^2`
/// to the squared norm. Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor {
    dim: usize,
    order: usize,
    coeffs: BTreeMap<Vec<usize>, Rational>,
}

impl SymTensor {
    pub fn zero(dim: usize, order: usize) -> Self {
        assert!(dim > 0 && order > 0, "symmetric tensors need positive dimension and order");
        Self { dim, order, coeffs: BTreeMap::new() }
    }

    /// `e_i^{(x) p}`.
    pub fn rank_one(dim: usize, i: usize, order: usize) -> Self {
        let mut t = Self::zero(dim, order);
        t.set(&vec![i; order], Rational::one());
        t
    }

    /// The symmetrization of `e_{i_1} (x) ... (x) e_{i_p}`.
    pub fn sym_basis(dim: usize, index: &[usize]) -> Self {
        let mut t = Self::zero(dim, index.len());
        t.set(index, Rational::new(BigInt::one(), orbit_size(index)));
        t
    }

    pub fn from_entries<I>(dim: usize, order: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (Vec<usize>, Rational)>,
    {
        let mut t = Self::zero(dim, order);
        for (idx, c) in entries {
            let prev = t.get(&idx);
            t.set(&idx, prev + c);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Stored (sorted-index) coefficients.
    pub fn coeffs(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.coeffs.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn get(&self, index: &[usize]) -> Rational {
        let mut key = index.to_vec();
        key.sort_unstable();
        self.coeffs.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Sets the coefficient of the symmetry class of `index`.
    pub fn set(&mut self, index: &[usize], c: Rational) {
        assert_eq!(index.len(), self.order, "index length must equal the tensor order");
        assert!(index.iter().all(|&i| i < self.dim), "index out of range");
        let mut key = index.to_vec();
        key.sort_unstable();
        if c.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.order);
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            let sum = out.get(k) + v;
            out.set(k, sum);
        }
        Ok(out)
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        if self.order != other.order {
            return Err(Error::DimensionMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    /// Full-tensor inner product `<u, v>`.
    pub fn inner(&self, other: &Self) -> Result<Rational> {
        self.check_same_space(other)?;
        let mut acc = Rational::zero();
        for (k, a) in &self.coeffs {
            if let Some(b) = other.coeffs.get(k) {
                acc += a * b * int(orbit_size(k));
            }
        }
        Ok(acc)
    }

    /// Squared full-tensor norm.
    pub fn norm_sq(&self) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, (k, v)| acc + v * v * int(orbit_size(k)))
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(to_f64(&self.norm_sq()))
    }

    /// Every entry of the full tensor (all orderings of each stored index).
    pub fn to_full(&self) -> Tensor {
        let mut t = Tensor::zero(self.dim, self.order);
        for (k, v) in &self.coeffs {
            for perm in distinct_permutations(k) {
                t.entries.insert(perm, v.clone());
            }
        }
        t
    }

    /// `u(., i)`: the order `p - 1` tensor obtained by fixing one slot to coordinate `i`.
    ///
    /// For `p = 1` the result is the scalar `u_i`, returned as `Err(scalar)`.
    pub fn slice(&self, i: usize) -> core::result::Result<SymTensor, Rational> {
        if self.order == 1 {
            return Err(self.get(&[i]));
        }
        let mut out = SymTensor::zero(self.dim, self.order - 1);
        for (k, v) in &self.coeffs {
            if let Some(pos) = k.iter().position(|&j| j == i) {
                let mut rest = k.clone();
                rest.remove(pos);
                out.coeffs.insert(rest, v.clone());
            }
        }
        Ok(out)
    }
}

/// Average over all index permutations of `t`; idempotent on symmetric input.
pub fn symmetrize(t: &Tensor) -> Result<SymTensor> {
    if t.order == 0 {
        return Err(Error::InvalidArgument("symmetrization needs order >= 1"));
    }
    let mut sums: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    for (k, v) in &t.entries {
        let mut key = k.clone();
        key.sort_unstable();
        *sums.entry(key).or_insert_with(Rational::zero) += v;
    }
    let mut out = SymTensor::zero(t.dim, t.order);
    for (k, s) in sums {
        let avg = s / int(orbit_size(&k));
        out.set(&k, avg);
    }
    Ok(out)
}

fn group_by_tail(t: &Tensor, r: usize) -> BTreeMap<Vec<usize>, Vec<(Vec<usize>, Rational)>> {
    let mut groups: BTreeMap<Vec<usize>, Vec<(Vec<usize>, Rational)>> = BTreeMap::new();
    let head = t.order - r;
    for (k, v) in &t.entries {
        groups
            .entry(k[head..].to_vec())
            .or_default()
            .push((k[..head].to_vec(), v.clone()));
    }
    groups
}

/// `u (x)_r v`: identify the last `r` slots of `u` with the last `r` slots of `v`
/// and sum them out. The result has order `p + q - 2r` with `u`'s free slots first.
pub fn contract(u: &SymTensor, v: &SymTensor, r: usize) -> Result<Tensor> {
    if u.dim != v.dim {
        return Err(Error::DimensionMismatch { left: u.dim, right: v.dim });
    }
    if r > u.order.min(v.order) {
        return Err(Error::ContractionOrder { r, p: u.order, q: v.order });
    }
    let left = group_by_tail(&u.to_full(), r);
    let right = group_by_tail(&v.to_full(), r);
    let mut out = Tensor::zero(u.dim, u.order + v.order - 2 * r);
    for (k, us) in &left {
        let Some(vs) = right.get(k) else { continue };
        for (i, a) in us {
            for (j, b) in vs {
                let mut idx = i.clone();
                idx.extend_from_slice(j);
                out.add_entry(idx, a * b);
            }
        }
    }
    Ok(out)
}

/// Symmetrized contraction `u ~(x)_r v`; order `p + q - 2r` must be positive.
pub fn contract_sym(u: &SymTensor, v: &SymTensor, r: usize) -> Result<SymTensor> {
    symmetrize(&contract(u, v, r)?)
}
