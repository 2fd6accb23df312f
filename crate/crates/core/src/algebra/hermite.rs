//! Probabilists' Hermite polynomials and the change of basis into them.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::rational::{rat, Rational};

/// Monic Hermite polynomial `H_p` in monomial coefficients (index `k` multiplies `x^k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitePoly {
    order: usize,
    coefficients: Vec<Rational>,
}

impl HermitePoly {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + super::rational::to_f64(c))
    }
}

/// `H_p` via `H_{p+1} = x H_p - p H_{p-1}`, `H_0 = 1`, `H_1 = x`.
pub fn hermite(p: usize) -> HermitePoly {
    let mut prev: Vec<Rational> = vec![rat(1)];
    if p == 0 {
        return HermitePoly { order: 0, coefficients: prev };
    }
    let mut cur: Vec<Rational> = vec![rat(0), rat(1)];
    for k in 1..p {
        let mut next = vec![Rational::zero(); k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        let kk = rat(k as i64);
        for (i, c) in prev.iter().enumerate() {
            next[i] -= &kk * c;
        }
        prev = core::mem::replace(&mut cur, next);
    }
    HermitePoly { order: p, coefficients: cur }
}

/// All Hermite polynomials `H_0..=H_max`.
pub fn hermite_table(max: usize) -> Vec<HermitePoly> {
    (0..=max).map(hermite).collect()
}

/// Coefficients `c_p` with `poly(x) = sum_p c_p H_p(x)`; zero coefficients are omitted.
///
/// `poly` is given in ascending monomial coefficients.
pub fn hermite_expand(poly: &[Rational]) -> Vec<(usize, Rational)> {
    let mut rest: Vec<Rational> = poly.to_vec();
    while rest.last().is_some_and(Zero::is_zero) {
        rest.pop();
    }
    let table = hermite_table(rest.len().saturating_sub(1));
    let mut out = Vec::new();
    while let Some(lead) = rest.last().cloned() {
        let deg = rest.len() - 1;
        if !lead.is_zero() {
            for (i, h) in table[deg].coefficients.iter().enumerate() {
                rest[i] -= &lead * h;
            }
            out.push((deg, lead));
        }
        rest.pop();
    }
    out.reverse();
    out
}

/// Inverse of [`hermite_expand`]: monomial coefficients of `sum_p c_p H_p`.
pub fn from_hermite_basis(coeffs: &[(usize, Rational)]) -> Vec<Rational> {
    let top = coeffs.iter().map(|(p, _)| *p).max().unwrap_or(0);
    let mut out = vec![Rational::zero(); top + 1];
    for (p, c) in coeffs {
        for (i, h) in hermite(*p).coefficients.iter().enumerate() {
            out[i] += c * h;
        }
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}
