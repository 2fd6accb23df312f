use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::cov::CovSpec;
use crate::algebra::{hermite, rat, ParamPoly, Rational};
use crate::error::Result;

/// Polynomial in jointly Gaussian coordinates `Z_1..Z_d` with parameter-polynomial
/// coefficients.
///
/// Terms are keyed by dense exponent vectors of length `d`; zero coefficients are
/// never stored. Arithmetic between two polynomials requires the same covariance
/// and panics otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianPolynomial {
    cov: Arc<CovSpec>,
    terms: BTreeMap<Vec<u32>, ParamPoly>,
}

impl GaussianPolynomial {
    pub fn zero(cov: Arc<CovSpec>) -> Self {
        Self { cov, terms: BTreeMap::new() }
    }

    pub fn constant(cov: Arc<CovSpec>, c: ParamPoly) -> Self {
        let d = cov.dim();
        Self::monomial(cov, vec![0; d], c)
    }

    pub fn monomial(cov: Arc<CovSpec>, exponents: Vec<u32>, c: ParamPoly) -> Self {
        assert_eq!(exponents.len(), cov.dim(), "exponent vector must have one entry per coordinate");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        Self { cov, terms }
    }

    /// The coordinate `Z_i` itself.
    pub fn coordinate(cov: Arc<CovSpec>, i: usize) -> Self {
        let mut e = vec![0; cov.dim()];
        e[i] = 1;
        Self::monomial(cov, e, ParamPoly::one())
    }

    /// `H_p(Z_i)`; a Hermite chaos element only when `Z_i` has unit variance.
    pub fn hermite_of(cov: Arc<CovSpec>, i: usize, p: usize) -> Self {
        let d = cov.dim();
        let mut out = Self::zero(cov);
        for (k, c) in hermite(p).coefficients().iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; d];
                e[i] = k as u32;
                out.terms.insert(e, ParamPoly::constant(c.clone()));
            }
        }
        out
    }

    pub fn from_terms<I>(cov: Arc<CovSpec>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, ParamPoly)>,
    {
        let mut out = Self::zero(cov);
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, exponents: Vec<u32>, c: &ParamPoly) {
        assert_eq!(exponents.len(), self.cov.dim());
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exponents) {
            Some(slot) => {
                let sum = &*slot + c;
                if sum.is_zero() {
                    self.terms.remove(&exponents);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(exponents, c.clone());
            }
        }
    }

    pub fn cov(&self) -> &Arc<CovSpec> {
        &self.cov
    }

    pub fn dim(&self) -> usize {
        self.cov.dim()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &ParamPoly)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn coeff(&self, exponents: &[u32]) -> ParamPoly {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    /// Constant term when the polynomial has no coordinate dependence.
    pub fn as_constant(&self) -> Option<ParamPoly> {
        match self.terms.len() {
            0 => Some(ParamPoly::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        if c.is_zero() {
            return Self::zero(self.cov.clone());
        }
        Self {
            cov: self.cov.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.scale(&ParamPoly::constant(c.clone()))
    }

    /// Partial derivative with respect to coordinate `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.cov.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, &c.scale(&rat(i64::from(e[i]))));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.cov.clone(), ParamPoly::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn same_cov(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.cov, &other.cov) || self.cov == other.cov,
            "Gaussian polynomials over different covariances"
        );
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        self.same_cov(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            if negate {
                out.add_term(e.clone(), &-c);
            } else {
                out.add_term(e.clone(), c);
            }
        }
        out
    }

    fn multiply(&self, other: &Self) -> Self {
        self.same_cov(other);
        let mut acc: BTreeMap<Vec<u32>, ParamPoly> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let key: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                match acc.get_mut(&key) {
                    Some(slot) => *slot = &*slot + &prod,
                    None => {
                        acc.insert(key, prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Self { cov: self.cov.clone(), terms: acc }
    }

    /// Freezes parameters to floats for fast repeated evaluation at sample points.
    pub fn to_float(&self, assignment: &[(&str, f64)]) -> Result<FloatPolynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let powers: Vec<(usize, u32)> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| (i, k))
                .collect();
            terms.push((c.eval_f64(assignment)?, powers));
        }
        Ok(FloatPolynomial { dim: self.dim(), terms })
    }
}

impl Add<&GaussianPolynomial> for &GaussianPolynomial {
    type Output = GaussianPolynomial;
    fn add(self, rhs: &GaussianPolynomial) -> GaussianPolynomial {
        self.combine(rhs, false)
    }
}

impl Sub<&GaussianPolynomial> for &GaussianPolynomial {
    type Output = GaussianPolynomial;
    fn sub(self, rhs: &GaussianPolynomial) -> GaussianPolynomial {
        self.combine(rhs, true)
    }
}

impl Mul<&GaussianPolynomial> for &GaussianPolynomial {
    type Output = GaussianPolynomial;
    fn mul(self, rhs: &GaussianPolynomial) -> GaussianPolynomial {
        self.multiply(rhs)
    }
}

impl Neg for &GaussianPolynomial {
    type Output = GaussianPolynomial;
    fn neg(self) -> GaussianPolynomial {
        self.scale(&ParamPoly::int(-1))
    }
}

/// Sparse floating-point image of a [`GaussianPolynomial`] at fixed parameters.
#[derive(Clone, Debug)]
pub struct FloatPolynomial {
    dim: usize,
    terms: Vec<(f64, Vec<(usize, u32)>)>,
}

impl FloatPolynomial {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Value at the coordinate point `z` (length `dim`); terms are summed in key order.
    pub fn eval(&self, z: &[f64]) -> f64 {
        debug_assert_eq!(z.len(), self.dim);
        let mut acc = 0.0;
        for (c, powers) in &self.terms {
            let mut t = *c;
            for &(i, k) in powers {
                let x = z[i];
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}
