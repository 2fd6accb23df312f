use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::element::{multiple_integral_over, ChaosElement};
use crate::algebra::{rat, to_f64, ParamPoly, Rational};
use crate::error::{Error, Result};
use crate::wick::{expectation, CovSpec, GaussianPolynomial};

/// An `R^d`-valued random element, one Gaussian polynomial per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    entries: Vec<GaussianPolynomial>,
}

impl HVector {
    pub fn new(entries: Vec<GaussianPolynomial>) -> Self {
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[GaussianPolynomial] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &GaussianPolynomial {
        &self.entries[i]
    }

    /// Pointwise `<a, b>_{R^d}`.
    pub fn inner(&self, other: &Self) -> Result<GaussianPolynomial> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        let mut it = self.entries.iter().zip(&other.entries);
        let (a0, b0) = it.next().ok_or(Error::InvalidArgument("empty H-vector"))?;
        let mut acc = a0 * b0;
        for (a, b) in it {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        Ok(acc)
    }

    pub fn norm_sq(&self) -> Result<GaussianPolynomial> {
        self.inner(self)
    }
}

/// `D X`, coordinate `i` being `sum_p p I_{p-1}(u_p(., e_i))`.
pub fn malliavin_derivative(x: &ChaosElement) -> HVector {
    let cov = Arc::new(CovSpec::identity(x.dim()));
    malliavin_derivative_over(x, &cov)
}

pub(crate) fn malliavin_derivative_over(x: &ChaosElement, cov: &Arc<CovSpec>) -> HVector {
    let entries = (0..x.dim())
        .map(|i| {
            let mut acc = GaussianPolynomial::zero(cov.clone());
            for (p, u) in x.components() {
                let weight = rat(p as i64);
                let term = match u.slice(i) {
                    Ok(sliced) => multiple_integral_over(&sliced, cov)
                        .expect("identity covariance")
                        .scale_rational(&weight),
                    Err(scalar) => {
                        GaussianPolynomial::constant(cov.clone(), ParamPoly::constant(scalar * weight))
                    }
                };
                if !term.is_zero() {
                    acc = &acc + &term;
                }
            }
            acc
        })
        .collect();
    HVector::new(entries)
}

/// `L X`: the order-`p` component is multiplied by `p`.
pub fn ou_apply(x: &ChaosElement) -> ChaosElement {
    x.map_orders(|p| rat(p as i64))
}

/// `L^{-1} X`: the order-`p` component is multiplied by `-1/p`.
pub fn ou_inverse(x: &ChaosElement) -> ChaosElement {
    x.map_orders(|p| -Rational::new(1.into(), (p as i64).into()))
}

/// `Gamma(X) = <D X, -D L^{-1} X>`, normalized so that `E[Gamma(X)] = E[X^2]`.
pub fn gamma(x: &ChaosElement) -> GaussianPolynomial {
    let cov = Arc::new(CovSpec::identity(x.dim()));
    let dx = malliavin_derivative_over(x, &cov);
    let dl = malliavin_derivative_over(&ou_inverse(x).scale(&rat(-1)), &cov);
    dx.inner(&dl).expect("same dimension")
}

/// Exact `Var[Gamma(X)]`.
pub fn gamma_variance(x: &ChaosElement) -> Result<Rational> {
    let g = gamma(x);
    let mean = expectation(&g)?;
    let second = expectation(&(&g * &g))?;
    constant(&(&second - &(&mean * &mean)))
}

pub(crate) fn constant(p: &ParamPoly) -> Result<Rational> {
    p.as_constant().ok_or(Error::InvalidArgument("expected a parameter-free value"))
}

/// Which probability metric a Stein bound controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distance {
    /// `(1 / sigma) sqrt(Var Gamma)`.
    Wasserstein,
    /// `(2 / sigma^2) sqrt(Var Gamma)`.
    TotalVariation,
    /// `(2 / min(sigma, sigma^2)) sqrt(Var Gamma)`, valid for both metrics.
    Combined,
}

/// Stein bound from an exact `sigma^2` and `Var Gamma`.
pub fn stein_bound_from(variance: &Rational, gamma_var: &Rational, which: Distance) -> Result<f64> {
    if !variance.is_positive() {
        return Err(Error::Degenerate);
    }
    let s2 = to_f64(variance);
    let s = libm::sqrt(s2);
    let root = libm::sqrt(to_f64(gamma_var).max(0.0));
    Ok(match which {
        Distance::Wasserstein => root / s,
        Distance::TotalVariation => 2.0 * root / s2,
        Distance::Combined => 2.0 * root / s.min(s2),
    })
}

pub fn stein_bound(x: &ChaosElement, which: Distance) -> Result<f64> {
    let variance = x.variance();
    if variance.is_zero() {
        return Err(Error::Degenerate);
    }
    stein_bound_from(&variance, &gamma_variance(x)?, which)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::SymTensor;
    use crate::algebra::ratio;
    use alloc::vec;

    fn id(d: usize) -> Arc<CovSpec> {
        Arc::new(CovSpec::identity(d))
    }

    #[test]
    fn derivative_examples() {
        let x = ChaosElement::single(SymTensor::rank_one(3, 0, 1));
        let dx = malliavin_derivative(&x);
        assert_eq!(dx.entry(0).as_constant(), Some(ParamPoly::one()));
        assert!(dx.entry(1).is_zero() && dx.entry(2).is_zero());

        let h2 = ChaosElement::single(SymTensor::rank_one(2, 0, 2));
        let dh = malliavin_derivative(&h2);
        assert_eq!(dh.entry(0), &GaussianPolynomial::coordinate(id(2), 0).scale(&ParamPoly::int(2)));
        assert!(dh.entry(1).is_zero());

        let prod = ChaosElement::single(SymTensor::sym_basis(3, &[0, 1]));
        let dp = malliavin_derivative(&prod);
        assert_eq!(dp.entry(0), &GaussianPolynomial::coordinate(id(3), 1));
        assert_eq!(dp.entry(1), &GaussianPolynomial::coordinate(id(3), 0));
        assert!(dp.entry(2).is_zero());
    }

    #[test]
    fn ou_examples() {
        let x = ChaosElement::single(SymTensor::rank_one(2, 1, 1));
        assert_eq!(ou_apply(&x), x);
        assert_eq!(ou_inverse(&x), x.scale(&rat(-1)));

        let y = ChaosElement::single(SymTensor::rank_one(2, 1, 3));
        assert_eq!(ou_inverse(&y), y.scale(&ratio(-1, 3)));

        // the scalings p and -1/p compose to -1
        let mixed = x.plus(&y).unwrap();
        assert_eq!(ou_apply(&ou_inverse(&mixed)), mixed.scale(&rat(-1)));
    }

    #[test]
    fn gamma_examples() {
        let x = ChaosElement::single(SymTensor::rank_one(1, 0, 1));
        assert_eq!(gamma(&x).as_constant(), Some(ParamPoly::one()));
        assert_eq!(gamma_variance(&x).unwrap(), rat(0));
        assert_eq!(stein_bound(&x, Distance::Wasserstein).unwrap(), 0.0);
        assert_eq!(stein_bound(&x, Distance::TotalVariation).unwrap(), 0.0);

        let h2 = ChaosElement::single(SymTensor::rank_one(1, 0, 2));
        let g = gamma(&h2);
        assert_eq!(g, GaussianPolynomial::monomial(id(1), vec![2], ParamPoly::int(2)));
        assert_eq!(expectation(&g).unwrap(), ParamPoly::int(2));
        assert_eq!(gamma_variance(&h2).unwrap(), rat(8));
        assert!((stein_bound(&h2, Distance::Combined).unwrap() - 4.0).abs() < 1e-12);
        assert!((stein_bound(&h2, Distance::Wasserstein).unwrap() - 2.0).abs() < 1e-12);
        assert!((stein_bound(&h2, Distance::TotalVariation).unwrap() - 8f64.sqrt()).abs() < 1e-12);

        let mixed = ChaosElement::from_kernels(
            2,
            [SymTensor::rank_one(2, 0, 1), SymTensor::rank_one(2, 1, 2)],
        )
        .unwrap();
        assert_eq!(expectation(&gamma(&mixed)).unwrap(), ParamPoly::int(3));
        assert_eq!(mixed.variance(), rat(3));
    }

    #[test]
    fn single_chaos_gamma_is_scaled_derivative_norm() {
        let mut u = SymTensor::zero(2, 3);
        u.set(&[0, 0, 1], ratio(1, 2));
        u.set(&[1, 1, 1], rat(1));
        let x = ChaosElement::single(u);
        let norm = malliavin_derivative(&x).norm_sq().unwrap();
        assert_eq!(gamma(&x), norm.scale_rational(&ratio(1, 3)));
    }

    #[test]
    fn gamma_variance_scales_quartically() {
        let x = ChaosElement::from_kernels(
            2,
            [SymTensor::sym_basis(2, &[0, 1]), SymTensor::rank_one(2, 0, 3)],
        )
        .unwrap();
        let c = ratio(3, 2);
        let scaled = gamma_variance(&x.scale(&c)).unwrap();
        let c4 = &c * &c * &c * &c;
        assert_eq!(scaled, gamma_variance(&x).unwrap() * c4);
    }

    #[test]
    fn degenerate_bound() {
        assert_eq!(stein_bound(&ChaosElement::zero(2), Distance::Wasserstein), Err(Error::Degenerate));
    }
}
