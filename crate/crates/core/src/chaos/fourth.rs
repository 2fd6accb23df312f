use alloc::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::element::{multiple_integral_over, ChaosElement};
use super::malliavin::{constant, malliavin_derivative_over};
use super::tensor::{contract, SymTensor};
use crate::algebra::{binomial, factorial, int, to_f64, Rational};
use crate::error::{Error, Result};
use crate::wick::{cumulant, expectation, CovSpec, GaussianPolynomial};

/// Exact `kappa_4(X)` through the compiled polynomial.
pub fn kappa4_exact(x: &ChaosElement) -> Result<Rational> {
    constant(&cumulant(&x.compile(), 4)?)
}

/// Terms of `kappa4(Y + Z) = kappa4(Y) + kappa4(Z) + 6 Cov(Y^2, Z^2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kappa4Decomposition {
    pub k4_x: Rational,
    pub k4_y: Rational,
    pub k4_z: Rational,
    pub cov_sq: Rational,
    pub e_y3z: Rational,
    pub e_yz3: Rational,
}

impl Kappa4Decomposition {
    pub fn identity_holds(&self) -> bool {
        let six = int(BigInt::from(6));
        self.k4_x == &self.k4_y + &self.k4_z + six * &self.cov_sq
    }

    pub fn odd_moments_vanish(&self) -> bool {
        self.e_y3z.is_zero() && self.e_yz3.is_zero()
    }

    /// `kappa4(X) >= max(kappa4(Y), kappa4(Z))`.
    pub fn dominates(&self) -> bool {
        self.k4_x >= self.k4_y && self.k4_x >= self.k4_z
    }

    pub fn holds(&self) -> bool {
        self.identity_holds() && self.odd_moments_vanish() && !self.cov_sq.is_negative() && self.dominates()
    }
}

/// Decomposes `kappa4(I_p(y) + I_q(z))` for `p`, `q` of different parity.
pub fn kappa4_decomposition(y: &SymTensor, z: &SymTensor) -> Result<Kappa4Decomposition> {
    let (p, q) = (y.order(), z.order());
    if p % 2 == q % 2 {
        return Err(Error::ParityViolation { p, q });
    }
    if y.dim() != z.dim() {
        return Err(Error::DimensionMismatch { left: y.dim(), right: z.dim() });
    }
    let cov = Arc::new(CovSpec::identity(y.dim()));
    let yp = multiple_integral_over(y, &cov)?;
    let zp = multiple_integral_over(z, &cov)?;
    let y2 = &yp * &yp;
    let z2 = &zp * &zp;
    let e = |f: &GaussianPolynomial| constant(&expectation(f)?);
    let cov_sq = e(&(&y2 * &z2))? - e(&y2)? * e(&z2)?;
    Ok(Kappa4Decomposition {
        k4_x: constant(&cumulant(&(&yp + &zp), 4)?)?,
        k4_y: constant(&cumulant(&yp, 4)?)?,
        k4_z: constant(&cumulant(&zp, 4)?)?,
        cov_sq,
        e_y3z: e(&(&(&y2 * &yp) * &zp))?,
        e_yz3: e(&(&(&z2 * &zp) * &yp))?,
    })
}

/// `||u (x)_r u||^2`.
pub fn contraction_norm_sq(u: &SymTensor, r: usize) -> Result<Rational> {
    Ok(contract(u, u, r)?.norm_sq())
}

/// `max_{1 <= r <= p-1} ||u (x)_r u||^2`, or `None` when `p = 1`.
pub fn max_contraction_norm_sq(u: &SymTensor) -> Option<Rational> {
    (1..u.order())
        .map(|r| contraction_norm_sq(u, r).expect("r < p"))
        .max()
}

/// `max_{1 <= r <= p-1} ||u (x)_r u||`; zero for `p = 1`.
pub fn max_contraction_norms(u: &SymTensor) -> f64 {
    max_contraction_norm_sq(u).map_or(0.0, |s| libm::sqrt(to_f64(&s)))
}

/// Both sides of the mixed-term estimate for `p < q`:
///
/// `E[(q^-1 <D I_p(u), D I_q(v)>)^2] <= A sqrt(B) + C` with
/// `A = p!^2 C(q-1, p-1)^2 (q-p)! ||u||^2`, `B = ||v (x)_{q-p} v||^2` and
/// `C = (p^2 / 2) sum_{r=1}^{p-1} (r-1)!^2 C(p-1, r-1)^2 C(q-1, r-1)^2 (p+q-2r)!
///      (||u (x)_{p-r} u||^2 + ||v (x)_{p-r} v||^2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedTermCheck {
    pub lhs: Rational,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    /// `A sqrt(B) + C` in floating point, for display.
    pub rhs: f64,
    /// Decided exactly: `lhs - C <= 0` or `(lhs - C)^2 <= A^2 B`.
    pub holds: bool,
}

pub fn mixed_term_bound_check(u: &SymTensor, v: &SymTensor) -> Result<MixedTermCheck> {
    let (p, q) = (u.order(), v.order());
    if p >= q {
        return Err(Error::OrderNotIncreasing { p, q });
    }
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch { left: u.dim(), right: v.dim() });
    }
    let cov = Arc::new(CovSpec::identity(u.dim()));
    let du = malliavin_derivative_over(&ChaosElement::single(u.clone()), &cov);
    let dv = malliavin_derivative_over(&ChaosElement::single(v.clone()), &cov);
    let inner = du.inner(&dv)?.scale_rational(&Rational::new(1.into(), (q as i64).into()));
    let lhs = constant(&expectation(&(&inner * &inner))?)?;

    let (pu, qu) = (p as u64, q as u64);
    let fact = |n: u64| int(factorial(n));
    let binom = |n: u64, k: u64| int(binomial(n, k));
    let a = fact(pu) * fact(pu) * binom(qu - 1, pu - 1).pow(2) * fact(qu - pu) * u.norm_sq();
    let b = contraction_norm_sq(v, q - p)?;
    let mut sum = Rational::zero();
    for r in 1..p {
        let ru = r as u64;
        let weight = fact(ru - 1).pow(2)
            * binom(pu - 1, ru - 1).pow(2)
            * binom(qu - 1, ru - 1).pow(2)
            * fact(pu + qu - 2 * ru);
        sum += weight * (contraction_norm_sq(u, p - r)? + contraction_norm_sq(v, p - r)?);
    }
    let c = Rational::new(BigInt::from(p * p), 2.into()) * sum;

    let gap = &lhs - &c;
    let holds = !gap.is_positive() || &gap * &gap <= &a * &a * &b;
    let rhs = to_f64(&a) * libm::sqrt(to_f64(&b)) + to_f64(&c);
    Ok(MixedTermCheck { lhs, a, b, c, rhs, holds })
}
