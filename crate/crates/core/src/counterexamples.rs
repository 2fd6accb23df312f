//! The two explicit constructions on a correlated Gaussian pair `(U, V)` with
//! `Var U = Var V = 1` and `Cov(U, V) = rho`.
//!
//! * `X = 10 U + H3(V)`: `kappa4(X)` is a cubic in `rho` with one real root `rho*`
//!   in `[-1, 1]`, yet `E[X^6] != 15 E[X^2]^3` there, so `X` is not Gaussian.
//! * `X = a U + H5(V)`: `kappa4(X)` is a quadratic in `rho` with negative
//!   discriminant for `a != 0`, hence positive everywhere.

use alloc::sync::Arc;

use num_traits::{Signed, Zero};

use crate::algebra::{rat, ratio, real_roots, to_f64, ParamPoly, Rational, DEFAULT_ROOT_TOL};
use crate::error::{Error, Result};
use crate::wick::{cumulant, expectation, CovSpec, GaussianPolynomial};

pub const RHO: &str = "rho";
pub const A: &str = "a";

fn pair() -> Arc<CovSpec> {
    Arc::new(CovSpec::bivariate(RHO))
}

fn constant(p: &ParamPoly) -> Result<Rational> {
    p.as_constant().ok_or(Error::InvalidArgument("expected a parameter-free value"))
}

/// `10 U + H3(V)`.
pub fn h1h3_variable() -> GaussianPolynomial {
    let cov = pair();
    &GaussianPolynomial::coordinate(cov.clone(), 0).scale(&ParamPoly::int(10))
        + &GaussianPolynomial::hermite_of(cov, 1, 3)
}

/// `a U + H5(V)` with `a` symbolic.
pub fn h1h5_variable() -> GaussianPolynomial {
    let cov = pair();
    &GaussianPolynomial::coordinate(cov.clone(), 0).scale(&ParamPoly::var(A))
        + &GaussianPolynomial::hermite_of(cov, 1, 5)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CounterexampleReport {
    pub e2: Rational,
    pub e4_poly: ParamPoly,
    pub kappa4_poly: ParamPoly,
    pub rho_star_numeric: f64,
    pub rho_star_closed_form: f64,
    pub e6_poly: ParamPoly,
    pub e6_at_rho_star: f64,
    /// `15 E[X^2]^3`, the sixth moment of a centered Gaussian with the same variance.
    pub gaussian_sixth: Rational,
}

impl CounterexampleReport {
    pub fn three_e2_squared(&self) -> Rational {
        rat(3) * &self.e2 * &self.e2
    }

    pub fn kappa4_at_rho_star(&self) -> f64 {
        self.kappa4_poly.eval_f64(&[(RHO, self.rho_star_numeric)]).expect("univariate in rho")
    }

    /// `E[X^6](rho*) - 15 E[X^2]^3`.
    pub fn sixth_moment_gap(&self) -> f64 {
        self.e6_at_rho_star - to_f64(&self.gaussian_sixth)
    }
}

/// `(3/10) (t^{1/3} - 1 - t^{-1/3})` with `t = (sqrt 5 - 1) / 2`.
pub fn rho_star_closed_form() -> f64 {
    let t = (libm::sqrt(5.0) - 1.0) / 2.0;
    0.3 * (libm::cbrt(t) - 1.0 - libm::cbrt(1.0 / t))
}

pub fn counterexample_h1h3() -> Result<CounterexampleReport> {
    let x = h1h3_variable();
    let x2 = &x * &x;
    let x4 = &x2 * &x2;
    let e2 = constant(&expectation(&x2)?)?;
    let e4_poly = expectation(&x4)?;
    let e6_poly = expectation(&(&x4 * &x2))?;
    let kappa4_poly = cumulant(&x, 4)?;

    let roots = real_roots(&kappa4_poly, -1.0, 1.0, DEFAULT_ROOT_TOL)?;
    let &[rho_star_numeric] = roots.as_slice() else {
        return Err(Error::InvalidArgument("expected exactly one real root in [-1, 1]"));
    };
    let e6_at_rho_star = e6_poly.eval_f64(&[(RHO, rho_star_numeric)])?;
    let gaussian_sixth = rat(15) * &e2 * &e2 * &e2;
    Ok(CounterexampleReport {
        e2,
        e4_poly,
        kappa4_poly,
        rho_star_numeric,
        rho_star_closed_form: rho_star_closed_form(),
        e6_poly,
        e6_at_rho_star,
        gaussian_sixth,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1H5 {
    /// `E[X^2]`, a polynomial in `a`.
    pub e2: ParamPoly,
    /// `kappa4(X)`, a polynomial in `a` and `rho`.
    pub kappa4: ParamPoly,
}

pub fn kappa4_h1h5() -> Result<H1H5> {
    let x = h1h5_variable();
    Ok(H1H5 { e2: expectation(&(&x * &x))?, kappa4: cumulant(&x, 4)? })
}

/// True when `poly`, univariate, has only even powers, no constant term and
/// non-positive coefficients, and is not zero: then `poly(a) <= 0` with equality
/// exactly at `a = 0`.
pub fn nonpositive_with_sole_root_at_origin(poly: &ParamPoly) -> bool {
    poly.vars().len() == 1
        && poly.terms().all(|(e, c)| e[0] > 0 && e[0] % 2 == 0 && !c.is_positive())
}

fn nonnegative_even(poly: &ParamPoly) -> bool {
    poly.terms().all(|(e, c)| e.iter().all(|k| k % 2 == 0) && !c.is_negative())
}

#[derive(Clone, Debug, PartialEq)]
pub struct PositivityCertificate {
    /// `c1^2 - 4 c2 c0` of `kappa4 = c2 rho^2 + c1 rho + c0`, a polynomial in `a`.
    pub discriminant_poly: ParamPoly,
    pub leading: ParamPoly,
    pub constant_at_zero: Rational,
    /// Exact minimum of `kappa4` on the grid `a in [-10, 10]`, `rho in [-1, 1]`.
    pub grid_min: Rational,
    pub grid_points: usize,
    pub holds: bool,
}

pub const GRID_SIDE: usize = 201;

/// `kappa4(a U + H5(V)) > 0` for all `a` and `rho`: the discriminant in `rho` is
/// negative off `a = 0`, the leading coefficient is a non-negative even polynomial
/// in `a`, and at `a = 0` only the positive constant remains.
pub fn h1h5_positivity_certificate() -> Result<PositivityCertificate> {
    let kappa4 = kappa4_h1h5()?.kappa4;
    let mut cs = kappa4.coefficients_in(RHO);
    cs.resize(3, ParamPoly::zero());
    if kappa4.degree_in(RHO) > 2 {
        return Err(Error::InvalidArgument("kappa4 is not quadratic in rho"));
    }
    let (c0, c1, c2) = (&cs[0], &cs[1], &cs[2]);
    let discriminant_poly = &(c1 * c1) - &(&(c2 * c0) * &ParamPoly::int(4));
    let constant_at_zero = c0.eval_rational(&[(A, rat(0))])?;

    let steps = (GRID_SIDE - 1) as i64;
    let mut grid_min: Option<Rational> = None;
    for i in 0..=steps {
        let a = ratio(-10, 1) + ratio(20 * i, steps);
        for j in 0..=steps {
            let rho = ratio(-1, 1) + ratio(2 * j, steps);
            let v = kappa4.eval_rational(&[(A, a.clone()), (RHO, rho)])?;
            if grid_min.as_ref().is_none_or(|m| v < *m) {
                grid_min = Some(v);
            }
        }
    }
    let grid_min = grid_min.unwrap_or_else(Rational::zero);
    let holds = nonpositive_with_sole_root_at_origin(&discriminant_poly)
        && nonnegative_even(c2)
        && !c2.is_zero()
        && constant_at_zero.is_positive()
        && grid_min.is_positive();
    Ok(PositivityCertificate {
        discriminant_poly,
        leading: c2.clone(),
        constant_at_zero,
        grid_min,
        grid_points: GRID_SIDE * GRID_SIDE,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn rho_poly(cs: &[i64]) -> ParamPoly {
        let cs: Vec<_> = cs.iter().map(|&c| rat(c)).collect();
        ParamPoly::univariate(RHO, &cs)
    }

    #[test]
    fn h1h3_golden_values() {
        let r = counterexample_h1h3().unwrap();
        assert_eq!(r.e2, rat(106));
        assert_eq!(r.three_e2_squared(), rat(33708));
        assert_eq!(r.e4_poly, rho_poly(&[36948, 12960, 21600, 24000]));
        assert_eq!(r.kappa4_poly, rho_poly(&[3240, 12960, 21600, 24000]));
        assert_eq!(r.e6_poly, rho_poly(&[34330920, 62596800, 104328000, 102960000, 32400000]));
        assert_eq!(r.gaussian_sixth, rat(17865240));
    }

    #[test]
    fn h1h3_root_and_gap() {
        let r = counterexample_h1h3().unwrap();
        assert!((r.rho_star_numeric + 0.396655606387826).abs() < 1e-12);
        assert!((r.rho_star_numeric - r.rho_star_closed_form).abs() <= 1e-10);
        assert!(r.kappa4_at_rho_star().abs() <= 1e-9);
        assert!((r.e6_at_rho_star - 20292574.8838209).abs() < 1e-3);
        assert!(r.sixth_moment_gap() > 2.4e6);
    }

    #[test]
    fn h1h3_independent_case() {
        // at rho = 0 the cross covariance of the squares vanishes
        let r = counterexample_h1h3().unwrap();
        let at0 = r.kappa4_poly.eval_rational(&[(RHO, rat(0))]).unwrap();
        let cov = Arc::new(CovSpec::identity(1));
        let h3 = GaussianPolynomial::hermite_of(cov, 0, 3);
        assert_eq!(cumulant(&h3, 4).unwrap(), ParamPoly::constant(at0));
    }

    #[test]
    fn h1h5_values() {
        let h = kappa4_h1h5().unwrap();
        let a2 = ParamPoly::var(A).pow(2);
        assert_eq!(h.e2, &a2 + &ParamPoly::int(120));
        let ar = &ParamPoly::var(A) * &ParamPoly::var(RHO);
        let want = &(&(&ar * &ar).scale(&rat(7200)) + &ar.scale(&rat(864000))) + &ParamPoly::int(66960000);
        assert_eq!(h.kappa4, want);
        let at = |a: i64, r: i64| h.kappa4.eval_rational(&[(A, rat(a)), (RHO, rat(r))]).unwrap();
        assert_eq!(at(0, 1), rat(66960000));
        assert_eq!(at(1, -1), rat(66103200));
    }

    #[test]
    fn h1h5_certificate() {
        let c = h1h5_positivity_certificate().unwrap();
        assert_eq!(c.discriminant_poly, ParamPoly::univariate(A, &[rat(0), rat(0), rat(-1181952000000)]));
        assert_eq!(c.constant_at_zero, rat(66960000));
        assert!(c.grid_min.is_positive());
        assert_eq!(c.grid_points, 40401);
        assert!(c.holds);
    }

    #[test]
    fn sign_certificate_helper() {
        let a = ParamPoly::var(A);
        // -a^2 (357 a^2 + 2048000)
        let radicand = -(&a.pow(2) * &(&a.pow(2).scale(&rat(357)) + &ParamPoly::int(2048000)));
        assert!(nonpositive_with_sole_root_at_origin(&radicand));
        assert_eq!(radicand.eval_rational(&[(A, rat(1))]).unwrap(), rat(-2048357));
        assert!(!nonpositive_with_sole_root_at_origin(&a.pow(2)));
        assert!(!nonpositive_with_sole_root_at_origin(&(-&a.pow(3))));
        assert!(!nonpositive_with_sole_root_at_origin(&(&ParamPoly::int(-1) - &a.pow(2))));
        assert!(!nonpositive_with_sole_root_at_origin(&ParamPoly::zero()));
    }
}
