use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::cov::CovSpec;
use super::polynomial::GaussianPolynomial;
use crate::algebra::{binomial, gaussian_moment_1d, int, rat, ParamPoly};
use crate::error::{Error, Result};

/// Largest total degree of a Gaussian monomial whose moment is computed.
pub const DEGREE_CAP: u32 = 40;

fn check_cap(degree: u32) -> Result<()> {
    if degree > DEGREE_CAP {
        Err(Error::DegreeCapExceeded { degree, cap: DEGREE_CAP })
    } else {
        Ok(())
    }
}

/// Isserlis recursion with a memo keyed on the multidegree.
///
/// `E[Z_i Z^b] = sum_j Cov(i, j) b_j E[Z^(b - e_j)]` where `i` is the first
/// coordinate with a positive exponent and `b` is the multidegree with one `Z_i`
/// removed. The memo lives as long as the engine, so one engine per expectation
/// shares work across all monomials of a polynomial.
pub struct MomentEngine<'a> {
    cov: &'a CovSpec,
    memo: BTreeMap<Vec<u32>, ParamPoly>,
}

impl<'a> MomentEngine<'a> {
    pub fn new(cov: &'a CovSpec) -> Self {
        Self { cov, memo: BTreeMap::new() }
    }

    pub fn moment(&mut self, multidegree: &[u32]) -> Result<ParamPoly> {
        if multidegree.len() != self.cov.dim() {
            return Err(Error::DimensionMismatch { left: multidegree.len(), right: self.cov.dim() });
        }
        let degree: u32 = multidegree.iter().sum();
        check_cap(degree)?;
        if degree % 2 == 1 {
            return Ok(ParamPoly::zero());
        }
        Ok(self.recurse(multidegree.to_vec()))
    }

    fn recurse(&mut self, alpha: Vec<u32>) -> ParamPoly {
        let Some(first) = alpha.iter().position(|&k| k > 0) else {
            return ParamPoly::one();
        };
        if let Some(hit) = self.memo.get(&alpha) {
            return hit.clone();
        }
        let mut rest = alpha.clone();
        rest[first] -= 1;
        let mut acc = ParamPoly::zero();
        let partners: Vec<(usize, ParamPoly)> =
            self.cov.neighbours(first).map(|(j, c)| (j, c.clone())).collect();
        for (j, c) in partners {
            let mult = rest[j];
            if mult == 0 {
                continue;
            }
            let mut reduced = rest.clone();
            reduced[j] -= 1;
            let sub = self.recurse(reduced);
            if !sub.is_zero() {
                acc += &(&sub * &c).scale(&rat(i64::from(mult)));
            }
        }
        self.memo.insert(alpha, acc.clone());
        acc
    }
}

/// `E[prod_i Z_i^alpha_i]` as an exact polynomial in the covariance parameters.
pub fn gaussian_moment(multidegree: &[u32], cov: &CovSpec) -> Result<ParamPoly> {
    MomentEngine::new(cov).moment(multidegree)
}

/// `E[U^n V^m]` for a unit-variance pair with correlation `param`, by conditioning on `U`.
///
/// Given `U = x`, `V` is `rho x + s G` with `s^2 = 1 - rho^2` and `G` standard, so
/// `E[V^m | U = x] = sum_k C(m, k) rho^k x^k s^(m-k) E[G^(m-k)]`; odd powers of
/// `G` vanish, leaving only even powers of `s`. Integrating `x^(n+k)` against the
/// standard Gaussian finishes the computation. Shares no code with the Isserlis
/// engine and serves as its oracle.
pub fn gaussian_moment_bivariate_conditional(n: u32, m: u32, param: &str) -> Result<ParamPoly> {
    check_cap(n + m)?;
    let rho = ParamPoly::var(param);
    let s2 = &ParamPoly::one() - &(&rho * &rho);
    let mut acc = ParamPoly::zero();
    for k in 0..=m {
        let gap = m - k;
        if gap % 2 == 1 {
            continue;
        }
        let outer = gaussian_moment_1d(n + k);
        let inner = gaussian_moment_1d(gap);
        let c = int(binomial(u64::from(m), u64::from(k)) * outer * inner);
        if c == rat(0) {
            continue;
        }
        let term = &rho.pow(k) * &s2.pow(gap / 2);
        acc += &term.scale(&c);
    }
    Ok(acc)
}

/// `E[f]`, exact.
pub fn expectation(f: &GaussianPolynomial) -> Result<ParamPoly> {
    check_cap(f.total_degree())?;
    let mut engine = MomentEngine::new(f.cov());
    let mut acc = ParamPoly::zero();
    for (e, c) in f.terms() {
        let m = engine.moment(e)?;
        if !m.is_zero() {
            acc += &(c * &m);
        }
    }
    Ok(acc)
}

/// Cumulant of order 1 to 6 from the centered moments of `f`.
pub fn cumulant(f: &GaussianPolynomial, order: u32) -> Result<ParamPoly> {
    if !(1..=6).contains(&order) {
        return Err(Error::CumulantOrder(order));
    }
    check_cap(order * f.total_degree())?;
    let mean = expectation(f)?;
    if order == 1 {
        return Ok(mean);
    }
    let centered = f - &GaussianPolynomial::constant(f.cov().clone(), mean);
    let p2 = &centered * &centered;
    let mu2 = expectation(&p2)?;
    let needs_third = matches!(order, 3 | 5 | 6);
    let p3 = needs_third.then(|| &p2 * &centered);
    let mu3 = match &p3 {
        Some(p) => expectation(p)?,
        None => ParamPoly::zero(),
    };
    let p4 = (order >= 4).then(|| &p2 * &p2);
    let c = |k: i64| ParamPoly::int(k);
    Ok(match order {
        2 => mu2,
        3 => mu3,
        4 => {
            let mu4 = expectation(p4.as_ref().unwrap())?;
            &mu4 - &(&c(3) * &(&mu2 * &mu2))
        }
        5 => {
            let mu5 = expectation(&(p4.as_ref().unwrap() * &centered))?;
            &mu5 - &(&c(10) * &(&mu3 * &mu2))
        }
        _ => {
            let p4 = p4.unwrap();
            let mu4 = expectation(&p4)?;
            let mu6 = expectation(&(&p4 * &p2))?;
            let t = &mu6 - &(&c(15) * &(&mu4 * &mu2));
            let t = &t - &(&c(10) * &(&mu3 * &mu3));
            &t + &(&c(30) * &mu2.pow(3))
        }
    })
}
