use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::tensor::{contract, multiplicities, symmetrize, SymTensor};
use crate::algebra::{binomial, factorial, hermite, int, ParamPoly, Rational};
use crate::error::{Error, Result};
use crate::wick::{CovSpec, GaussianPolynomial};

/// Centered random variable `X = sum_p I_p(u_p)` with finitely many chaos components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChaosElement {
    dim: usize,
    components: BTreeMap<usize, SymTensor>,
}

impl ChaosElement {
    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self { dim, components: BTreeMap::new() }
    }

    /// `I_p(u)` alone.
    pub fn single(u: SymTensor) -> Self {
        let mut x = Self::zero(u.dim());
        if !u.is_zero() {
            x.components.insert(u.order(), u);
        }
        x
    }

    /// Builds `sum_p I_p(u_p)`; kernels of equal order are added.
    pub fn from_kernels<I: IntoIterator<Item = SymTensor>>(dim: usize, kernels: I) -> Result<Self> {
        let mut x = Self::zero(dim);
        for u in kernels {
            x = x.plus(&Self::single_checked(dim, u)?)?;
        }
        Ok(x)
    }

    fn single_checked(dim: usize, u: SymTensor) -> Result<Self> {
        if u.dim() != dim {
            return Err(Error::DimensionMismatch { left: u.dim(), right: dim });
        }
        Ok(Self::single(u))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn component(&self, p: usize) -> Option<&SymTensor> {
        self.components.get(&p)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &SymTensor)> {
        self.components.iter().map(|(&p, u)| (p, u))
    }

    pub fn orders(&self) -> Vec<usize> {
        self.components.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let mut out = self.clone();
        for (&p, v) in &other.components {
            let sum = match out.components.get(&p) {
                Some(u) => u.add(v)?,
                None => v.clone(),
            };
            if sum.is_zero() {
                out.components.remove(&p);
            } else {
                out.components.insert(p, sum);
            }
        }
        Ok(out)
    }

    /// Multiplies the order-`p` kernel by `f(p)`.
    pub fn map_orders(&self, f: impl Fn(usize) -> Rational) -> Self {
        let mut out = Self::zero(self.dim);
        for (&p, u) in &self.components {
            let scaled = u.scale(&f(p));
            if !scaled.is_zero() {
                out.components.insert(p, scaled);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_orders(|_| c.clone())
    }

    /// `E[X^2] = sum_p p! ||u_p||^2`.
    pub fn variance(&self) -> Rational {
        self.components
            .iter()
            .fold(Rational::zero(), |acc, (&p, u)| acc + int(factorial(p as u64)) * u.norm_sq())
    }

    /// The polynomial in `xi_1..xi_d` that this element denotes.
    pub fn compile(&self) -> GaussianPolynomial {
        self.compile_over(&Arc::new(CovSpec::identity(self.dim)))
            .expect("identity covariance of matching dimension")
    }

    pub fn compile_over(&self, cov: &Arc<CovSpec>) -> Result<GaussianPolynomial> {
        let mut out = GaussianPolynomial::zero(cov.clone());
        for u in self.components.values() {
            out = &out + &multiple_integral_over(u, cov)?;
        }
        Ok(out)
    }
}

/// `I_p(u)` over independent standard coordinates.
///
/// The sorted index `a` with multiplicities `(a_1, .., a_d)` contributes
/// `u_a p! / prod(a_i!)` times `prod_i H_{a_i}(xi_i)`.
pub fn multiple_integral(u: &SymTensor) -> GaussianPolynomial {
    multiple_integral_over(u, &Arc::new(CovSpec::identity(u.dim())))
        .expect("identity covariance of matching dimension")
}

/// [`multiple_integral`] over a caller-supplied covariance, which must be the identity.
pub fn multiple_integral_over(u: &SymTensor, cov: &Arc<CovSpec>) -> Result<GaussianPolynomial> {
    if !cov.is_identity() {
        return Err(Error::NonIdentityCovariance);
    }
    if cov.dim() != u.dim() {
        return Err(Error::DimensionMismatch { left: u.dim(), right: cov.dim() });
    }
    let d = u.dim();
    let p_fact = int(factorial(u.order() as u64));
    let mut out = GaussianPolynomial::zero(cov.clone());
    for (idx, c) in u.coeffs() {
        let mults = multiplicities(idx);
        let denom = mults
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, &(_, k)| acc * factorial(u64::from(k)));
        let weight = c * &p_fact / int(denom);
        // expand prod_i H_{a_i}(xi_i) into monomials
        let mut partial: Vec<(Vec<u32>, Rational)> = vec![(vec![0; d], weight)];
        for &(i, k) in &mults {
            let h = hermite(k as usize);
            let mut next = Vec::new();
            for (e, w) in &partial {
                for (deg, hc) in h.coefficients().iter().enumerate() {
                    if hc.is_zero() {
                        continue;
                    }
                    let mut f = e.clone();
                    f[i] = deg as u32;
                    next.push((f, w * hc));
                }
            }
            partial = next;
        }
        for (e, w) in partial {
            out.add_term(e, &ParamPoly::constant(w));
        }
    }
    Ok(out)
}

/// Right-hand side of the product formula for `I_p(u) I_q(v)`:
/// `sum_r r! C(p, r) C(q, r) I_{p+q-2r}(u ~(x)_r v)`.
///
/// The order-0 term (only present when `p = q`) is returned separately as a scalar.
pub fn product_formula_expand(u: &SymTensor, v: &SymTensor) -> Result<(ChaosElement, Rational)> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch { left: u.dim(), right: v.dim() });
    }
    let (p, q) = (u.order(), v.order());
    let mut out = ChaosElement::zero(u.dim());
    let mut scalar = Rational::zero();
    for r in 0..=p.min(q) {
        let weight = int(factorial(r as u64) * binomial(p as u64, r as u64) * binomial(q as u64, r as u64));
        let c = contract(u, v, r)?;
        if p + q == 2 * r {
            scalar += weight * c.scalar().unwrap_or_default();
            continue;
        }
        let term = symmetrize(&c)?.scale(&weight);
        out = out.plus(&ChaosElement::single(term))?;
    }
    Ok((out, scalar))
}
