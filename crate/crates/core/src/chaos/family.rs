use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use num_integer::Roots;
use num_traits::Zero;

use super::element::ChaosElement;
use super::fourth::{kappa4_exact, max_contraction_norm_sq};
use super::malliavin::{gamma_variance, stein_bound_from, Distance};
use super::tensor::SymTensor;
use crate::algebra::{rat, to_f64, Rational};
use crate::error::{Error, Result};

/// Named normalized block families used by the convergence experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `xi_1 xi_2` blocks: `u_n = n^{-1/2} sum_i sym(e_{2i-1} (x) e_{2i})`.
    DyadicP2,
    /// `xi_1 xi_2 + xi_1 xi_2 xi_3` blocks: orders 2 and 3 on shared coordinates.
    MixedP2Q3,
    /// `xi_1 + xi_2 xi_3 + xi_4 xi_5 xi_6` blocks: orders 1, 2 and 3 on disjoint coordinates.
    IndependentBlocksM3,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [Self::DyadicP2, Self::MixedP2Q3, Self::IndependentBlocksM3];

    pub fn name(self) -> &'static str {
        match self {
            Self::DyadicP2 => "dyadic_p2",
            Self::MixedP2Q3 => "mixed_p2_q3",
            Self::IndependentBlocksM3 => "independent_blocks_M3",
        }
    }

    /// The unscaled block, a chaos element over its own few coordinates.
    pub fn block(self) -> ChaosElement {
        let kernels = match self {
            Self::DyadicP2 => alloc::vec![SymTensor::sym_basis(2, &[0, 1])],
            Self::MixedP2Q3 => {
                alloc::vec![SymTensor::sym_basis(3, &[0, 1]), SymTensor::sym_basis(3, &[0, 1, 2])]
            }
            Self::IndependentBlocksM3 => alloc::vec![
                SymTensor::sym_basis(6, &[0]),
                SymTensor::sym_basis(6, &[1, 2]),
                SymTensor::sym_basis(6, &[3, 4, 5]),
            ],
        };
        let dim = kernels[0].dim();
        ChaosElement::from_kernels(dim, kernels).expect("kernels share the block dimension")
    }

    pub fn at(self, copies: usize) -> Result<BlockFamily> {
        BlockFamily::new(self.block(), copies)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// `X_n = n^{-1/2} sum_{i=1}^n B(xi^(i))` for a block `B` and independent copies
/// `xi^(i)` of its coordinates.
///
/// Disjoint supports make every exact quantity additive over copies, so nothing of
/// size `n` is ever built: `Var X_n = Var B`, `kappa4(X_n) = kappa4(B) / n`,
/// `Var Gamma(X_n) = Var Gamma(B) / n` and `||u_n (x)_r u_n||^2 = ||u (x)_r u||^2 / n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFamily {
    block: ChaosElement,
    copies: usize,
}

impl BlockFamily {
    pub fn new(block: ChaosElement, copies: usize) -> Result<Self> {
        if copies == 0 {
            return Err(Error::InvalidArgument("a block family needs at least one copy"));
        }
        if block.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(Self { block, copies })
    }

    pub fn block(&self) -> &ChaosElement {
        &self.block
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    /// Total number of Gaussian coordinates, `n * block_dim`.
    pub fn dim(&self) -> usize {
        self.copies * self.block.dim()
    }

    /// `c = n^{-1/2}` as a float.
    pub fn scale(&self) -> f64 {
        1.0 / libm::sqrt(self.copies as f64)
    }

    fn per_copy(&self, x: Rational) -> Rational {
        x / rat(self.copies as i64)
    }

    pub fn variance(&self) -> Rational {
        self.block.variance()
    }

    pub fn kappa4(&self) -> Result<Rational> {
        Ok(self.per_copy(kappa4_exact(&self.block)?))
    }

    pub fn gamma_variance(&self) -> Result<Rational> {
        Ok(self.per_copy(gamma_variance(&self.block)?))
    }

    pub fn stein_bound(&self, which: Distance) -> Result<f64> {
        stein_bound_from(&self.variance(), &self.gamma_variance()?, which)
    }

    /// `max_r ||u_n (x)_r u_n||^2` of the order-`p` kernel; `None` if absent or `p = 1`.
    pub fn max_contraction_norm_sq(&self, p: usize) -> Option<Rational> {
        let u = self.block.component(p)?;
        max_contraction_norm_sq(u).map(|s| self.per_copy(s))
    }

    /// Largest contraction norm over all kernels; zero when every kernel has order 1.
    pub fn max_contraction_norm(&self) -> f64 {
        let max = self
            .block
            .orders()
            .into_iter()
            .filter_map(|p| self.max_contraction_norm_sq(p))
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        libm::sqrt(to_f64(&max))
    }

    /// The explicit kernel over all `n * block_dim` coordinates; only when `n` is a
    /// perfect square, so that `n^{-1/2}` is rational.
    pub fn to_chaos_element(&self) -> Result<ChaosElement> {
        let root = self.copies.sqrt();
        if root * root != self.copies {
            return Err(Error::InvalidArgument("n^{-1/2} is irrational"));
        }
        let c = Rational::new(1.into(), (root as i64).into());
        let (bd, dim) = (self.block.dim(), self.dim());
        let mut out = ChaosElement::zero(dim);
        for copy in 0..self.copies {
            for (p, u) in self.block.components() {
                let entries = u.coeffs().map(|(idx, v)| {
                    let shifted = idx.iter().map(|&i| i + copy * bd).collect();
                    (shifted, v * &c)
                });
                out = out.plus(&ChaosElement::single(SymTensor::from_entries(dim, p, entries)))?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::chaos::max_contraction_norms;

    #[test]
    fn dyadic_kappa4_is_six_over_n() {
        for (n, want) in [(2, rat(3)), (4, ratio(3, 2)), (16, ratio(3, 8)), (64, ratio(3, 32))] {
            let fam = FamilyKind::DyadicP2.at(n).unwrap();
            assert_eq!(fam.kappa4().unwrap(), want);
            assert_eq!(fam.variance(), rat(1));
        }
    }

    #[test]
    fn additivity_matches_explicit_kernel() {
        for kind in FamilyKind::ALL {
            let fam = kind.at(4).unwrap();
            let x = fam.to_chaos_element().unwrap();
            assert_eq!(x.variance(), fam.variance(), "{kind}");
            assert_eq!(kappa4_exact(&x).unwrap(), fam.kappa4().unwrap(), "{kind}");
            assert_eq!(gamma_variance(&x).unwrap(), fam.gamma_variance().unwrap(), "{kind}");
            let direct = x.orders().into_iter().map(|p| max_contraction_norms(x.component(p).unwrap()));
            let direct = direct.fold(0.0, f64::max);
            assert!((direct - fam.max_contraction_norm()).abs() < 1e-15, "{kind}");
        }
    }

    #[test]
    fn family_variances() {
        assert_eq!(FamilyKind::MixedP2Q3.at(3).unwrap().variance(), rat(2));
        assert_eq!(FamilyKind::IndependentBlocksM3.at(3).unwrap().variance(), rat(3));
    }

    #[test]
    fn dyadic_contraction_decay() {
        // ||u_n (x)_1 u_n||^2 = 1 / (8n)
        let fam = FamilyKind::DyadicP2.at(16).unwrap();
        assert_eq!(fam.max_contraction_norm_sq(2), Some(ratio(1, 128)));
        assert!(fam.to_chaos_element().is_ok());
        assert!(FamilyKind::DyadicP2.at(2).unwrap().to_chaos_element().is_err());
    }

    #[test]
    fn names_round_trip() {
        for kind in FamilyKind::ALL {
            assert_eq!(kind.name().parse::<FamilyKind>().unwrap(), kind);
        }
        assert_eq!("nope".parse::<FamilyKind>(), Err(Error::UnknownFamily("nope".to_string())));
    }
}
