//! Symmetric kernels, multiple integrals and Malliavin operators over `R^d`.
//!
//! `H = R^d` with its standard basis, so `W(e_i) = xi_i` are independent standard
//! Gaussians and every kernel is a finite symmetric tensor. Norms are full-tensor
//! Euclidean norms (see [`SymTensor`]).

mod element;
mod family;
mod fourth;
mod malliavin;
mod tensor;

pub use element::{multiple_integral, multiple_integral_over, product_formula_expand, ChaosElement};
pub use family::{BlockFamily, FamilyKind};
pub use fourth::{
    contraction_norm_sq, kappa4_decomposition, kappa4_exact, max_contraction_norm_sq, max_contraction_norms,
    mixed_term_bound_check, Kappa4Decomposition, MixedTermCheck,
};
pub use malliavin::{
    gamma, gamma_variance, malliavin_derivative, ou_apply, ou_inverse, stein_bound, stein_bound_from, Distance,
    HVector,
};
pub use tensor::{
    contract, contract_sym, distinct_permutations, multiplicities, orbit_size, symmetrize, SymTensor, Tensor,
};
