//! The named verification suites behind the command-line front end.

use num_traits::Signed;
use wiener_core::algebra::{factorial, rat, to_f64, Rational};
use wiener_core::chaos::{
    gamma, kappa4_decomposition, mixed_term_bound_check, multiple_integral, product_formula_expand, FamilyKind,
    SymTensor,
};
use wiener_core::counterexamples::{
    counterexample_h1h3, h1h3_variable, h1h5_positivity_certificate, kappa4_h1h5, RHO,
};
use wiener_core::wick::{expectation, GaussianPolynomial};
use wiener_core::algebra::ParamPoly;

use crate::kernels::KernelSource;
use crate::montecarlo::{
    empirical_kappa4, empirical_moment, gaussian_distance_bound, sample_polynomial, McError, GENERATOR_ID,
};
use crate::report::{ExactValue, ExperimentReport};

pub const LEMMA_PAIRS: usize = 50;
pub const PRODUCT_PAIRS: usize = 50;
pub const GAMMA_ELEMENTS: usize = 20;
pub const MIXED_TERM_PAIRS: usize = 25;
/// Standard errors allowed between a Monte Carlo estimate and its exact value.
pub const MC_SIGMAS: f64 = 4.0;

fn float(value: f64) -> ExactValue {
    ExactValue::Float { value }
}

fn within(estimate: f64, se: f64, exact: f64) -> bool {
    (estimate - exact).abs() <= MC_SIGMAS * se
}

/// `10 U + H3(V)`: exact moments, the root of `kappa4`, and a simulation at that root.
pub fn counterexample(samples: usize, seed: u64) -> Result<ExperimentReport, McError> {
    let r = counterexample_h1h3()?;
    let mut report = ExperimentReport::new("counterexample");
    report
        .param("variable", "10 U + H3(V), Corr(U, V) = rho")
        .param("samples", samples)
        .param("seed", seed)
        .param("generator_id", GENERATOR_ID)
        .tolerance("exact", 0.0)
        .tolerance("root_agreement", 1e-10)
        .tolerance("kappa4_at_root", 1e-9)
        .tolerance("sixth_moment_gap", 2.4e6)
        .tolerance("mc_sigmas", MC_SIGMAS);

    report
        .exact("e2", None, &r.e2)
        .exact("three_e2_squared", None, &r.three_e2_squared())
        .exact_as("e4_poly", None, ExactValue::polynomial(&r.e4_poly))
        .exact_as("kappa4_poly", None, ExactValue::polynomial(&r.kappa4_poly))
        .exact_as("e6_poly", None, ExactValue::polynomial(&r.e6_poly))
        .exact("gaussian_sixth", None, &r.gaussian_sixth)
        .exact_as("rho_star_numeric", None, float(r.rho_star_numeric))
        .exact_as("rho_star_closed_form", None, float(r.rho_star_closed_form))
        .exact_as("kappa4_at_rho_star", None, float(r.kappa4_at_rho_star()))
        .exact_as("e6_at_rho_star", None, float(r.e6_at_rho_star))
        .exact_as("sixth_moment_gap", None, float(r.sixth_moment_gap()))
        .verdict(
            "root_agreement",
            None,
            (r.rho_star_numeric - r.rho_star_closed_form).abs() <= 1e-10,
            "root_agreement",
        )
        .verdict("kappa4_vanishes_at_root", None, r.kappa4_at_rho_star().abs() <= 1e-9, "kappa4_at_root")
        .verdict("not_gaussian", None, r.sixth_moment_gap() > 2.4e6, "sixth_moment_gap");

    let s = sample_polynomial(&h1h3_variable(), &[(RHO, r.rho_star_numeric)], samples, seed)?;
    let e2 = empirical_moment(&s, 2)?;
    let k4 = empirical_kappa4(&s)?;
    report
        .estimate("e2_mc", None, e2)
        .estimate("kappa4_mc", None, k4)
        .verdict("e2_mc_consistent", None, within(e2.point, e2.std_error, to_f64(&r.e2)), "mc_sigmas")
        .verdict("kappa4_mc_consistent", None, within(k4.point, k4.std_error, 0.0), "mc_sigmas");
    Ok(report)
}

/// Fourth-cumulant decomposition and positivity on seeded random mixed-parity
/// pairs, plus the product formula and isometry on seeded random kernels.
pub fn lemma_suite(seed: u64) -> Result<ExperimentReport, McError> {
    let mut report = ExperimentReport::new("lemma-suite");
    report
        .param("seed", seed)
        .param("generator_id", GENERATOR_ID)
        .param("decomposition_pairs", LEMMA_PAIRS)
        .param("product_pairs", PRODUCT_PAIRS)
        .param("max_order", 4)
        .param("max_dim", 4)
        .tolerance("exact", 0.0);

    let mut source = KernelSource::new(seed, 1);
    for i in 1..=LEMMA_PAIRS {
        let (y, z) = source.mixed_parity_pair(4, 4);
        let dec = kappa4_decomposition(&y, &z)?;
        let key = Some(i as u64);
        report
            .exact("kappa4_x", key, &dec.k4_x)
            .exact("kappa4_y", key, &dec.k4_y)
            .exact("kappa4_z", key, &dec.k4_z)
            .exact("cov_squares", key, &dec.cov_sq)
            .verdict("decomposition_identity", key, dec.identity_holds(), "exact")
            .verdict("odd_mixed_moments_vanish", key, dec.odd_moments_vanish(), "exact")
            .verdict("cov_squares_nonnegative", key, !dec.cov_sq.is_negative(), "exact")
            .verdict("kappa4_dominates_parts", key, dec.dominates(), "exact")
            .verdict("kappa4_positive", key, dec.k4_x.is_positive(), "exact");
    }

    let mut source = KernelSource::new(seed, 2);
    for i in 1..=PRODUCT_PAIRS {
        let (u, v) = source.any_pair(3, 3);
        let key = Some(i as u64);
        let (product_ok, isometry_ok) = product_and_isometry(&u, &v)?;
        report
            .verdict("product_formula", key, product_ok, "exact")
            .verdict("isometry", key, isometry_ok, "exact");
    }
    Ok(report)
}

/// Whether `I_p(u) I_q(v)` equals its product-formula expansion, and whether
/// `E[I_p(u) I_q(v)] = delta_pq p! <u, v>`.
pub fn product_and_isometry(u: &SymTensor, v: &SymTensor) -> Result<(bool, bool), McError> {
    let direct = &multiple_integral(u) * &multiple_integral(v);
    let (expanded, scalar) = product_formula_expand(u, v)?;
    let compiled = expanded.compile();
    let rhs = &compiled + &GaussianPolynomial::constant(compiled.cov().clone(), ParamPoly::constant(scalar));
    let mean = expectation(&direct)?;
    let want = if u.order() == v.order() {
        Rational::from_integer(factorial(u.order() as u64)) * u.inner(v)?
    } else {
        rat(0)
    };
    Ok((direct == rhs, mean == ParamPoly::constant(want)))
}

/// Exact pieces of the Stein bound chain and the Gaussian-distance formulas.
pub fn bounds_suite(seed: u64, n_grid: &[usize]) -> Result<ExperimentReport, McError> {
    let mut report = ExperimentReport::new("bounds-suite");
    report
        .param("seed", seed)
        .param("generator_id", GENERATOR_ID)
        .param("gamma_elements", GAMMA_ELEMENTS)
        .param("mixed_term_pairs", MIXED_TERM_PAIRS)
        .param("n_grid", n_grid)
        .tolerance("exact", 0.0)
        .tolerance("float_formula", 1e-12);

    let mut source = KernelSource::new(seed, 3);
    for i in 1..=GAMMA_ELEMENTS {
        let x = source.element(3, 3, 3);
        let key = Some(i as u64);
        let mean = expectation(&gamma(&x))?;
        report
            .exact("variance", key, &x.variance())
            .verdict("gamma_mean_is_variance", key, mean == ParamPoly::constant(x.variance()), "exact");
    }

    let witness = (SymTensor::rank_one(1, 0, 1), SymTensor::rank_one(1, 0, 2));
    let mut source = KernelSource::new(seed, 4);
    let pairs = std::iter::once(witness).chain((0..MIXED_TERM_PAIRS).map(|_| source.increasing_pair(4, 3)));
    for (i, (u, v)) in pairs.enumerate() {
        let c = mixed_term_bound_check(&u, &v)?;
        let key = Some(i as u64);
        report
            .exact("mixed_term_lhs", key, &c.lhs)
            .bound("mixed_term_rhs", key, c.rhs)
            .verdict("mixed_term_inequality", key, c.holds, "exact");
    }

    let mut kappa4s = Vec::new();
    let mut norms = Vec::new();
    for &n in n_grid {
        let fam = FamilyKind::DyadicP2.at(n)?;
        let key = Some(n as u64);
        let k4 = fam.kappa4()?;
        let norm = fam.max_contraction_norm();
        report
            .exact("dyadic_kappa4", key, &k4)
            .exact_as("dyadic_max_contraction_norm", key, float(norm))
            .verdict("dyadic_kappa4_is_6_over_n", key, k4 == rat(6) / rat(n as i64), "exact");
        kappa4s.push(k4);
        norms.push(norm);
    }
    report
        .verdict("dyadic_kappa4_decreasing", None, kappa4s.windows(2).all(|w| w[1] < w[0]), "exact")
        .verdict("dyadic_contraction_decreasing", None, norms.windows(2).all(|w| w[1] < w[0]), "exact");

    let same = gaussian_distance_bound(1.0, 1.0)?;
    let apart = gaussian_distance_bound(1.0, 2f64.sqrt())?;
    let hand_w = (2.0 / std::f64::consts::PI).sqrt() / 2f64.sqrt();
    report
        .bound("gaussian_tv_equal_sigma", None, same.tv_bound)
        .bound("gaussian_w1_equal_sigma", None, same.w_bound)
        .bound("gaussian_tv_sigma_1_vs_sqrt2", None, apart.tv_bound)
        .bound("gaussian_w1_sigma_1_vs_sqrt2", None, apart.w_bound)
        .verdict("gaussian_bounds_vanish", None, same.tv_bound == 0.0 && same.w_bound == 0.0, "exact")
        .verdict(
            "gaussian_bounds_by_hand",
            None,
            (apart.tv_bound - 1.0).abs() <= 1e-12 && (apart.w_bound - hand_w).abs() <= 1e-12,
            "float_formula",
        );
    Ok(report)
}

/// Positivity of `kappa4(a U + H5(V))` over all `a` and `rho`.
pub fn positivity() -> Result<ExperimentReport, McError> {
    let h = kappa4_h1h5()?;
    let c = h1h5_positivity_certificate()?;
    let mut report = ExperimentReport::new("positivity");
    report
        .param("variable", "a U + H5(V), Corr(U, V) = rho")
        .param("grid", "a in [-10, 10], rho in [-1, 1], 201 x 201")
        .tolerance("exact", 0.0);
    report
        .exact_as("e2_poly", None, ExactValue::polynomial(&h.e2))
        .exact_as("kappa4_poly", None, ExactValue::polynomial(&h.kappa4))
        .exact_as("discriminant_in_rho", None, ExactValue::polynomial(&c.discriminant_poly))
        .exact_as("leading_coefficient", None, ExactValue::polynomial(&c.leading))
        .exact("kappa4_at_a_zero", None, &c.constant_at_zero)
        .exact("grid_min", None, &c.grid_min)
        .verdict("grid_min_positive", None, c.grid_min.is_positive(), "exact")
        .verdict("certificate_holds", None, c.holds, "exact");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positivity_passes() {
        let r = positivity().unwrap();
        assert!(r.passed());
        assert_eq!(r.find("kappa4_at_a_zero", None).unwrap().exact_value, Some(ExactValue::rational(&rat(66960000))));
    }

    #[test]
    fn bounds_suite_passes() {
        let r = bounds_suite(42, &[4, 16, 64, 256]).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let witness = r.find("mixed_term_lhs", Some(0)).unwrap();
        assert_eq!(witness.exact_value, Some(ExactValue::rational(&rat(1))));
        assert_eq!(r.find("mixed_term_rhs", Some(0)).unwrap().bound, Some(1.0));
    }

    #[test]
    fn lemma_suite_is_deterministic() {
        let a = lemma_suite(3).unwrap();
        assert!(a.passed(), "{:?}", a.failures());
        assert_eq!(a, lemma_suite(3).unwrap());
    }

    #[test]
    fn counterexample_small_run() {
        let r = counterexample(20_000, 1).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert_eq!(r.find("e2", None).unwrap().exact_value, Some(ExactValue::rational(&rat(106))));
    }
}
