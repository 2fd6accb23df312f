use std::sync::Arc;

use proptest::prelude::*;
use wiener_core::algebra::{gaussian_moment_1d, rat, ParamPoly, Rational};
use wiener_core::wick::{
    cumulant, expectation, gaussian_moment, gaussian_moment_bivariate_conditional, CovSpec, GaussianPolynomial,
};

#[test]
fn isserlis_matches_conditional_route() {
    let biv = CovSpec::bivariate("rho");
    for total in 0..=20u32 {
        for n in 0..=total {
            let m = total - n;
            let isserlis = gaussian_moment(&[n, m], &biv).unwrap();
            let conditional = gaussian_moment_bivariate_conditional(n, m, "rho").unwrap();
            assert_eq!(isserlis, conditional, "E[U^{n} V^{m}]");
        }
    }
}

#[test]
fn exchangeable_symmetry() {
    let biv = CovSpec::bivariate("rho");
    for n in 0..=10u32 {
        for m in 0..=10u32 {
            assert_eq!(gaussian_moment(&[n, m], &biv).unwrap(), gaussian_moment(&[m, n], &biv).unwrap());
        }
    }
}

#[test]
fn independence_at_zero_correlation() {
    let biv = CovSpec::bivariate("rho");
    for n in 0..=12u32 {
        for m in 0..=12u32 {
            let at0 = gaussian_moment(&[n, m], &biv).unwrap().eval_rational(&[("rho", rat(0))]).unwrap();
            let product = gaussian_moment_1d(n) * gaussian_moment_1d(m);
            assert_eq!(at0, Rational::from_integer(product));
        }
    }
}

fn small_poly(cov: &Arc<CovSpec>, coeffs: &[(Vec<u32>, i64)]) -> GaussianPolynomial {
    GaussianPolynomial::from_terms(cov.clone(), coeffs.iter().map(|(e, c)| (e.clone(), ParamPoly::int(*c))))
}

fn univariate_terms() -> impl Strategy<Value = Vec<(u32, i64)>> {
    prop::collection::vec((0u32..4, -3i64..=3), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn odd_total_degree_vanishes(a in 0u32..8, b in 0u32..8, c in 0u32..8) {
        prop_assume!((a + b + c) % 2 == 1);
        let cov = CovSpec::new(vec![
            vec![ParamPoly::int(1), ParamPoly::var("r"), ParamPoly::zero()],
            vec![ParamPoly::var("r"), ParamPoly::int(2), ParamPoly::var("s")],
            vec![ParamPoly::zero(), ParamPoly::var("s"), ParamPoly::int(1)],
        ]).unwrap();
        prop_assert!(gaussian_moment(&[a, b, c], &cov).unwrap().is_zero());
    }

    #[test]
    fn cumulants_add_over_independent_coordinates(f in univariate_terms(), g in univariate_terms(), order in 2u32..=4) {
        let cov = Arc::new(CovSpec::identity(2));
        let fx: Vec<_> = f.iter().map(|&(k, c)| (vec![k, 0], c)).collect();
        let gy: Vec<_> = g.iter().map(|&(k, c)| (vec![0, k], c)).collect();
        let (fp, gp) = (small_poly(&cov, &fx), small_poly(&cov, &gy));
        let sum = cumulant(&(&fp + &gp), order).unwrap();
        prop_assert_eq!(sum, &cumulant(&fp, order).unwrap() + &cumulant(&gp, order).unwrap());
    }

    #[test]
    fn second_cumulant_is_centered_square(f in univariate_terms(), g in univariate_terms()) {
        let cov = Arc::new(CovSpec::bivariate("rho"));
        let mut terms: Vec<_> = f.iter().map(|&(k, c)| (vec![k, 0], c)).collect();
        terms.extend(g.iter().map(|&(k, c)| (vec![1, k], c)));
        let p = small_poly(&cov, &terms);
        let centered = &p - &GaussianPolynomial::constant(cov.clone(), expectation(&p).unwrap());
        prop_assert_eq!(cumulant(&p, 2).unwrap(), expectation(&(&centered * &centered)).unwrap());
    }
}
