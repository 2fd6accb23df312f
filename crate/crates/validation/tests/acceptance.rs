//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use wiener::kernels::KernelSource;
use wiener::montecarlo::{clt_experiment, gaussian_distance_bound};
use wiener::report::ExperimentReport;
use wiener::suites::{bounds_suite, lemma_suite, product_and_isometry, PRODUCT_PAIRS};
use wiener_core::algebra::{rat, ParamPoly, Rational};
use wiener_core::chaos::FamilyKind;
use wiener_core::counterexamples::{
    counterexample_h1h3, h1h5_positivity_certificate, kappa4_h1h5, nonpositive_with_sole_root_at_origin, A, RHO,
};
use wiener_core::wick::{gaussian_moment, gaussian_moment_bivariate_conditional, CovSpec};

const SEED: u64 = 42;

type Check = Result<(bool, String), String>;

fn rho_poly(coeffs: &[i64]) -> ParamPoly {
    ParamPoly::univariate(RHO, &coeffs.iter().map(|&c| rat(c)).collect::<Vec<_>>())
}

fn a_rho_poly(terms: &[(u32, u32, i64)]) -> ParamPoly {
    ParamPoly::from_terms(&[A, RHO], terms.iter().map(|&(i, j, c)| (vec![i, j], rat(c))))
}

/// Verdict rows of `report` whose quantity is one of `names`: (all pass, count).
fn verdicts(report: &ExperimentReport, names: &[&str]) -> (bool, usize) {
    let rows: Vec<bool> = report.verdicts().filter(|(r, _)| names.contains(&r.quantity.as_str())).map(|(_, v)| v).collect();
    (!rows.is_empty() && rows.iter().all(|&v| v), rows.len())
}

fn failures(report: &ExperimentReport, names: &[&str]) -> String {
    let f: Vec<String> = report
        .verdicts()
        .filter(|(r, v)| !v && names.contains(&r.quantity.as_str()))
        .map(|(r, _)| r.key())
        .collect();
    if f.is_empty() {
        String::new()
    } else {
        format!("; failed: {}", f.join(", "))
    }
}

fn golden_values() -> Check {
    let r = counterexample_h1h3().map_err(|e| e.to_string())?;
    let h = kappa4_h1h5().map_err(|e| e.to_string())?;
    let checks = [
        ("E[X^2] = 106", r.e2 == rat(106)),
        ("3 E[X^2]^2 = 33708", r.three_e2_squared() == rat(33708)),
        ("E[X^4]", r.e4_poly == rho_poly(&[36948, 12960, 21600, 24000])),
        ("kappa4", r.kappa4_poly == rho_poly(&[3240, 12960, 21600, 24000])),
        ("E[X^6]", r.e6_poly == rho_poly(&[34330920, 62596800, 104328000, 102960000, 32400000])),
        ("E[(aU + H5)^2] = a^2 + 120", h.e2 == a_rho_poly(&[(2, 0, 1), (0, 0, 120)])),
        (
            "kappa4(aU + H5) = 97920a^2rho^2 + 864000a rho + 11340a^2 + 66960000",
            h.kappa4 == a_rho_poly(&[(2, 2, 97920), (1, 1, 864000), (2, 0, 11340), (0, 0, 66960000)]),
        ),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    let mut detail = format!("{}/{} exact equalities", checks.len() - failed.len(), checks.len());
    if !failed.is_empty() {
        detail += &format!("; mismatch: {}; computed kappa4(aU + H5) = {}", failed.join(", "), h.kappa4);
    }
    Ok((failed.is_empty(), detail))
}

fn root_consistency() -> Check {
    let r = counterexample_h1h3().map_err(|e| e.to_string())?;
    let k = r.kappa4_at_rho_star();
    let gap = (r.rho_star_numeric - r.rho_star_closed_form).abs();
    let pass = (r.rho_star_numeric + 0.39665).abs() <= 1e-4 && gap <= 1e-10 && k.abs() <= 1e-9;
    Ok((pass, format!("rho* = {:.12}, |closed - numeric| = {gap:.1e}, kappa4(rho*) = {k:.1e}", r.rho_star_numeric)))
}

fn sixth_moment_gap() -> Check {
    let r = counterexample_h1h3().map_err(|e| e.to_string())?;
    let pass = (r.e6_at_rho_star - 20292574.8838).abs() <= 0.01
        && r.gaussian_sixth == rat(17865240)
        && r.sixth_moment_gap() > 2.4e6;
    Ok((pass, format!("E[X^6](rho*) = {:.4}, gap = {:.4}", r.e6_at_rho_star, r.sixth_moment_gap())))
}

fn oracle_equivalence() -> Check {
    let cov = CovSpec::bivariate(RHO);
    let mut count = 0;
    for total in 0..=20u32 {
        for n in 0..=total {
            let m = total - n;
            let isserlis = gaussian_moment(&[n, m], &cov).map_err(|e| e.to_string())?;
            let conditional = gaussian_moment_bivariate_conditional(n, m, RHO).map_err(|e| e.to_string())?;
            if isserlis != conditional {
                return Ok((false, format!("E[U^{n} V^{m}] differs")));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} moments agree")))
}

const DECOMPOSITION: [&str; 4] =
    ["decomposition_identity", "odd_mixed_moments_vanish", "cov_squares_nonnegative", "kappa4_dominates_parts"];

fn decomposition_suite(report: &ExperimentReport) -> Check {
    let (pass, n) = verdicts(report, &DECOMPOSITION);
    Ok((pass, format!("{n} exact checks over 50 pairs{}", failures(report, &DECOMPOSITION))))
}

fn strict_positivity(report: &ExperimentReport) -> Check {
    let (pass, n) = verdicts(report, &["kappa4_positive"]);
    Ok((pass, format!("kappa4 > 0 on {n} pairs{}", failures(report, &["kappa4_positive"]))))
}

fn product_formula() -> Check {
    let mut source = KernelSource::new(SEED, 2);
    let mut bad = Vec::new();
    for i in 1..=PRODUCT_PAIRS {
        let (u, v) = source.any_pair(3, 3);
        let (product, isometry) = product_and_isometry(&u, &v).map_err(|e| e.to_string())?;
        if !(product && isometry) {
            bad.push(format!("pair {i} (p = {}, q = {})", u.order(), v.order()));
        }
    }
    Ok((bad.is_empty(), format!("{} pairs; failed: [{}]", PRODUCT_PAIRS, bad.join(", "))))
}

fn stein_chain() -> Check {
    let bounds = bounds_suite(SEED, &[4, 16, 64]).map_err(|e| e.to_string())?;
    let (gamma_ok, gamma_n) = verdicts(&bounds, &["gamma_mean_is_variance"]);
    let mut pass = gamma_ok;
    let mut detail = format!("E[Gamma] = Var on {gamma_n} elements");
    for kind in [FamilyKind::DyadicP2, FamilyKind::MixedP2Q3] {
        let r = clt_experiment(kind, &[4, 16, 64], 100_000, SEED).map_err(|e| e.to_string())?;
        let (ok, _) = verdicts(&r, &["w1_within_stein_bound"]);
        pass &= ok;
        let cols: Vec<String> = [4u64, 16, 64]
            .iter()
            .map(|&n| {
                let w1 = r.find("w1", Some(n)).and_then(|x| x.estimate).unwrap_or(f64::NAN);
                let b = r.find("stein_w1", Some(n)).and_then(|x| x.bound).unwrap_or(f64::NAN);
                format!("n={n}: {w1:.4} <= {b:.4}")
            })
            .collect();
        detail += &format!("; {kind} W1 {}", cols.join(", "));
    }
    Ok((pass, detail))
}

fn mixed_term() -> Check {
    let r = bounds_suite(SEED, &[4]).map_err(|e| e.to_string())?;
    let (ok, n) = verdicts(&r, &["mixed_term_inequality"]);
    let one = Some(wiener::report::ExactValue::rational(&rat(1)));
    let witness = r.find("mixed_term_lhs", Some(0)).map(|x| &x.exact_value) == Some(&one)
        && r.find("mixed_term_rhs", Some(0)).and_then(|x| x.bound) == Some(1.0);
    Ok((ok && witness, format!("{n} pairs including the witness (lhs = rhs = 1: {witness}){}", failures(&r, &["mixed_term_inequality"]))))
}

fn contraction_decay() -> Check {
    let grid = [4u64, 16, 64, 256];
    let r = bounds_suite(SEED, &[4, 16, 64, 256]).map_err(|e| e.to_string())?;
    let names = ["dyadic_kappa4_is_6_over_n", "dyadic_kappa4_decreasing", "dyadic_contraction_decreasing"];
    let (ok, _) = verdicts(&r, &names);
    let norms: Vec<String> = grid
        .iter()
        .map(|&n| match r.find("dyadic_max_contraction_norm", Some(n)).and_then(|x| x.exact_value.clone()) {
            Some(wiener::report::ExactValue::Float { value }) => format!("{value:.5}"),
            _ => "?".into(),
        })
        .collect();
    Ok((ok, format!("kappa4 = 6/n, max contraction norm [{}]{}", norms.join(", "), failures(&r, &names))))
}

fn clt_experiment_m3() -> Check {
    let grid = [4usize, 16, 64, 256];
    let r = clt_experiment(FamilyKind::IndependentBlocksM3, &grid, 100_000, SEED).map_err(|e| e.to_string())?;
    let ks: Vec<f64> =
        grid.iter().map(|&n| r.find("ks", Some(n as u64)).and_then(|x| x.estimate).unwrap_or(f64::NAN)).collect();
    let decreasing = ks.windows(2).all(|w| w[1] < w[0]);
    let last = ks[ks.len() - 1];
    let shown: Vec<String> = ks.iter().map(|k| format!("{k:.5}")).collect();
    Ok((
        decreasing && last < 0.02,
        format!("KS [{}] decreasing: {decreasing}, KS(256) < 0.02: {}", shown.join(", "), last < 0.02),
    ))
}

fn positivity_certificate() -> Check {
    // -a^2 (357 a^2 + 2048000)
    let printed = ParamPoly::univariate(A, &[rat(0), rat(0), rat(-2048000), rat(0), rat(-357)]);
    let c = h1h5_positivity_certificate().map_err(|e| e.to_string())?;
    let printed_ok = nonpositive_with_sole_root_at_origin(&printed);
    let computed_ok = nonpositive_with_sole_root_at_origin(&c.discriminant_poly);
    let grid_ok = c.grid_min > Rational::from_integer(0.into());
    Ok((
        printed_ok && computed_ok && grid_ok && c.holds,
        format!(
            "printed radicand <= 0, zero only at a = 0: {printed_ok}; computed discriminant {} <= 0: {computed_ok}; grid min {} > 0: {grid_ok}",
            c.discriminant_poly,
            wiener::report::rational_decimal(&c.grid_min)
        ),
    ))
}

fn gaussian_distance() -> Check {
    let same = gaussian_distance_bound(1.0, 1.0).map_err(|e| e.to_string())?;
    let b = gaussian_distance_bound(1.0, 2f64.sqrt()).map_err(|e| e.to_string())?;
    // TV: 2 |2 - 1| / 2; W1: sqrt(2/pi) |2 - 1| / sqrt(2)
    let tv = 1.0;
    let w = 1.0 / std::f64::consts::PI.sqrt();
    let pass = same.tv_bound == 0.0
        && same.w_bound == 0.0
        && (b.tv_bound - tv).abs() <= 1e-12
        && (b.w_bound - w).abs() <= 1e-12;
    Ok((pass, format!("(1, sqrt 2): TV {:.15}, W1 {:.15}", b.tv_bound, b.w_bound)))
}

fn run(id: &str, title: &str, budget: Duration, check: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = check();
    let took = start.elapsed();
    let (pass, detail) = match result {
        Ok((pass, detail)) => (pass, detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let in_time = took <= budget;
    let ok = pass && in_time;
    let timing = format!("{:.2}s / {}s", took.as_secs_f64(), budget.as_secs());
    let timing = if in_time { timing } else { format!("{timing} OVER BUDGET") };
    println!("{} {id:>2} {title} [{timing}] {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let mut all = true;
    all &= run("1", "exact golden values", s(10), golden_values);
    all &= run("2", "root consistency", s(1), root_consistency);
    all &= run("3", "non-Gaussian sixth moment", s(10), sixth_moment_gap);
    all &= run("4", "moment oracle equivalence", s(30), oracle_equivalence);

    let start = Instant::now();
    let lemma = lemma_suite(SEED);
    let shared = start.elapsed();
    let budget = s(120).saturating_sub(shared);
    match &lemma {
        Ok(report) => {
            all &= run("5", "fourth-cumulant decomposition", budget, || decomposition_suite(report));
            all &= run("6", "strict positivity of kappa4", budget, || strict_positivity(report));
        }
        Err(e) => {
            for (id, title) in [("5", "fourth-cumulant decomposition"), ("6", "strict positivity of kappa4")] {
                all &= run(id, title, budget, || Err(e.to_string()));
            }
        }
    }
    println!("      (criteria 5 and 6 share one suite run of {:.2}s)", shared.as_secs_f64());

    all &= run("7", "product formula and isometry", s(60), product_formula);
    all &= run("8", "Stein chain head", s(120), stein_chain);
    all &= run("9", "mixed-term inequality", s(60), mixed_term);
    all &= run("10", "contraction decay along dyadic_p2", s(60), contraction_decay);
    all &= run("11", "independent_blocks_M3 KS decay", s(120), clt_experiment_m3);
    all &= run("12", "positivity certificate", s(5), positivity_certificate);
    all &= run("13", "Gaussian distance formulas", s(1), gaussian_distance);

    if all {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: some criteria failed");
        ExitCode::FAILURE
    }
}
