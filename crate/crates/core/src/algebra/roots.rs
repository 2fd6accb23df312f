//! Real roots of univariate parameter polynomials on a bounded interval.

use alloc::format;
use alloc::vec::Vec;

use super::param_poly::ParamPoly;
use super::rational::to_f64;
use crate::error::{Error, Result};

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
/// Cells in the sign-change scan of each interval.
pub const ISOLATION_CELLS: usize = 1024;
const BISECTION_BUDGET: usize = 200;
const POLISH_BUDGET: usize = 32;

fn horner(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut value = 0.0;
    let mut slope = 0.0;
    for &c in coeffs.iter().rev() {
        slope = slope * x + value;
        value = value * x + c;
    }
    (value, slope)
}

/// All real roots of `poly` in `[lo, hi]`, ascending.
///
/// The interval is scanned on a fixed grid for sign changes, each bracket is
/// bisected down to `tol` and the midpoint is polished with Newton steps. Roots of
/// even multiplicity (no sign change) are only found when they hit a grid point.
pub fn real_roots(poly: &ParamPoly, lo: f64, hi: f64, tol: f64) -> Result<Vec<f64>> {
    if poly.vars().len() > 1 {
        return Err(Error::InvalidArgument("root finding needs a univariate polynomial"));
    }
    if !(lo < hi && tol > 0.0) {
        return Err(Error::InvalidArgument("root finding needs lo < hi and tol > 0"));
    }
    let var = match poly.vars().first() {
        Some(v) => v.clone(),
        None => return Err(Error::InvalidArgument("root finding needs degree >= 1")),
    };
    let coeffs: Vec<f64> = poly.coefficients_in(&var).iter().map(|c| {
        c.as_constant().map(|q| to_f64(&q)).unwrap_or(0.0)
    }).collect();

    let f = |x: f64| horner(&coeffs, x).0;
    let width = (hi - lo) / ISOLATION_CELLS as f64;
    let grid: Vec<f64> = (0..=ISOLATION_CELLS)
        .map(|k| if k == ISOLATION_CELLS { hi } else { lo + width * k as f64 })
        .collect();
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();

    let mut roots = Vec::new();
    for k in 0..=ISOLATION_CELLS {
        if values[k] == 0.0 {
            roots.push(grid[k]);
            continue;
        }
        if k == ISOLATION_CELLS || values[k + 1] == 0.0 {
            continue;
        }
        if values[k].signum() == values[k + 1].signum() {
            continue;
        }
        let (mut a, mut b) = (grid[k], grid[k + 1]);
        let mut fa = values[k];
        for _ in 0..BISECTION_BUDGET {
            if b - a <= tol {
                break;
            }
            let mid = 0.5 * (a + b);
            let fm = f(mid);
            if fm == 0.0 {
                a = mid;
                b = mid;
                break;
            }
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        roots.push(polish(&coeffs, 0.5 * (a + b), a - tol, b + tol, tol)?);
    }
    roots.sort_by(|x, y| x.total_cmp(y));
    Ok(roots)
}

fn polish(coeffs: &[f64], start: f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let mut x = start;
    for _ in 0..POLISH_BUDGET {
        let (value, slope) = horner(coeffs, x);
        if value == 0.0 {
            return Ok(x);
        }
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let step = value / slope;
        let next = x - step;
        if !(lo..=hi).contains(&next) {
            break;
        }
        x = next;
        if step.abs() <= 0.5 * tol {
            return Ok(x);
        }
    }
    Err(Error::RootPolishing(format!("{start}")))
}
