use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{ParamPoly, Rational};
use crate::error::{Error, Result};

/// Tolerance of the pivoted factorization that certifies positive semidefiniteness.
pub const PSD_TOL: f64 = 1e-10;

/// Symmetric `d x d` covariance whose entries are parameter polynomials.
///
/// Only the upper triangle's nonzero entries are stored, so identity covariances
/// over hundreds of coordinates stay cheap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovSpec {
    dim: usize,
    entries: BTreeMap<(usize, usize), ParamPoly>,
}

impl CovSpec {
    /// Builds a covariance from a full matrix, rejecting asymmetric input.
    pub fn new(matrix: Vec<Vec<ParamPoly>>) -> Result<Self> {
        let dim = matrix.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("covariance dimension must be positive"));
        }
        let mut entries = BTreeMap::new();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { left: row.len(), right: dim });
            }
            for j in i..dim {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::AsymmetricCovariance(i, j));
                }
                if !row[j].is_zero() {
                    entries.insert((i, j), row[j].clone());
                }
            }
        }
        Ok(Self { dim, entries })
    }

    /// Independent standard Gaussian coordinates.
    pub fn identity(dim: usize) -> Self {
        assert!(dim > 0, "covariance dimension must be positive");
        let entries = (0..dim).map(|i| ((i, i), ParamPoly::one())).collect();
        Self { dim, entries }
    }

    /// Unit-variance pair `(U, V)` with correlation given by the parameter `name`.
    pub fn bivariate(name: &str) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert((0, 0), ParamPoly::one());
        entries.insert((1, 1), ParamPoly::one());
        entries.insert((0, 1), ParamPoly::var(name));
        Self { dim: 2, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&ParamPoly> {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.entries.get(&key)
    }

    /// Coordinates `j` with a nonzero covariance against `i`.
    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = (usize, &ParamPoly)> {
        self.entries.iter().filter_map(move |(&(a, b), c)| {
            if a == i {
                Some((b, c))
            } else if b == i {
                Some((a, c))
            } else {
                None
            }
        })
    }

    pub fn is_identity(&self) -> bool {
        self.entries.len() == self.dim
            && (0..self.dim).all(|i| self.entries.get(&(i, i)) == Some(&ParamPoly::one()))
    }

    pub fn evaluate(&self, assignment: &[(&str, f64)]) -> Result<Vec<Vec<f64>>> {
        let mut m = vec![vec![0.0; self.dim]; self.dim];
        for (&(i, j), c) in &self.entries {
            let v = c.eval_f64(assignment)?;
            m[i][j] = v;
            m[j][i] = v;
        }
        Ok(m)
    }

    pub fn evaluate_exact(&self, assignment: &[(&str, Rational)]) -> Result<Vec<Vec<Rational>>> {
        let mut m = vec![vec![Rational::default(); self.dim]; self.dim];
        for (&(i, j), c) in &self.entries {
            let v = c.eval_rational(assignment)?;
            m[i][j] = v.clone();
            m[j][i] = v;
        }
        Ok(m)
    }

    /// Lower-triangular-up-to-permutation factor `L` with `L L^T = Sigma` at the given point.
    ///
    /// Uses diagonal pivoting; a remaining pivot below `-PSD_TOL` or an off-diagonal
    /// Schur-complement entry above `PSD_TOL` after rank exhaustion rejects the matrix.
    #[allow(clippy::needless_range_loop)]
    pub fn factor(&self, assignment: &[(&str, f64)]) -> Result<Vec<Vec<f64>>> {
        let d = self.dim;
        let mut a = self.evaluate(assignment)?;
        let mut l = vec![vec![0.0; d]; d];
        let mut done = vec![false; d];
        for col in 0..d {
            let pivot = (0..d)
                .filter(|&i| !done[i])
                .max_by(|&i, &j| a[i][i].total_cmp(&a[j][j]))
                .unwrap();
            let diag = a[pivot][pivot];
            if diag < -PSD_TOL {
                return Err(Error::NotPositiveSemidefinite);
            }
            if diag <= PSD_TOL {
                let rest_ok = (0..d)
                    .filter(|&i| !done[i])
                    .all(|i| (0..d).filter(|&j| !done[j]).all(|j| a[i][j].abs() <= PSD_TOL));
                if !rest_ok {
                    return Err(Error::NotPositiveSemidefinite);
                }
                break;
            }
            let root = libm::sqrt(diag);
            done[pivot] = true;
            for i in 0..d {
                if !done[i] || i == pivot {
                    l[i][col] = if i == pivot { root } else { a[i][pivot] / root };
                }
            }
            for i in (0..d).filter(|&i| !done[i]) {
                for j in (0..d).filter(|&j| !done[j]) {
                    a[i][j] -= l[i][col] * l[j][col];
                }
            }
        }
        Ok(l)
    }

    pub fn check_psd(&self, assignment: &[(&str, f64)]) -> Result<()> {
        self.factor(assignment).map(|_| ())
    }
}
