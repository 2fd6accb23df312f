//! Multivariate polynomials in a handful of named symbolic parameters.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{rat, to_f64, Rational};
use crate::error::{Error, Result};

/// Exact polynomial over the rationals in named parameters such as `rho` and `a`.
///
/// The representation is canonical: variable names are sorted and every listed
/// variable occurs in at least one term, exponent vectors have one entry per
/// variable, and no stored coefficient is zero. Structural equality is therefore
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self { vars: Vec::new(), terms }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    /// The polynomial consisting of a single parameter.
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rational::one());
        Self { vars: vec![name.to_string()], terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs over `vars`.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by(|&i, &j| vars[i].cmp(vars[j]));
        let names: Vec<String> = order.iter().map(|&i| vars[i].to_string()).collect();
        let mut map: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector arity must match variables");
            let key: Vec<u32> = order.iter().map(|&i| exps[i]).collect();
            *map.entry(key).or_insert_with(Rational::zero) += c;
        }
        Self::normalized(names, map)
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn univariate(var: &str, coeffs: &[Rational]) -> Self {
        Self::from_terms(
            &[var],
            coeffs.iter().enumerate().map(|(k, c)| (vec![k as u32], c.clone())),
        )
    }

    fn normalized(vars: Vec<String>, mut terms: BTreeMap<Vec<u32>, Rational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..vars.len())
            .map(|i| terms.keys().any(|e| e[i] != 0))
            .collect();
        if used.iter().all(|&u| u) {
            return Self { vars, terms };
        }
        let keep: Vec<usize> = (0..vars.len()).filter(|&i| used[i]).collect();
        let vars = keep.iter().map(|&i| vars[i].clone()).collect();
        let terms = terms
            .into_iter()
            .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c))
            .collect();
        Self { vars, terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// The value of a constant polynomial, `None` if any parameter occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero))
    }

    /// Coefficient of the monomial with the given exponents, keyed by variable name.
    pub fn coeff(&self, monomial: &[(&str, u32)]) -> Rational {
        let mut key = vec![0u32; self.vars.len()];
        for &(name, e) in monomial {
            match self.vars.iter().position(|v| v == name) {
                Some(i) => key[i] = e,
                None if e == 0 => {}
                None => return Rational::zero(),
            }
        }
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Coefficients as a polynomial in `var`: entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: &str) -> Vec<ParamPoly> {
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            return vec![self.clone()];
        };
        let rest: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, v)| v.clone())
            .collect();
        let mut buckets: Vec<BTreeMap<Vec<u32>, Rational>> =
            vec![BTreeMap::new(); self.degree_in(var) as usize + 1];
        for (e, c) in &self.terms {
            let key: Vec<u32> = e
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != idx)
                .map(|(_, &x)| x)
                .collect();
            buckets[e[idx] as usize].insert(key, c.clone());
        }
        buckets
            .into_iter()
            .map(|b| Self::normalized(rest.clone(), b))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation; every parameter of the polynomial must be assigned.
    pub fn eval_rational(&self, assignment: &[(&str, Rational)]) -> Result<Rational> {
        let values = self.lookup(assignment)?;
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e) {
                for _ in 0..k {
                    t *= *v;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Floating evaluation by nested Horner in the first variable.
    pub fn eval_f64(&self, assignment: &[(&str, f64)]) -> Result<f64> {
        let values = self.lookup(assignment)?;
        let terms: Vec<(&[u32], f64)> =
            self.terms.iter().map(|(e, c)| (e.as_slice(), to_f64(c))).collect();
        Ok(horner(&terms, &values))
    }

    fn lookup<'a, T>(&self, assignment: &'a [(&str, T)]) -> Result<Vec<&'a T>> {
        self.vars
            .iter()
            .map(|v| {
                assignment
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|(_, x)| x)
                    .ok_or_else(|| Error::MissingParameter(v.clone()))
            })
            .collect()
    }

    /// Rewrites both operands over the union of their variables.
    fn aligned(&self, other: &Self) -> (Vec<String>, Vec<Vec<usize>>) {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars.sort();
        let map = |src: &[String]| -> Vec<usize> {
            src.iter().map(|v| vars.iter().position(|w| w == v).unwrap()).collect()
        };
        let maps = vec![map(&self.vars), map(&other.vars)];
        (vars, maps)
    }

    fn lift(e: &[u32], slots: &[usize], width: usize) -> Vec<u32> {
        let mut out = vec![0; width];
        for (&x, &s) in e.iter().zip(slots) {
            out[s] = x;
        }
        out
    }

    fn combine_add(&self, other: &Self, sign: bool) -> Self {
        if self.vars == other.vars {
            let mut terms = self.terms.clone();
            for (e, c) in &other.terms {
                let slot = terms.entry(e.clone()).or_insert_with(Rational::zero);
                if sign {
                    *slot += c;
                } else {
                    *slot -= c;
                }
            }
            return Self::normalized(self.vars.clone(), terms);
        }
        let (vars, maps) = self.aligned(other);
        let w = vars.len();
        let mut terms: BTreeMap<Vec<u32>, Rational> = self
            .terms
            .iter()
            .map(|(e, c)| (Self::lift(e, &maps[0], w), c.clone()))
            .collect();
        for (e, c) in &other.terms {
            let slot = terms.entry(Self::lift(e, &maps[1], w)).or_insert_with(Rational::zero);
            if sign {
                *slot += c;
            } else {
                *slot -= c;
            }
        }
        Self::normalized(vars, terms)
    }

    fn multiply(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_constant() {
            return other.scale(&self.as_constant().unwrap());
        }
        if other.is_constant() {
            return self.scale(&other.as_constant().unwrap());
        }
        let (vars, maps) = self.aligned(other);
        let w = vars.len();
        let left: Vec<(Vec<u32>, &Rational)> =
            self.terms.iter().map(|(e, c)| (Self::lift(e, &maps[0], w), c)).collect();
        let right: Vec<(Vec<u32>, &Rational)> =
            other.terms.iter().map(|(e, c)| (Self::lift(e, &maps[1], w), c)).collect();
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (ea, ca) in &left {
            for (eb, cb) in &right {
                let key: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *terms.entry(key).or_insert_with(Rational::zero) += *ca * *cb;
            }
        }
        Self::normalized(vars, terms)
    }
}

fn horner(terms: &[(&[u32], f64)], values: &[&f64]) -> f64 {
    if values.is_empty() {
        return terms.iter().map(|(_, c)| c).sum();
    }
    let x = *values[0];
    let top = terms.iter().map(|(e, _)| e[0]).max().unwrap_or(0);
    let mut acc = 0.0;
    for k in (0..=top).rev() {
        let slice: Vec<(&[u32], f64)> = terms
            .iter()
            .filter(|(e, _)| e[0] == k)
            .map(|(e, c)| (&e[1..], *c))
            .collect();
        acc = acc * x + horner(&slice, &values[1..]);
    }
    acc
}

impl From<Rational> for ParamPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for ParamPoly {
    fn from(c: i64) -> Self {
        Self::int(c)
    }
}

impl Add<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        self.combine_add(rhs, true)
    }
}

impl Sub<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        self.combine_add(rhs, false)
    }
}

impl Mul<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        self.multiply(rhs)
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: ParamPoly) -> ParamPoly {
        &self + &rhs
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: ParamPoly) -> ParamPoly {
        &self - &rhs
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        &self * &rhs
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

impl AddAssign<&ParamPoly> for ParamPoly {
    fn add_assign(&mut self, rhs: &ParamPoly) {
        *self = &*self + rhs;
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // ascending total degree reads like the printed golden polynomials
        let mut ordered: Vec<(&Vec<u32>, &Rational)> = self.terms.iter().collect();
        ordered.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), (*e).clone()));
        for (i, (e, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mag = c.abs();
            let monomial: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, v)| if k == 1 { v.clone() } else { alloc::format!("{v}^{k}") })
                .collect();
            if monomial.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{mag}*{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}
