//! Experiment reports and their CSV / JSON forms.
//!
//! Every row carries at most one of each provenance: an exact value, a Monte Carlo
//! estimate with its standard error, and a bound. Verdict rows name the tolerance
//! they were judged against; tolerances live in the report parameters.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use wiener_core::algebra::{ParamPoly, Rational};

use crate::montecarlo::Estimate;

/// Fractional digits kept when a rational has no finite decimal expansion.
pub const DECIMAL_DIGITS: usize = 40;

/// Decimal expansion of `q`, exact when it terminates and otherwise truncated
/// toward zero after [`DECIMAL_DIGITS`] fractional digits.
pub fn rational_decimal(q: &Rational) -> String {
    let mut out = String::new();
    if q.is_negative() {
        out.push('-');
    }
    let num = q.numer().abs();
    let den = q.denom().clone();
    let (int, mut rem) = (&num / &den, &num % &den);
    write!(out, "{int}").unwrap();
    if rem.is_zero() {
        return out;
    }
    out.push('.');
    let ten = BigInt::from(10);
    for _ in 0..DECIMAL_DIGITS {
        rem *= &ten;
        write!(out, "{}", &rem / &den).unwrap();
        rem %= &den;
        if rem.is_zero() {
            break;
        }
    }
    out
}

pub fn rational_fraction(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ExactValue {
    Rational { decimal: String, fraction: String },
    Polynomial { polynomial: String },
    /// A closed form or root evaluated in floating point.
    Float { value: f64 },
}

impl ExactValue {
    pub fn rational(q: &Rational) -> Self {
        Self::Rational { decimal: rational_decimal(q), fraction: rational_fraction(q) }
    }

    pub fn polynomial(p: &ParamPoly) -> Self {
        Self::Polynomial { polynomial: p.to_string() }
    }

    fn cell(&self) -> String {
        match self {
            Self::Rational { decimal, .. } => decimal.clone(),
            Self::Polynomial { polynomial } => polynomial.clone(),
            Self::Float { value } => value.to_string(),
        }
    }

    fn fraction(&self) -> Option<&str> {
        match self {
            Self::Rational { fraction, .. } => Some(fraction),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub suite: String,
    pub quantity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_value: Option<ExactValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
}

impl Row {
    fn new(suite: &str, quantity: &str, n: Option<u64>) -> Self {
        Self {
            suite: suite.into(),
            quantity: quantity.into(),
            n,
            exact_value: None,
            estimate: None,
            std_error: None,
            bound: None,
            verdict: None,
            tolerance: None,
        }
    }

    /// `quantity` or `quantity[n=..]`, unique within a report.
    pub fn key(&self) -> String {
        match self.n {
            Some(n) => format!("{}[n={n}]", self.quantity),
            None => self.quantity.clone(),
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    suite: &'a str,
    quantity: &'a str,
    n: Option<u64>,
    exact_value: Option<String>,
    estimate: Option<f64>,
    std_error: Option<f64>,
    bound: Option<f64>,
    verdict: Option<bool>,
    exact_fraction: Option<&'a str>,
    tolerance: Option<&'a str>,
}

/// CSV header, in column order.
pub const CSV_COLUMNS: [&str; 10] = [
    "suite",
    "quantity",
    "n",
    "exact_value",
    "estimate",
    "std_error",
    "bound",
    "verdict",
    "exact_fraction",
    "tolerance",
];

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub name: String,
    pub parameters: BTreeMap<String, Value>,
    pub tolerances: BTreeMap<String, f64>,
    pub rows: Vec<Row>,
}

impl ExperimentReport {
    pub fn new(name: &str) -> Self {
        Self { name: name.into(), parameters: BTreeMap::new(), tolerances: BTreeMap::new(), rows: Vec::new() }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters.insert(key.into(), serde_json::to_value(value).expect("serializable parameter"));
        self
    }

    pub fn tolerance(&mut self, name: &str, value: f64) -> &mut Self {
        self.tolerances.insert(name.into(), value);
        self
    }

    pub fn exact(&mut self, quantity: &str, n: Option<u64>, q: &Rational) -> &mut Self {
        self.exact_as(quantity, n, ExactValue::rational(q))
    }

    pub fn exact_as(&mut self, quantity: &str, n: Option<u64>, v: ExactValue) -> &mut Self {
        let mut row = Row::new(&self.name, quantity, n);
        row.exact_value = Some(v);
        self.rows.push(row);
        self
    }

    pub fn estimate(&mut self, quantity: &str, n: Option<u64>, e: Estimate) -> &mut Self {
        let mut row = Row::new(&self.name, quantity, n);
        row.estimate = Some(e.point);
        row.std_error = Some(e.std_error);
        self.rows.push(row);
        self
    }

    /// A Monte Carlo statistic without a standard error (W1, KS).
    pub fn statistic(&mut self, quantity: &str, n: Option<u64>, value: f64) -> &mut Self {
        let mut row = Row::new(&self.name, quantity, n);
        row.estimate = Some(value);
        self.rows.push(row);
        self
    }

    pub fn bound(&mut self, quantity: &str, n: Option<u64>, value: f64) -> &mut Self {
        let mut row = Row::new(&self.name, quantity, n);
        row.bound = Some(value);
        self.rows.push(row);
        self
    }

    /// Records a verdict judged against the named tolerance, which must already be registered.
    pub fn verdict(&mut self, quantity: &str, n: Option<u64>, pass: bool, tolerance: &str) -> &mut Self {
        assert!(self.tolerances.contains_key(tolerance), "unregistered tolerance `{tolerance}`");
        let mut row = Row::new(&self.name, quantity, n);
        row.verdict = Some(pass);
        row.tolerance = Some(tolerance.into());
        self.rows.push(row);
        self
    }

    pub fn verdicts(&self) -> impl Iterator<Item = (&Row, bool)> {
        self.rows.iter().filter_map(|r| r.verdict.map(|v| (r, v)))
    }

    pub fn passed(&self) -> bool {
        self.verdicts().all(|(_, v)| v)
    }

    pub fn failures(&self) -> Vec<String> {
        self.verdicts().filter(|(_, v)| !v).map(|(r, _)| r.key()).collect()
    }

    pub fn find(&self, quantity: &str, n: Option<u64>) -> Option<&Row> {
        self.rows.iter().find(|r| r.quantity == quantity && r.n == n)
    }

    pub fn append(&mut self, other: ExperimentReport) {
        for (k, v) in other.parameters {
            self.parameters.entry(format!("{}.{k}", other.name)).or_insert(v);
        }
        self.tolerances.extend(other.tolerances);
        self.rows.extend(other.rows);
    }

    /// JSON form: the row list plus keyed maps of exact values, estimates, bounds and verdicts.
    pub fn to_json(&self) -> Value {
        let mut exact = serde_json::Map::new();
        let mut estimates = serde_json::Map::new();
        let mut bounds = serde_json::Map::new();
        let mut verdicts = serde_json::Map::new();
        for r in &self.rows {
            let key = r.key();
            if let Some(v) = &r.exact_value {
                exact.insert(key.clone(), serde_json::to_value(v).unwrap());
            }
            if let Some(e) = r.estimate {
                estimates.insert(key.clone(), json!({ "point": e, "std_error": r.std_error }));
            }
            if let Some(b) = r.bound {
                bounds.insert(key.clone(), json!(b));
            }
            if let Some(v) = r.verdict {
                verdicts.insert(key, json!({ "pass": v, "tolerance": r.tolerance }));
            }
        }
        json!({
            "name": self.name,
            "parameters": self.parameters,
            "tolerances": self.tolerances,
            "exact_values": exact,
            "estimates": estimates,
            "bounds": bounds,
            "verdicts": verdicts,
            "passed": self.passed(),
            "rows": self.rows,
        })
    }

    pub fn write_json<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut w, &self.to_json())?;
        writeln!(w)
    }

    pub fn write_csv<W: io::Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
        out.write_record(CSV_COLUMNS)?;
        for r in &self.rows {
            out.serialize(CsvRow {
                suite: &r.suite,
                quantity: &r.quantity,
                n: r.n,
                exact_value: r.exact_value.as_ref().map(ExactValue::cell),
                estimate: r.estimate,
                std_error: r.std_error,
                bound: r.bound,
                verdict: r.verdict,
                exact_fraction: r.exact_value.as_ref().and_then(ExactValue::fraction),
                tolerance: r.tolerance.as_deref(),
            })?;
        }
        out.flush()?;
        Ok(())
    }

    /// Human-readable table for the terminal.
    pub fn summary_table(&self) -> String {
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                let est = match (r.estimate, r.std_error) {
                    (Some(e), Some(s)) => format!("{e:.6} ± {s:.2e}"),
                    (Some(e), None) => format!("{e:.6}"),
                    _ => String::new(),
                };
                [
                    r.quantity.clone(),
                    r.n.map(|n| n.to_string()).unwrap_or_default(),
                    r.exact_value.as_ref().map(|v| shorten(&v.cell(), 48)).unwrap_or_default(),
                    est,
                    r.bound.map(|b| format!("{b:.6}")).unwrap_or_default(),
                    match r.verdict {
                        Some(true) => "PASS".into(),
                        Some(false) => "FAIL".into(),
                        None => String::new(),
                    },
                ]
            })
            .collect();
        let header = ["quantity", "n", "exact", "estimate ± se", "bound", "verdict"];
        let mut widths = header.map(|h| h.chars().count());
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cols: &[String]| {
            let mut s = String::new();
            for (c, w) in cols.iter().zip(widths) {
                write!(s, "{c:<w$}  ").unwrap();
            }
            s.trim_end().to_string() + "\n"
        };
        let mut out = format!("== {} ==\n", self.name);
        out += &line(&header.map(String::from));
        for row in &cells {
            out += &line(row);
        }
        let total = self.verdicts().count();
        let failed = self.failures();
        writeln!(out, "{} of {total} verdicts passed", total - failed.len()).unwrap();
        out
    }
}

fn shorten(s: &str, max: usize) -> String {
    if s.chars().count() <= max {
        s.to_string()
    } else {
        s.chars().take(max - 3).collect::<String>() + "..."
    }
}
