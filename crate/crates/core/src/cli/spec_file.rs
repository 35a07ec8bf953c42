//! JSON operator files: `n`, `d`, optional variable names, and one
//! `{constant, linear}` object per metric. Indices are 1-based and rationals
//! are strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Matrix, Monomial, Rational};
use crate::tensor::{LinearMetric, OperatorSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSpecFile {
    pub n: usize,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub metrics: Vec<MetricFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricFile {
    /// `n × n` rows of rational strings.
    pub constant: Vec<Vec<Rational>>,
    #[serde(default)]
    pub linear: Vec<LinearTerm>,
}

/// `coeff · u^k` in entry `(i, j)`, and by symmetry in `(j, i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearTerm {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Rational,
}

impl OperatorSpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files serialize")
    }

    /// Validate and build the operator.
    pub fn to_spec(&self) -> Result<OperatorSpec> {
        let n = self.n;
        if n == 0 {
            return Err(Error::Parse("n must be positive".into()));
        }
        if self.metrics.len() != self.d {
            return Err(Error::Parse(format!("d = {} but {} metrics given", self.d, self.metrics.len())));
        }
        if let Some(v) = &self.variables {
            if v.len() != n {
                return Err(Error::Parse(format!("{} variable names for n = {n}", v.len())));
            }
        }
        let metrics = self
            .metrics
            .iter()
            .enumerate()
            .map(|(a, m)| m.to_metric(n).map_err(|e| Error::Parse(format!("metric {}: {e}", a + 1))))
            .collect::<Result<Vec<_>>>()?;
        OperatorSpec::new(metrics)
    }

    /// Serialize an operator without formal parameters. Linear terms are
    /// listed once per unordered pair `i ≤ j`.
    pub fn from_spec(spec: &OperatorSpec, description: Option<String>) -> Result<Self> {
        if spec.nvars() != spec.n() {
            return Err(Error::InvalidMetric(format!(
                "{} formal parameter(s) left; specialize them first",
                spec.nvars() - spec.n()
            )));
        }
        let n = spec.n();
        let metrics = spec.metrics().iter().map(|g| MetricFile::from_metric(g, n)).collect();
        Ok(OperatorSpecFile { n, d: spec.d(), variables: None, description, metrics })
    }
}

impl MetricFile {
    fn to_metric(&self, n: usize) -> Result<LinearMetric> {
        if self.constant.len() != n || self.constant.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("constant part must be {n}x{n}")));
        }
        let g0 = Matrix::from_rows(self.constant.clone())?;
        if !g0.is_symmetric() {
            return Err(Error::Parse("constant part is not symmetric".into()));
        }
        let mut seen: BTreeMap<(usize, usize, usize), &Rational> = BTreeMap::new();
        for t in &self.linear {
            for idx in [t.i, t.j, t.k] {
                if idx == 0 || idx > n {
                    return Err(Error::Parse(format!("index {idx} outside 1..={n}")));
                }
            }
            if seen.insert((t.i, t.j, t.k), &t.coeff).is_some() {
                return Err(Error::Parse(format!("duplicate linear term ({}, {}, {})", t.i, t.j, t.k)));
            }
        }
        // A term may be given in one or both orders; both orders must agree.
        let mut terms = Vec::new();
        for (&(i, j, k), &c) in &seen {
            if let Some(&other) = seen.get(&(j, i, k)) {
                if other != c {
                    return Err(Error::Parse(format!(
                        "asymmetric linear term: ({i}, {j}, {k}) = {c} but ({j}, {i}, {k}) = {other}"
                    )));
                }
                if i > j {
                    continue;
                }
            }
            terms.push((i - 1, j - 1, k - 1, c.clone()));
            if i != j {
                terms.push((j - 1, i - 1, k - 1, c.clone()));
            }
        }
        LinearMetric::from_parts(&g0, &terms)
    }

    fn from_metric(g: &LinearMetric, n: usize) -> Self {
        let constant = (0..n).map(|i| (0..n).map(|j| g.entry(i, j).constant_term()).collect()).collect();
        let mut linear = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let c = g.entry(i, j).coefficient(&Monomial::var(n, k));
                    if !c.is_zero() {
                        linear.push(LinearTerm { i: i + 1, j: j + 1, k: k + 1, coeff: c });
                    }
                }
            }
        }
        MetricFile { constant, linear }
    }
}
