//! Multi-dimensional operators given by a tuple of metrics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::metric::LinearMetric;
use crate::error::{Error, Result};
use crate::exact::{MultiPoly, Rational};

/// Seed for the random combination used to test generic non-degeneracy.
const GENERIC_SEED: u64 = 0x6e6f_6e64;
const GENERIC_TRIES: usize = 8;

/// A `d`-dimensional operator `Σ_α g^α(u) d/dx^α + ...`, described by its
/// metrics. All metrics share `n` and the variable layout. Individual
/// metrics may be degenerate, but a generic linear combination must not be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpec {
    n: usize,
    metrics: Vec<LinearMetric>,
}

impl OperatorSpec {
    pub fn new(metrics: Vec<LinearMetric>) -> Result<Self> {
        let first = metrics.first().ok_or_else(|| Error::InvalidMetric("operator needs at least one metric".into()))?;
        let (n, nv) = (first.n(), first.nvars());
        for (a, m) in metrics.iter().enumerate() {
            if m.n() != n || m.nvars() != nv {
                return Err(Error::DimensionMismatch(format!(
                    "metric {} has n={} over {} variables, metric 1 has n={n} over {nv}",
                    a + 1,
                    m.n(),
                    m.nvars()
                )));
            }
        }
        let spec = OperatorSpec { n, metrics };
        if !spec.generic_combination_nondegenerate() {
            return Err(Error::InvalidMetric("every linear combination of the metrics is degenerate".into()));
        }
        Ok(spec)
    }

    fn generic_combination_nondegenerate(&self) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(GENERIC_SEED);
        (0..GENERIC_TRIES).any(|_| {
            let mut acc = self.metrics[0].scale(&Rational::from(rng.gen_range(1..=97i64)));
            for m in &self.metrics[1..] {
                acc = acc.add(&m.scale(&Rational::from(rng.gen_range(-97..=97i64))));
            }
            !acc.det().is_zero()
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of independent variables `x^1..x^d`.
    pub fn d(&self) -> usize {
        self.metrics.len()
    }

    pub fn nvars(&self) -> usize {
        self.metrics[0].nvars()
    }

    pub fn metrics(&self) -> &[LinearMetric] {
        &self.metrics
    }

    pub fn metric(&self, alpha: usize) -> &LinearMetric {
        &self.metrics[alpha]
    }

    /// Determinant of `Σ_α s_α g^α`.
    pub fn combination_det(&self, scalars: &[Rational]) -> Result<MultiPoly> {
        if scalars.len() != self.d() {
            return Err(Error::LengthMismatch { expected: self.d(), got: scalars.len() });
        }
        let mut acc = self.metrics[0].scale(&scalars[0]);
        for (m, s) in self.metrics[1..].iter().zip(&scalars[1..]) {
            acc = acc.add(&m.scale(s));
        }
        Ok(acc.det())
    }

    /// Fix the formal parameters at rational values.
    pub fn specialize(&self, params: &[Rational]) -> Result<Self> {
        Self::new(self.metrics.iter().map(|m| m.specialize(params)).collect())
    }
}
