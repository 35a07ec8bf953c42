//! Contravariant metrics that are at most linear in the coordinates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Matrix, Monomial, MultiPoly, PolyMatrix, Rational};

/// A symmetric bivector `g^{ij} = c^{ij}_k u^k + g0^{ij}`.
///
/// Entries live in `n + nparams` variables: `u1..un` followed by formal
/// parameters. Coefficients may be polynomial in the parameters, but every
/// entry has degree at most one in the `u` block.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMetric {
    n: usize,
    entries: PolyMatrix,
}

impl LinearMetric {
    pub fn new(n: usize, entries: PolyMatrix) -> Result<Self> {
        Self::validate(n, &entries)?;
        for p in entries.iter() {
            if p.degree_in_first(n) > 1 {
                return Err(Error::InvalidMetric(format!("entry {p} is not linear in u1..u{n}")));
            }
        }
        Ok(LinearMetric { n, entries })
    }

    fn validate(n: usize, entries: &PolyMatrix) -> Result<()> {
        if entries.rows() != n || entries.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "metric is {}x{}, expected {n}x{n}",
                entries.rows(),
                entries.cols()
            )));
        }
        if n == 0 || entries.nvars() < n {
            return Err(Error::InvalidMetric("metric entries must involve at least u1..un".into()));
        }
        if entries.iter().any(|p| p.nvars() != entries.nvars()) {
            return Err(Error::InvalidMetric("entries over different variable counts".into()));
        }
        if !entries.is_symmetric() {
            return Err(Error::InvalidMetric("metric is not symmetric".into()));
        }
        Ok(())
    }

    /// Build from the constant part and the coefficients `c^{ij}_k`, given as
    /// 0-based `(i, j, k, value)` with both `(i, j)` and `(j, i)` filled.
    pub fn from_parts(g0: &Matrix<Rational>, linear: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let n = g0.rows();
        let mut m = PolyMatrix::from_rational(g0, n);
        for (i, j, k, c) in linear {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::IndexOutOfRange { index: i.max(j).max(k) + 1, nvars: n });
            }
            let t = MultiPoly::var(n, *k).scale(c);
            m[(*i, *j)].add_assign_ref(&t);
        }
        Self::new(n, m)
    }

    pub fn constant(g0: &Matrix<Rational>) -> Result<Self> {
        Self::from_parts(g0, &[])
    }

    /// Antidiagonal ones, `g^{ij} = δ^{i+j, n+1}`.
    pub fn antidiagonal(n: usize, nvars: usize) -> Self {
        let m = Matrix::from_fn(n, n, |i, j| {
            if i + j == n - 1 {
                MultiPoly::one(nvars)
            } else {
                MultiPoly::zero(nvars)
            }
        });
        LinearMetric { n, entries: m }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.entries.nvars()
    }

    pub fn nparams(&self) -> usize {
        self.nvars() - self.n
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        self.entries.get(i, j)
    }

    /// No dependence on `u1..un` (parameters allowed).
    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(|p| p.degree_in_first(self.n) == 0)
    }

    /// Same metric over more parameter variables.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        LinearMetric { n: self.n, entries: self.entries.map(|p| p.extend_vars(nvars)) }
    }

    /// The part independent of `u`, `g0^{ij}`.
    pub fn constant_part(&self) -> PolyMatrix {
        self.entries.map(|p| p.homogeneous_part(self.n, 0))
    }

    /// The homogeneous linear part `c^{ij}_k u^k`.
    pub fn linear_part(&self) -> PolyMatrix {
        self.entries.map(|p| p.homogeneous_part(self.n, 1))
    }

    /// `c^{ij}_k` as a polynomial in the parameters (0-based indices).
    pub fn linear_coefficient(&self, i: usize, j: usize, k: usize) -> MultiPoly {
        self.entry(i, j).partial(k)
    }

    /// Constant part as rationals; fails when it depends on parameters.
    pub fn constant_rational(&self) -> Result<Matrix<Rational>> {
        let c = self.constant_part();
        if c.iter().any(|p| !p.is_constant()) {
            return Err(Error::InvalidMetric("constant part depends on parameters".into()));
        }
        Ok(c.map(MultiPoly::constant_term))
    }

    pub fn det(&self) -> MultiPoly {
        self.entries.det().expect("square by construction")
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        LinearMetric { n: self.n, entries: self.entries.add(&o.entries) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LinearMetric { n: self.n, entries: self.entries.scale(c) }
    }

    pub fn scale_poly(&self, c: &MultiPoly) -> Self {
        LinearMetric { n: self.n, entries: self.entries.scale_poly(c) }
    }

    /// Substitute values for parameter variables (indices relative to the
    /// parameter block), keeping the variable count.
    pub fn substitute_params(&self, values: &[(usize, Rational)]) -> Self {
        let vals: Vec<(usize, Rational)> = values.iter().map(|(p, v)| (self.n + p, v.clone())).collect();
        LinearMetric { n: self.n, entries: self.entries.map(|e| e.substitute(&vals)) }
    }

    /// Substitute every parameter and drop the parameter variables.
    pub fn specialize(&self, params: &[Rational]) -> Self {
        assert_eq!(params.len(), self.nparams());
        let vals: Vec<(usize, Rational)> = params.iter().cloned().enumerate().collect();
        let s = self.substitute_params(&vals);
        LinearMetric { n: self.n, entries: s.entries.map(|e| e.restrict_vars(self.n)) }
    }

    pub fn to_serial(&self) -> MetricSerial {
        MetricSerial {
            entries: (0..self.n).map(|i| (0..self.n).map(|j| self.entry(i, j).to_string()).collect()).collect(),
        }
    }
}

/// Canonical text rendering of a metric, row by row.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MetricSerial {
    pub entries: Vec<Vec<String>>,
}

/// Block-diagonal sum of two square polynomial matrices over disjoint `u`
/// blocks; parameters of both are kept, `a`'s first.
pub fn block_diagonal(a: &PolyMatrix, na: usize, b: &PolyMatrix, nb: usize) -> PolyMatrix {
    let pa = a.nvars() - na;
    let pb = b.nvars() - nb;
    let nv = na + nb + pa + pb;
    let relabel_a = |p: &MultiPoly| {
        MultiPoly::from_terms(
            nv,
            p.terms().map(|(m, c)| {
                let mut e = Monomial::one(nv);
                for (v, &x) in m.exps().iter().enumerate() {
                    let t = if v < na { v } else { na + nb + (v - na) };
                    e.0[t] = x;
                }
                (e, c.clone())
            }),
        )
    };
    let relabel_b = |p: &MultiPoly| {
        MultiPoly::from_terms(
            nv,
            p.terms().map(|(m, c)| {
                let mut e = Monomial::one(nv);
                for (v, &x) in m.exps().iter().enumerate() {
                    let t = if v < nb { na + v } else { na + nb + pa + (v - nb) };
                    e.0[t] = x;
                }
                (e, c.clone())
            }),
        )
    };
    let n = na + nb;
    Matrix::from_fn(n, n, |i, j| {
        if i < na && j < na {
            relabel_a(a.get(i, j))
        } else if i >= na && j >= na {
            relabel_b(b.get(i - na, j - na))
        } else {
            MultiPoly::zero(nv)
        }
    })
}
