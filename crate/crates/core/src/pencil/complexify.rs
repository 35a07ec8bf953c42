//! Real form of a complex metric pair in `z^k = u^{2k-1} + i u^{2k}`.

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Matrix, MultiPoly, PolyMatrix, Rational};
use crate::tensor::{LinearMetric, OperatorSpec};

/// A symmetric complex bivector `G^{ij} = G0^{ij} + C^{ij}_k z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexLinearMetric {
    pub constant: Matrix<GaussianRational>,
    /// 0-based `(i, j, k, value)`; both `(i, j)` and `(j, i)` must be listed.
    pub linear: Vec<(usize, usize, usize, GaussianRational)>,
}

impl ComplexLinearMetric {
    pub fn m(&self) -> usize {
        self.constant.rows()
    }

    /// Real and imaginary parts of every entry as polynomials in `u1..u2m`.
    fn real_parts(&self) -> Result<(PolyMatrix, PolyMatrix)> {
        let m = self.m();
        let nv = 2 * m;
        let mut re = PolyMatrix::from_fn(m, m, |i, j| MultiPoly::constant(nv, self.constant.get(i, j).re.clone()));
        let mut im = PolyMatrix::from_fn(m, m, |i, j| MultiPoly::constant(nv, self.constant.get(i, j).im.clone()));
        for (i, j, k, c) in &self.linear {
            if *i >= m || *j >= m || *k >= m {
                return Err(Error::IndexOutOfRange { index: i.max(j).max(k) + 1, nvars: m });
            }
            // (p + iq)(x + iy) = (px - qy) + i(py + qx)
            let (x, y) = (MultiPoly::var(nv, 2 * k), MultiPoly::var(nv, 2 * k + 1));
            re[(*i, *j)].add_assign_ref(&(x.scale(&c.re) - y.scale(&c.im)));
            im[(*i, *j)].add_assign_ref(&(y.scale(&c.re) + x.scale(&c.im)));
        }
        Ok((re, im))
    }

    /// Each entry `a + ib` becomes the block `[[-b, a], [a, b]]`.
    pub fn realify(&self) -> Result<LinearMetric> {
        let m = self.m();
        let (re, im) = self.real_parts()?;
        let real = PolyMatrix::from_fn(2 * m, 2 * m, |r, c| {
            let (a, b) = (re.get(r / 2, c / 2), im.get(r / 2, c / 2));
            match (r % 2, c % 2) {
                (0, 0) => b.scale(&-Rational::one()),
                (1, 1) => b.clone(),
                _ => a.clone(),
            }
        });
        LinearMetric::new(2 * m, real)
    }
}

/// Real operator of twice the size from complex metrics over the same `m`.
pub fn complexify(metrics: &[ComplexLinearMetric]) -> Result<OperatorSpec> {
    let real = metrics.iter().map(ComplexLinearMetric::realify).collect::<Result<Vec<_>>>()?;
    OperatorSpec::new(real)
}
