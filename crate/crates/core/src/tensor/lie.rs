//! Lie derivatives of bivectors and the exactness property of pencils.

use super::metric::LinearMetric;
use crate::error::{Error, Result};
use crate::exact::{MultiPoly, PolyMatrix};

/// `(Lie_X h)^{ij} = X^s∂_s h^{ij} - h^{sj}∂_s X^i - h^{is}∂_s X^j`, with the
/// sum over the first `x.len()` variables.
pub fn lie_derivative_bivector(h: &PolyMatrix, x: &[MultiPoly]) -> Result<PolyMatrix> {
    let n = x.len();
    if h.rows() != n || h.cols() != n {
        return Err(Error::DimensionMismatch(format!("{}x{} bivector, vector field of length {n}", h.rows(), h.cols())));
    }
    let nv = h.nvars();
    if x.iter().any(|p| p.nvars() != nv) {
        return Err(Error::NvarsMismatch { left: nv, right: x.iter().map(MultiPoly::nvars).find(|&v| v != nv).unwrap_or(nv) });
    }
    // dx[s][i] = ∂_s X^i
    let dx: Vec<Vec<MultiPoly>> = (0..n).map(|s| x.iter().map(|p| p.partial(s)).collect()).collect();
    let dh: Vec<PolyMatrix> = (0..n).map(|s| h.map(|p| p.partial(s))).collect();
    Ok(PolyMatrix::from_fn(n, n, |i, j| {
        let mut acc = MultiPoly::zero(nv);
        for s in 0..n {
            acc.add_assign_ref(&x[s].mul_ref(dh[s].get(i, j)));
            acc.sub_assign_ref(&h.get(s, j).mul_ref(&dx[s][i]));
            acc.sub_assign_ref(&h.get(i, s).mul_ref(&dx[s][j]));
        }
        acc
    }))
}

/// Outcome of the exactness test of a flat pencil `g + λh`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exactness {
    /// Homogeneous linear part `g1` of `h`.
    pub linear_part: PolyMatrix,
    /// `X^i = -g1^{is} g_{sl} u^l`.
    pub field: Vec<MultiPoly>,
    /// `Lie_X g - g1`.
    pub lie_g_residual: PolyMatrix,
    /// `Lie_X g1`.
    pub lie_g1: PolyMatrix,
}

impl Exactness {
    pub fn holds(&self) -> bool {
        self.lie_g_residual.is_zero() && self.lie_g1.is_zero()
    }
}

/// Build the field `X` from the linear part of `h` and the covariant
/// constant metric, and measure `Lie_X g - g1` and `Lie_X g1`.
pub fn exactness(g: &LinearMetric, h: &LinearMetric) -> Result<Exactness> {
    if !g.is_constant() {
        return Err(Error::FirstMetricNotConstant);
    }
    if g.n() != h.n() || g.nvars() != h.nvars() {
        return Err(Error::DimensionMismatch("metrics of different shape".into()));
    }
    let n = g.n();
    let nv = g.nvars();
    let g1 = h.linear_part();
    let g_cov = super::conditions::constant_inverse(g)?;
    // w_s = g_{sl} u^l
    let w: Vec<MultiPoly> = (0..n)
        .map(|s| {
            let mut acc = MultiPoly::zero(nv);
            for l in 0..n {
                acc.add_assign_ref(&g_cov.get(s, l).mul_ref(&MultiPoly::var(nv, l)));
            }
            acc
        })
        .collect();
    let field: Vec<MultiPoly> = (0..n)
        .map(|i| {
            let mut acc = MultiPoly::zero(nv);
            for (s, ws) in w.iter().enumerate() {
                acc.sub_assign_ref(&g1.get(i, s).mul_ref(ws));
            }
            acc
        })
        .collect();
    let lie_g = lie_derivative_bivector(g.matrix(), &field)?;
    let lie_g1 = lie_derivative_bivector(&g1, &field)?;
    Ok(Exactness { lie_g_residual: lie_g.sub(&g1), lie_g1, linear_part: g1, field })
}

/// Whether the pencil `g + λh` is exact in the above sense.
pub fn exactness_check(g: &LinearMetric, h: &LinearMetric) -> Result<bool> {
    Ok(exactness(g, h)?.holds())
}
