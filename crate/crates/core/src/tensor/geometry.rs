//! Backend-generic tensor formulas: Levi-Civita connection, curvature,
//! obstruction tensor, Nijenhuis torsion, Killing and linearity residuals.
//!
//! Index conventions: `b[i][j][k] = b^{ij}_k`, `gamma[i][j][k] = Γ^i_{jk}`,
//! `riemann[i][j][k][l] = R^i_{jkl}`.

use super::arr::Arr;
use super::backend::{sum, Backend, Scalar};
use crate::error::Result;
use crate::exact::{Matrix, MultiPoly, PolyMatrix, Rational};

pub struct ConnectionData<S> {
    /// Contravariant symbols `b^{ij}_k`.
    pub b: Arr<S>,
    /// Christoffel symbols `Γ^i_{jk}`.
    pub gamma: Arr<S>,
    /// Covariant metric `g_{ij}`.
    pub g_inv: Matrix<S>,
}

/// Levi-Civita connection of a contravariant metric.
///
/// `b^{ij}_k = ½[∂_k g^{ij} + (g^{is}∂_s g^{jb} - g^{js}∂_s g^{ib}) g_{bk}]`,
/// then `Γ^j_{sk} = -g_{si} b^{ij}_k`.
pub fn connection<B: Backend>(be: &B, g: &PolyMatrix) -> Result<ConnectionData<B::S>> {
    let n = be.n();
    let g_inv = be.inverse(g)?;
    if g.iter().all(|p| p.degree_in_first(n) == 0) {
        let zero = be.zero();
        return Ok(ConnectionData {
            b: Arr::from_fn(n, 3, |_| zero.clone()),
            gamma: Arr::from_fn(n, 3, |_| zero.clone()),
            g_inv,
        });
    }
    let nv = g.nvars();
    let dg: Vec<PolyMatrix> = (0..n).map(|s| g.map(|p| p.partial(s))).collect();
    // p[i][j][b] = g^{is} ∂_s g^{jb}
    let p = Arr::from_fn(n, 3, |x| {
        let (i, j, bb) = (x[0], x[1], x[2]);
        let mut acc = MultiPoly::zero(nv);
        for (s, d) in dg.iter().enumerate() {
            let a = g.get(i, s);
            let c = d.get(j, bb);
            if !a.is_zero() && !c.is_zero() {
                acc.add_assign_ref(&a.mul_ref(c));
            }
        }
        acc
    });
    let half = Rational::frac(1, 2);
    let b = Arr::from_fn(n, 3, |x| {
        let (i, j, k) = (x[0], x[1], x[2]);
        let mut acc = be.lift(dg[k].get(i, j));
        for bb in 0..n {
            let q = p.at3(i, j, bb) - p.at3(j, i, bb);
            if !q.is_zero() {
                acc = acc.add(&be.lift(&q).mul(g_inv.get(bb, k)));
            }
        }
        acc.scale(&half).simplify()
    });
    let gamma = Arr::from_fn(n, 3, |x| {
        let (j, s, k) = (x[0], x[1], x[2]);
        sum(&be.zero(), (0..n).map(|i| g_inv.get(s, i).mul(b.at3(i, j, k)))).neg().simplify()
    });
    Ok(ConnectionData { b, gamma, g_inv })
}

/// `R^i_{jkl} = ∂_kΓ^i_{lj} - ∂_lΓ^i_{kj} + Γ^i_{ks}Γ^s_{lj} - Γ^i_{ls}Γ^s_{kj}`.
pub fn riemann<B: Backend>(be: &B, c: &ConnectionData<B::S>) -> Arr<B::S> {
    let n = be.n();
    let g = &c.gamma;
    Arr::from_fn(n, 4, |x| {
        let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
        let mut acc = g.at3(i, l, j).partial(k).sub(&g.at3(i, k, j).partial(l));
        for s in 0..n {
            acc = acc.add(&g.at3(i, k, s).mul(g.at3(s, l, j)));
            acc = acc.sub(&g.at3(i, l, s).mul(g.at3(s, k, j)));
        }
        acc
    })
}

/// Curvature with all indices raised but one, written in the contravariant
/// symbols: `g^{qs}(∂_k b^{ij}_s - ∂_s b^{ij}_k) - b^{ai}_k b^{qj}_a + b^{qi}_p b^{pj}_k`.
/// It equals `-g^{ia} g^{lq} R^j_{akl}`, so it vanishes iff the metric is flat.
pub fn contravariant_curvature<B: Backend>(be: &B, g: &PolyMatrix, c: &ConnectionData<B::S>) -> Arr<B::S> {
    let n = be.n();
    let b = &c.b;
    let gl = be.lift_matrix(g);
    // db[i][j][s][k] = ∂_k b^{ij}_s
    let db = Arr::from_fn(n, 4, |x| b.at3(x[0], x[1], x[2]).partial(x[3]));
    Arr::from_fn(n, 4, |x| {
        let (q, i, j, k) = (x[0], x[1], x[2], x[3]);
        let mut acc = be.zero();
        for s in 0..n {
            let gqs = gl.get(q, s);
            if !gqs.is_zero() {
                let t = db.get(&[i, j, s, k]).sub(db.get(&[i, j, k, s]));
                acc = acc.add(&gqs.mul(&t));
            }
        }
        for a in 0..n {
            acc = acc.sub(&b.at3(a, i, k).mul(b.at3(q, j, a)));
            acc = acc.add(&b.at3(q, i, a).mul(b.at3(a, j, k)));
        }
        acc
    })
}

pub struct Obstruction<S> {
    /// `T^i_{jk} = Γ̃^i_{jk} - Γ^i_{jk}`
    pub t_mixed: Arr<S>,
    /// `T^{ijk} = g^{ir} g̃^{ks} T^j_{rs}`
    pub t_raised: Arr<S>,
}

pub fn obstruction<B: Backend>(
    be: &B,
    g: &PolyMatrix,
    h: &PolyMatrix,
    cg: &ConnectionData<B::S>,
    ch: &ConnectionData<B::S>,
) -> Obstruction<B::S> {
    let n = be.n();
    let t_mixed = Arr::from_fn(n, 3, |x| ch.gamma.at3(x[0], x[1], x[2]).sub(cg.gamma.at3(x[0], x[1], x[2])));
    let gl = be.lift_matrix(g);
    let hl = be.lift_matrix(h);
    let t_raised = Arr::from_fn(n, 3, |x| {
        let (i, j, k) = (x[0], x[1], x[2]);
        let mut acc = be.zero();
        for r in 0..n {
            if gl.get(i, r).is_zero() {
                continue;
            }
            let mut inner = be.zero();
            for s in 0..n {
                if !hl.get(k, s).is_zero() {
                    inner = inner.add(&hl.get(k, s).mul(t_mixed.at3(j, r, s)));
                }
            }
            acc = acc.add(&gl.get(i, r).mul(&inner));
        }
        acc.simplify()
    });
    Obstruction { t_mixed, t_raised }
}

/// Covariant derivative `∇_l T^{ijk}` of a rank-3 contravariant tensor,
/// indexed `[i][j][k][l]`.
pub fn covariant_derivative3<B: Backend>(be: &B, t: &Arr<B::S>, c: &ConnectionData<B::S>) -> Arr<B::S> {
    let n = be.n();
    let g = &c.gamma;
    Arr::from_fn(n, 4, |x| {
        let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
        let mut acc = t.at3(i, j, k).partial(l);
        for s in 0..n {
            acc = acc.add(&g.at3(i, l, s).mul(t.at3(s, j, k)));
            acc = acc.add(&g.at3(j, l, s).mul(t.at3(i, s, k)));
            acc = acc.add(&g.at3(k, l, s).mul(t.at3(i, j, s)));
        }
        acc
    })
}

/// `N^k_{ij} = L^s_i∂_sL^k_j - L^s_j∂_sL^k_i + L^k_s∂_jL^s_i - L^k_s∂_iL^s_j`,
/// indexed `[k][i][j]`; `l[(a, b)] = L^a_b`.
pub fn nijenhuis<S: Scalar>(l: &Matrix<S>, zero: &S) -> Arr<S> {
    let n = l.rows();
    let dl: Vec<Matrix<S>> = (0..n).map(|s| l.map(|x| x.partial(s))).collect();
    Arr::from_fn(n, 3, |x| {
        let (k, i, j) = (x[0], x[1], x[2]);
        let mut acc = zero.clone();
        for s in 0..n {
            acc = acc.add(&l.get(s, i).mul(dl[s].get(k, j)));
            acc = acc.sub(&l.get(s, j).mul(dl[s].get(k, i)));
            acc = acc.add(&l.get(k, s).mul(&dl[j].get(s, i).sub(dl[i].get(s, j))));
        }
        acc
    })
}

/// Polynomial Killing residual for `h` with respect to `g`:
/// `Σ_cyc (g^{is}∂_s h^{jk} - h^{is}∂_s g^{jk})`, fully symmetric.
pub fn killing_poly(n: usize, g: &PolyMatrix, h: &PolyMatrix) -> Arr<MultiPoly> {
    let nv = g.nvars();
    let dg: Vec<PolyMatrix> = (0..n).map(|s| g.map(|p| p.partial(s))).collect();
    let dh: Vec<PolyMatrix> = (0..n).map(|s| h.map(|p| p.partial(s))).collect();
    let term = |a: usize, b: usize, c: usize| {
        let mut acc = MultiPoly::zero(nv);
        for s in 0..n {
            let x = g.get(a, s);
            let y = dh[s].get(b, c);
            if !x.is_zero() && !y.is_zero() {
                acc.add_assign_ref(&x.mul_ref(y));
            }
            let x = h.get(a, s);
            let y = dg[s].get(b, c);
            if !x.is_zero() && !y.is_zero() {
                acc.sub_assign_ref(&x.mul_ref(y));
            }
        }
        acc
    };
    Arr::from_fn(n, 3, |x| {
        let (i, j, k) = (x[0], x[1], x[2]);
        let mut acc = term(i, j, k);
        acc.add_assign_ref(&term(j, i, k));
        acc.add_assign_ref(&term(k, i, j));
        acc
    })
}

/// Second covariant derivative `∇_b∇_a h^{ij}` of a bivector with respect to
/// the connection `c`, indexed `[b][a][i][j]`.
pub fn second_covariant_derivative<B: Backend>(be: &B, h: &PolyMatrix, c: &ConnectionData<B::S>) -> Arr<B::S> {
    let n = be.n();
    let g = &c.gamma;
    let hl = be.lift_matrix(h);
    // first[a][i][j] = ∇_a h^{ij}
    let first = Arr::from_fn(n, 3, |x| {
        let (a, i, j) = (x[0], x[1], x[2]);
        let mut acc = hl.get(i, j).partial(a);
        for s in 0..n {
            acc = acc.add(&g.at3(i, a, s).mul(hl.get(s, j)));
            acc = acc.add(&g.at3(j, a, s).mul(hl.get(i, s)));
        }
        acc
    });
    Arr::from_fn(n, 4, |x| {
        let (b, a, i, j) = (x[0], x[1], x[2], x[3]);
        let mut acc = first.at3(a, i, j).partial(b);
        for s in 0..n {
            acc = acc.sub(&g.at3(s, b, a).mul(first.at3(s, i, j)));
            acc = acc.add(&g.at3(i, b, s).mul(first.at3(a, s, j)));
            acc = acc.add(&g.at3(j, b, s).mul(first.at3(a, i, s)));
        }
        acc
    })
}

/// `L^i_j = h^{ik} g_{kj}` over a backend.
pub fn affinor_of<B: Backend>(be: &B, h: &PolyMatrix, g: &PolyMatrix) -> Result<Matrix<B::S>> {
    let n = be.n();
    let g_inv = be.inverse(g)?;
    let hl = be.lift_matrix(h);
    Ok(Matrix::from_fn(n, n, |i, j| {
        sum(&be.zero(), (0..n).filter(|&k| !hl.get(i, k).is_zero()).map(|k| hl.get(i, k).mul(g_inv.get(k, j))))
            .simplify()
    }))
}
