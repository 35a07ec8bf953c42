//! Isometries of a constant metric and the Killing bivectors of degree at
//! most one.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::linalg;
use crate::exact::{Matrix, Monomial, MultiPoly, PolyMatrix, Rational};
use crate::tensor::{killing_residual, lie_derivative_bivector, LinearMetric};

/// Affine vector fields `X = A u + c` preserving a constant metric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KillingBasis {
    pub n: usize,
    /// Components `X^i` as polynomials in `u1..un`; rotations first, then
    /// the translations `∂_1..∂_n`.
    #[serde(serialize_with = "serialize_fields")]
    pub vectors: Vec<Vec<MultiPoly>>,
}

fn serialize_fields<S: serde::Serializer>(v: &[Vec<MultiPoly>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<Vec<String>> = v.iter().map(|x| x.iter().map(|p| p.to_string()).collect()).collect();
    strs.serialize(s)
}

impl KillingBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    /// Whether `x` lies in the span of the basis.
    pub fn contains(&self, x: &[MultiPoly]) -> bool {
        let rows: Vec<Vec<Rational>> = self.vectors.iter().map(|v| field_coords(self.n, v)).collect();
        let a = Matrix::from_rows(rows).expect("rectangular");
        let b = Matrix::from_rows(vec![field_coords(self.n, x)]).expect("rectangular");
        linalg::row_space_contains(&a, &b)
    }
}

/// Coordinates of an affine field: `n` constants then the `n x n` linear
/// coefficients.
fn field_coords(n: usize, x: &[MultiPoly]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + n * n);
    for p in x {
        out.push(p.constant_term());
    }
    for p in x {
        for s in 0..n {
            out.push(p.coefficient(&Monomial::var(p.nvars(), s)));
        }
    }
    out
}

fn constant_metric(g: &LinearMetric) -> Result<Matrix<Rational>> {
    if !g.is_constant() {
        return Err(Error::FirstMetricNotConstant);
    }
    g.constant_rational()
}

/// Solve `A g + g Aᵀ = 0` for the linear part; every translation is an
/// isometry of a constant metric.
pub fn killing_vector_basis(g: &LinearMetric) -> Result<KillingBasis> {
    let g0 = constant_metric(g)?;
    let n = g.n();
    if linalg::det(&g0).is_zero() {
        return Err(Error::InvalidMetric("Killing vectors need a non-degenerate metric".into()));
    }
    // unknown A[i][s] at column i*n + s; equation (i, j) for i <= j
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut row = vec![Rational::zero(); n * n];
            for s in 0..n {
                row[i * n + s] += g0.get(s, j);
                row[j * n + s] += g0.get(i, s);
            }
            rows.push(row);
        }
    }
    let sys = Matrix::from_rows(rows)?;
    let mut vectors = Vec::new();
    for v in linalg::nullspace(&sys) {
        let x: Vec<MultiPoly> = (0..n)
            .map(|i| {
                let terms = (0..n).map(|s| (Monomial::var(n, s), v[i * n + s].clone()));
                MultiPoly::from_terms(n, terms)
            })
            .collect();
        vectors.push(x);
    }
    for c in 0..n {
        vectors.push((0..n).map(|i| if i == c { MultiPoly::one(n) } else { MultiPoly::zero(n) }).collect());
    }
    let gm = PolyMatrix::from_rational(&g0, n);
    for x in &vectors {
        debug_assert!(lie_derivative_bivector(&gm, x)?.is_zero());
    }
    Ok(KillingBasis { n, vectors })
}

/// Symmetric bivector unknowns of degree at most one: for each `i <= j`, the
/// constant then the coefficients of `u1..un`.
fn bivector_unknowns(n: usize) -> Vec<(usize, usize, Option<usize>)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            out.push((i, j, None));
            for k in 0..n {
                out.push((i, j, Some(k)));
            }
        }
    }
    out
}

fn unit_bivector(n: usize, (i, j, k): (usize, usize, Option<usize>)) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(n, n);
    let p = match k {
        None => MultiPoly::one(n),
        Some(k) => MultiPoly::var(n, k),
    };
    m[(i, j)] = p.clone();
    m[(j, i)] = p;
    m
}

fn combine(n: usize, unknowns: &[(usize, usize, Option<usize>)], coeffs: &[Rational]) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(n, n);
    for (u, c) in unknowns.iter().zip(coeffs) {
        if !c.is_zero() {
            m = m.add(&unit_bivector(n, *u).scale(c));
        }
    }
    m
}

/// Coordinates of a bivector of degree at most one in the unknown ordering.
pub(crate) fn bivector_coords(n: usize, h: &PolyMatrix) -> Vec<Rational> {
    bivector_unknowns(n)
        .into_iter()
        .map(|(i, j, k)| match k {
            None => h.get(i, j).constant_term(),
            Some(k) => h.get(i, j).coefficient(&Monomial::var(h.nvars(), k)),
        })
        .collect()
}

/// Basis of the symmetric bivectors `h` of degree at most one with
/// vanishing Killing residual against the constant metric `g`.
pub fn killing_bivector_space(g: &LinearMetric) -> Result<Vec<PolyMatrix>> {
    constant_metric(g)?;
    let n = g.n();
    let g = LinearMetric::new(n, g.matrix().map(|p| p.restrict_vars(n)))?;
    let unknowns = bivector_unknowns(n);
    // with g constant the residual is constant; one column per unknown
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(unknowns.len());
    for u in &unknowns {
        let h = LinearMetric::new(n, unit_bivector(n, *u))?;
        cols.push(killing_residual(&g, &h).iter().map(|p| p.constant_term()).collect());
    }
    let neq = cols.first().map_or(0, Vec::len);
    let sys = Matrix::from_fn(neq, unknowns.len(), |r, c| cols[c][r].clone());
    Ok(linalg::nullspace(&sys).iter().map(|v| combine(n, &unknowns, v)).collect())
}

/// `X ⊙ Y` for every pair of Killing vectors, truncated to degree at most
/// one.
pub fn symmetrized_products(basis: &KillingBasis) -> Vec<PolyMatrix> {
    let n = basis.n;
    let mut out = Vec::new();
    for (a, x) in basis.vectors.iter().enumerate() {
        for y in &basis.vectors[a..] {
            let m = PolyMatrix::from_fn(n, n, |i, j| {
                let mut p = x[i].mul_ref(&y[j]);
                p.add_assign_ref(&x[j].mul_ref(&y[i]));
                let mut t = p.homogeneous_part(n, 0);
                t.add_assign_ref(&p.homogeneous_part(n, 1));
                t
            });
            if !m.is_zero() {
                out.push(m);
            }
        }
    }
    out
}

/// Whether two lists of bivectors of degree at most one span the same space.
pub fn same_span(n: usize, a: &[PolyMatrix], b: &[PolyMatrix]) -> bool {
    let to_mat = |v: &[PolyMatrix]| {
        let w = bivector_unknowns(n).len();
        let rows: Vec<Vec<Rational>> = v.iter().map(|h| bivector_coords(n, h)).collect();
        if rows.is_empty() {
            Matrix::filled(1, w, Rational::zero())
        } else {
            Matrix::from_rows(rows).expect("rectangular")
        }
    };
    let (ma, mb) = (to_mat(a), to_mat(b));
    linalg::row_space_contains(&ma, &mb) && linalg::row_space_contains(&mb, &ma)
}
