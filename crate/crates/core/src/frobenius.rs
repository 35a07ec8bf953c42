//! The trivial Frobenius manifold modelled on the cohomology ring of
//! `CP^{n-1}`, and its link to Mokhov's operator.
//!
//! In flat coordinates the metric is `g_{ij} = δ_{i+j,n+1}`, the product is
//! `c^i_{jk} = 1` iff `j + k - i = n`, the unity is `∂/∂u^n` and the Euler
//! field is `E = Σ (3k - 2n - 1) u^k ∂/∂u^k`.
//!
//! With this `E` the Euler scalings come out as `Lie_E e = -(n-1) e`,
//! `Lie_E c = (n-1) c` and `Lie_E g = (1-n) g`. The usual normalization
//! (`-e`, `c`, `(2-d) g` with `d = 3`) therefore holds for `E/(n-1)`. The
//! checker records the measured factors and tests the normalization for
//! `E/(n-1)`; the intersection form uses `E` itself.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Matrix, Monomial, MultiPoly, PolyMatrix, Rational};
use crate::tensor::LinearMetric;

/// Structure constants `c[i][j][k] = c^i_{jk}`, 0-based.
pub type StructureConstants = Vec<Vec<Vec<Rational>>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusData {
    pub n: usize,
    /// Covariant flat metric `g_{ij}`.
    #[serde(serialize_with = "serialize_matrix")]
    pub g: Matrix<Rational>,
    pub c: StructureConstants,
    /// Unity vector components (constant).
    pub e: Vec<Rational>,
    /// Weights `w_k` of the Euler field `E^k = w_k u^k`.
    pub euler_weights: Vec<Rational>,
    pub charge: Rational,
}

fn serialize_matrix<S: serde::Serializer>(m: &Matrix<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    m.to_rows().serialize(s)
}

impl FrobeniusData {
    /// `E^k` as polynomials in `u1..un`.
    pub fn euler_field(&self) -> Vec<MultiPoly> {
        self.euler_weights.iter().enumerate().map(|(k, w)| MultiPoly::var(self.n, k).scale(w)).collect()
    }

    /// The linear map `A` with `E^k = A^k_m u^m`.
    fn euler_matrix(&self) -> Matrix<Rational> {
        Matrix::from_fn(self.n, self.n, |i, j| if i == j { self.euler_weights[i].clone() } else { Rational::zero() })
    }

    /// `c_{ijk} = g_{il} c^l_{jk}`.
    pub fn lowered(&self) -> StructureConstants {
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| {
                                (0..n).fold(Rational::zero(), |acc, l| acc + self.g.get(i, l) * &self.c[l][j][k])
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// `F = (1/6) c_{ijk} u^i u^j u^k`.
    pub fn potential(&self) -> MultiPoly {
        let n = self.n;
        let low = self.lowered();
        let mut f = MultiPoly::zero(n);
        for (i, a) in low.iter().enumerate() {
            for (j, b) in a.iter().enumerate() {
                for (k, v) in b.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let m = Monomial::var(n, i).mul(&Monomial::var(n, j)).mul(&Monomial::var(n, k));
                    f.add_term(m, &(v * &Rational::frac(1, 6)));
                }
            }
        }
        f
    }
}

/// Build the Frobenius structure for `n >= 2`.
pub fn build_cp_frobenius(n: usize) -> Result<FrobeniusData> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange(format!("Frobenius structure needs n >= 2, got {n}")));
    }
    let g = Matrix::from_fn(n, n, |i, j| if i + j == n - 1 { Rational::one() } else { Rational::zero() });
    // 1-based j + k - i = n is 0-based j + k - i = n - 1.
    let c = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| if j + k == n - 1 + i { Rational::one() } else { Rational::zero() }).collect())
                .collect()
        })
        .collect();
    let mut e = vec![Rational::zero(); n];
    e[n - 1] = Rational::one();
    let euler_weights = (1..=n).map(|k| Rational::from(3 * k as i64 - 2 * n as i64 - 1)).collect();
    Ok(FrobeniusData { n, g, c, e, euler_weights, charge: Rational::from(3) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    /// First violating index tuple (1-based) with the two sides.
    pub witness: Option<String>,
}

/// Scalars `s` with `Lie_E T = s T`, or `None` when `Lie_E T` is not
/// proportional to `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerFactors {
    pub unity: Option<Rational>,
    pub product: Option<Rational>,
    pub metric: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub n: usize,
    pub checks: Vec<AxiomCheck>,
    /// Factors measured for the printed `E`.
    pub euler_factors: EulerFactors,
    /// Normalization applied to `E` for the Euler axioms (`1/(n-1)`).
    pub euler_normalization: Option<Rational>,
}

impl FrobeniusReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &str, witness: Option<String>) -> AxiomCheck {
    AxiomCheck { name: name.into(), passed: witness.is_none(), witness }
}

/// First index tuple in `0..n`^`rank` where `f` returns a violation.
fn first_violation(n: usize, rank: usize, mut f: impl FnMut(&[usize]) -> Option<String>) -> Option<String> {
    let mut idx = vec![0; rank];
    loop {
        if let Some(w) = f(&idx) {
            return Some(w);
        }
        let mut p = rank;
        loop {
            if p == 0 {
                return None;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < n {
                break;
            }
            idx[p] = 0;
        }
    }
}

fn one_based(idx: &[usize]) -> String {
    idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn mismatch(idx: &[usize], a: &Rational, b: &Rational) -> Option<String> {
    (a != b).then(|| format!("({}): {a} != {b}", one_based(idx)))
}

/// `Lie_E` of a constant vector, for a linear `E^k = A^k_m u^m`.
fn lie_vector(a: &Matrix<Rational>, v: &[Rational]) -> Vec<Rational> {
    let n = v.len();
    (0..n).map(|i| -(0..n).fold(Rational::zero(), |acc, j| acc + a.get(i, j) * &v[j])).collect()
}

/// `Lie_E` of constant `c^i_{jk}`.
fn lie_product(a: &Matrix<Rational>, c: &StructureConstants) -> StructureConstants {
    let n = c.len();
    let entry = |i: usize, j: usize, k: usize| {
        let mut s = Rational::zero();
        for m in 0..n {
            s = s - a.get(i, m) * &c[m][j][k] + &c[i][m][k] * a.get(m, j) + &c[i][j][m] * a.get(m, k);
        }
        s
    };
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| entry(i, j, k)).collect()).collect()).collect()
}

/// `Lie_E` of a constant covariant `g_{ij}`.
fn lie_covariant(a: &Matrix<Rational>, g: &Matrix<Rational>) -> Matrix<Rational> {
    let n = g.rows();
    Matrix::from_fn(n, n, |i, j| {
        (0..n).fold(Rational::zero(), |acc, m| acc + g.get(m, j) * a.get(m, i) + g.get(i, m) * a.get(m, j))
    })
}

/// `s` with `x = s y` entrywise, if it exists (`y` not all zero).
fn proportionality<'a>(x: impl Iterator<Item = &'a Rational>, y: impl Iterator<Item = &'a Rational>) -> Option<Rational> {
    let mut s: Option<Rational> = None;
    for (a, b) in x.zip(y) {
        if b.is_zero() {
            if !a.is_zero() {
                return None;
            }
            continue;
        }
        let q = a / b;
        match &s {
            None => s = Some(q),
            Some(t) if *t != q => return None,
            _ => {}
        }
    }
    s
}

fn flat3(c: &StructureConstants) -> Vec<Rational> {
    c.iter().flatten().flatten().cloned().collect()
}

/// Check the Frobenius axioms exactly and measure the Euler scalings.
pub fn check_frobenius_axioms(f: &FrobeniusData) -> FrobeniusReport {
    let n = f.n;
    let c = &f.c;
    let mut checks = Vec::new();

    checks.push(check("commutativity", first_violation(n, 3, |x| mismatch(x, &c[x[0]][x[1]][x[2]], &c[x[0]][x[2]][x[1]]))));

    let assoc = first_violation(n, 4, |x| {
        let (i, j, k, h) = (x[0], x[1], x[2], x[3]);
        let lhs = (0..n).fold(Rational::zero(), |acc, l| acc + &c[i][j][l] * &c[l][k][h]);
        let rhs = (0..n).fold(Rational::zero(), |acc, l| acc + &c[i][k][l] * &c[l][j][h]);
        mismatch(x, &lhs, &rhs)
    });
    checks.push(check("associativity", assoc));

    let inv = first_violation(n, 3, |x| {
        let (i, j, l) = (x[0], x[1], x[2]);
        let lhs = (0..n).fold(Rational::zero(), |acc, k| acc + f.g.get(i, k) * &c[k][j][l]);
        let rhs = (0..n).fold(Rational::zero(), |acc, k| acc + f.g.get(j, k) * &c[k][i][l]);
        mismatch(x, &lhs, &rhs)
    });
    checks.push(check("invariance", inv));

    // Unity: e^j c^i_{jk} = δ^i_k. It has constant components in the flat
    // coordinates of the constant metric, so it is flat.
    let unity = first_violation(n, 2, |x| {
        let (i, k) = (x[0], x[1]);
        let v = (0..n).fold(Rational::zero(), |acc, j| acc + &f.e[j] * &c[i][j][k]);
        let want = if i == k { Rational::one() } else { Rational::zero() };
        mismatch(x, &v, &want)
    });
    checks.push(check("flat-unity", unity));

    // Potential: third derivatives of F reproduce c_{ijk}.
    let low = f.lowered();
    let pot = f.potential();
    let potential = first_violation(n, 3, |x| {
        let d = pot.partial(x[0]).partial(x[1]).partial(x[2]);
        mismatch(x, &d.constant_term(), &low[x[0]][x[1]][x[2]])
    });
    checks.push(check("potential", potential));

    let a = f.euler_matrix();
    let le = lie_vector(&a, &f.e);
    let lc = flat3(&lie_product(&a, c));
    let lg = lie_covariant(&a, &f.g);
    let factors = EulerFactors {
        unity: proportionality(le.iter(), f.e.iter()),
        product: proportionality(lc.iter(), flat3(c).iter()),
        metric: proportionality(lg.iter(), f.g.iter()),
    };

    // Normalization E/(n-1): the scalings are linear in E.
    let norm = (n > 1).then(|| Rational::frac(1, n as i64 - 1));
    let scaled = |s: &Option<Rational>| match (s, &norm) {
        (Some(s), Some(k)) => Some(s * k),
        _ => None,
    };
    let two_minus_d = Rational::from(2) - f.charge.clone();
    let expect = |name: &str, got: Option<Rational>, want: Rational| {
        let w = match &got {
            Some(g) if *g == want => None,
            Some(g) => Some(format!("factor {g}, expected {want}")),
            None => Some("not proportional".to_string()),
        };
        check(name, w)
    };
    checks.push(expect("euler-unity", scaled(&factors.unity), -Rational::one()));
    checks.push(expect("euler-product", scaled(&factors.product), Rational::one()));
    checks.push(expect("euler-metric", scaled(&factors.metric), two_minus_d));

    FrobeniusReport { n, checks, euler_factors: factors, euler_normalization: norm }
}

/// `g̃^{ij} = g^{il} c^j_{lk} E^k` with the printed (unnormalized) `E`.
pub fn intersection_form(f: &FrobeniusData) -> Result<LinearMetric> {
    let n = f.n;
    let ginv = crate::exact::linalg::inverse(&f.g).ok_or(Error::IdenticallySingular)?;
    let e = f.euler_field();
    let m = PolyMatrix::from_fn(n, n, |i, j| {
        let mut acc = MultiPoly::zero(n);
        for l in 0..n {
            if ginv.get(i, l).is_zero() {
                continue;
            }
            for k in 0..n {
                let coef = ginv.get(i, l) * &f.c[j][l][k];
                if !coef.is_zero() {
                    acc.add_assign_ref(&e[k].scale(&coef));
                }
            }
        }
        acc
    });
    LinearMetric::new(n, m)
}

/// Structure constants of the cohomology ring of `CP^{n-1}` in the basis
/// `1, x, ..., x^{n-1}`: `c^i_{jk} = 1` iff `j + k - i = 1`.
pub fn cohomology_ring_constants(n: usize) -> StructureConstants {
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| if j + k == i { Rational::one() } else { Rational::zero() }).collect()).collect())
        .collect()
}

/// Constants in the relabelled basis: `out[σi][σj][σk] = c[i][j][k]`.
pub fn relabel(c: &StructureConstants, sigma: &[usize]) -> StructureConstants {
    let n = c.len();
    let mut out = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[sigma[i]][sigma[j]][sigma[k]] = c[i][j][k].clone();
            }
        }
    }
    out
}

/// The reversal `i -> n + 1 - i`.
pub fn reversal(n: usize) -> Vec<usize> {
    (0..n).rev().collect()
}

/// Whether reversing the basis of the cohomology ring gives the Frobenius
/// structure constants.
pub fn cohomology_ring_correspondence(n: usize) -> Result<bool> {
    let f = build_cp_frobenius(n)?;
    Ok(relabel(&cohomology_ring_constants(n), &reversal(n)) == f.c)
}
