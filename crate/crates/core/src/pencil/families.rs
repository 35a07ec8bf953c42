//! Linear-system solvers for the linear part of the second metric, and the
//! single-Jordan-block building blocks `μ^{(n;k)}` and `X_{(k)}`.

use crate::error::{Error, Result};
use crate::exact::linalg;
use std::collections::BTreeMap;

use crate::exact::{Matrix, Monomial, MultiPoly, PolyMatrix, Rational};
use crate::tensor::{killing_residual, nijenhuis_torsion, Affinor, LinearMetric};

use super::killing::same_span;

/// The linear bivectors `h` solving the flat-coordinate conditions for a
/// fixed constant pair `(g, g̃0)`, so that `g̃0 + Σ κ_i basis_i` is admissible
/// for every `κ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFamily {
    pub g: LinearMetric,
    pub g0: Matrix<Rational>,
    /// Homogeneous linear bivectors in `u1..un`.
    pub basis: Vec<PolyMatrix>,
    pub dimension: usize,
}

impl SolutionFamily {
    pub fn n(&self) -> usize {
        self.g.n()
    }

    /// `g̃0 + Σ κ_i basis_i` for concrete `κ`.
    pub fn member(&self, kappa: &[Rational]) -> Result<LinearMetric> {
        if kappa.len() != self.dimension {
            return Err(Error::LengthMismatch { expected: self.dimension, got: kappa.len() });
        }
        let n = self.n();
        let mut m = PolyMatrix::from_rational(&self.g0, n);
        for (b, k) in self.basis.iter().zip(kappa) {
            m = m.add(&b.scale(k));
        }
        LinearMetric::new(n, m)
    }

    /// The member with `κ` as formal parameters `x_{n+1}..x_{n+dim}`.
    pub fn formal_member(&self) -> Result<LinearMetric> {
        let (n, nv) = (self.n(), self.n() + self.dimension);
        let mut m = PolyMatrix::from_rational(&self.g0, nv);
        for (a, b) in self.basis.iter().enumerate() {
            let kappa = MultiPoly::var(nv, n + a);
            m = m.add(&b.map(|p| p.extend_vars(nv)).scale_poly(&kappa));
        }
        LinearMetric::new(n, m)
    }

    /// The first metric over the variables of [`Self::formal_member`].
    pub fn formal_first(&self) -> LinearMetric {
        self.g.extend_vars(self.n() + self.dimension)
    }

    /// Whether the basis spans the same space as `others`.
    pub fn spans(&self, others: &[PolyMatrix]) -> bool {
        same_span(self.n(), &self.basis, others)
    }
}

fn covariant(g: &LinearMetric) -> Result<(Matrix<Rational>, Matrix<Rational>)> {
    if !g.is_constant() {
        return Err(Error::FirstMetricNotConstant);
    }
    let g0 = g.constant_rational()?;
    let inv = linalg::inverse(&g0).ok_or_else(|| Error::InvalidMetric("first metric is degenerate".into()))?;
    Ok((g0, inv))
}

fn linear_unknowns(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                out.push((i, j, k));
            }
        }
    }
    out
}

fn unit_linear(n: usize, (i, j, k): (usize, usize, usize)) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(n, n);
    m[(i, j)] = MultiPoly::var(n, k);
    m[(j, i)] = MultiPoly::var(n, k);
    m
}

/// Full Nijenhuis torsion of `h g^{-1}` vanishes identically.
fn torsion_free(h: &PolyMatrix, gcov: &Matrix<Rational>) -> Result<bool> {
    let l = Affinor::new(h.mul(&PolyMatrix::from_rational(gcov, h.nvars()))?)?;
    Ok(nijenhuis_torsion(&l).iter().all(MultiPoly::is_zero))
}

/// Symmetric forms `B_r` with `N(Σ κ_a h_a)` having components
/// `Σ_ab B_r[a][b] κ_a κ_b`, one per torsion component and `u`-monomial.
fn torsion_forms(n: usize, basis: &[PolyMatrix], gcov: &Matrix<Rational>) -> Result<Vec<Matrix<Rational>>> {
    let d = basis.len();
    let nv = n + d;
    let mut h = PolyMatrix::zeros(n, nv);
    for (a, b) in basis.iter().enumerate() {
        h = h.add(&b.map(|p| p.extend_vars(nv)).scale_poly(&MultiPoly::var(nv, n + a)));
    }
    let l = Affinor::new(h.mul(&PolyMatrix::from_rational(gcov, nv))?)?;
    let mut forms: BTreeMap<(usize, Vec<u32>), Matrix<Rational>> = BTreeMap::new();
    for (c, p) in nijenhuis_torsion(&l).iter().enumerate() {
        for (m, coef) in p.terms() {
            let e = m.exps();
            let ks: Vec<usize> = (0..d).flat_map(|a| std::iter::repeat(a).take(e[n + a] as usize)).collect();
            let form = forms.entry((c, e[..n].to_vec())).or_insert_with(|| Matrix::filled(d, d, Rational::zero()));
            match ks.as_slice() {
                [a, b] if a == b => form[(*a, *a)] += coef,
                [a, b] => {
                    let half = coef * &Rational::frac(1, 2);
                    form[(*a, *b)] += &half;
                    form[(*b, *a)] += &half;
                }
                _ => return Err(Error::NonLinearSolutionSet("torsion is not quadratic in the family parameters".into())),
            }
        }
    }
    Ok(forms.into_values().collect())
}

/// Forms scaled to integer entries, duplicates and zeros dropped.
fn integer_forms(forms: &[Matrix<Rational>]) -> Vec<Vec<Vec<i128>>> {
    let mut out: Vec<Vec<Vec<i128>>> = Vec::new();
    for f in forms {
        let den = f.iter().fold(num_bigint::BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        let scaled: Option<Vec<Vec<i128>>> = f
            .to_rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let v = x.numer() * (&den / x.denom());
                        i128::try_from(v).ok()
                    })
                    .collect()
            })
            .collect();
        if let Some(m) = scaled {
            if m.iter().flatten().any(|&x| x != 0) && !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

fn on_all_quadrics(forms: &[Vec<Vec<i128>>], x: &[i128]) -> bool {
    forms.iter().all(|b| {
        let mut acc = 0i128;
        for (a, row) in b.iter().enumerate() {
            if x[a] != 0 {
                acc += x[a] * row.iter().zip(x).map(|(p, q)| p * q).sum::<i128>();
            }
        }
        acc == 0
    })
}

/// `{y : B_r(x, y) = 0 for all r}`, as a basis.
fn tangent_space(forms: &[Matrix<Rational>], x: &[Rational]) -> Vec<Vec<Rational>> {
    let d = x.len();
    let rows: Vec<Vec<Rational>> = forms
        .iter()
        .map(|b| (0..d).map(|c| (0..d).map(|a| &x[a] * b.get(a, c)).sum()).collect())
        .filter(|r: &Vec<Rational>| r.iter().any(|v| !v.is_zero()))
        .collect();
    if rows.is_empty() {
        return linalg::identity::<Rational>(d).to_rows();
    }
    linalg::nullspace(&Matrix::from_rows(rows).expect("rectangular"))
}

fn totally_isotropic(forms: &[Matrix<Rational>], w: &[Vec<Rational>]) -> bool {
    let d = w.first().map_or(0, Vec::len);
    forms.iter().all(|b| {
        w.iter().all(|x| {
            let bx: Vec<Rational> = (0..d).map(|c| (0..d).map(|a| &x[a] * b.get(a, c)).sum()).collect();
            w.iter().all(|y| bx.iter().zip(y).map(|(p, q)| p * q).sum::<Rational>().is_zero())
        })
    })
}

/// Points tried in the search for the largest linear component.
const COMPONENT_CANDIDATES: usize = 60_000;

/// Largest linear subspace of `{x : x^T B_r x = 0}` found by a search over
/// small integer points `x`. For a point with totally isotropic tangent
/// space `T(x)`, `T(x)` is the unique maximal linear solution space through
/// `x`; the largest such space over all candidates is returned.
fn largest_linear_component(d: usize, forms: &[Matrix<Rational>]) -> Vec<Vec<Rational>> {
    let int_forms = integer_forms(forms);
    if int_forms.is_empty() {
        return linalg::identity::<Rational>(d).to_rows();
    }
    let mut best: Vec<Vec<Rational>> = Vec::new();
    let consider = |x: &[i128], best: &mut Vec<Vec<Rational>>| {
        if x.iter().all(|&v| v == 0) || !on_all_quadrics(&int_forms, x) {
            return;
        }
        let xr: Vec<Rational> = x.iter().map(|&v| Rational::from(v as i64)).collect();
        if !best.is_empty() {
            let a = Matrix::from_rows(best.clone()).expect("rectangular");
            let b = Matrix::from_rows(vec![xr.clone()]).expect("rectangular");
            if linalg::row_space_contains(&a, &b) {
                return;
            }
        }
        let t = tangent_space(forms, &xr);
        if t.len() > best.len() && totally_isotropic(forms, &t) {
            *best = t;
        }
    };
    if 3usize.checked_pow(d as u32).is_some_and(|c| c <= COMPONENT_CANDIDATES) {
        let mut x = vec![-1i128; d];
        loop {
            consider(&x, &mut best);
            // odometer over {-1, 0, 1}^d
            let mut p = 0;
            while p < d && x[p] == 1 {
                x[p] = -1;
                p += 1;
            }
            if p == d {
                break;
            }
            x[p] += 1;
        }
    } else {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xc0_4e47);
        for _ in 0..COMPONENT_CANDIDATES {
            let x: Vec<i128> = (0..d).map(|_| if rng.gen_bool(0.3) { rng.gen_range(-1..=1) } else { 0 }).collect();
            consider(&x, &mut best);
        }
    }
    best
}

/// The admissible part of the linear solution space: all of it when the
/// torsion forms vanish identically, otherwise the largest linear component
/// of their common zero set.
fn isotropic_part(n: usize, basis: Vec<PolyMatrix>, gcov: &Matrix<Rational>) -> Result<Vec<PolyMatrix>> {
    let d = basis.len();
    if d == 0 {
        return Ok(basis);
    }
    let forms = torsion_forms(n, &basis, gcov)?;
    let w = largest_linear_component(d, &forms);
    let combos: Vec<PolyMatrix> = w
        .iter()
        .map(|c| {
            let mut m = PolyMatrix::zeros(n, n);
            for (b, x) in basis.iter().zip(c) {
                if !x.is_zero() {
                    m = m.add(&b.scale(x));
                }
            }
            m
        })
        .collect();
    Ok(reduced_basis(n, &combos))
}

/// Deterministic basis: the nonzero rows of the reduced row echelon form in
/// the coordinates `c^{ij}_k`, `i <= j`.
fn reduced_basis(n: usize, hs: &[PolyMatrix]) -> Vec<PolyMatrix> {
    let unknowns = linear_unknowns(n);
    if hs.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<Rational>> = hs
        .iter()
        .map(|h| unknowns.iter().map(|&(i, j, k)| h.get(i, j).coefficient(&Monomial::var(h.nvars(), k))).collect())
        .collect();
    let (r, pivots) = linalg::rref(&Matrix::from_rows(rows).expect("rectangular"));
    (0..pivots.len())
        .map(|row| {
            let mut m = PolyMatrix::zeros(n, n);
            for (u, c) in unknowns.iter().zip(r.row(row)) {
                if !c.is_zero() {
                    m = m.add(&unit_linear(n, *u).scale(c));
                }
            }
            m
        })
        .collect()
}

fn checked_family(g: LinearMetric, g0: Matrix<Rational>, basis: Vec<PolyMatrix>) -> Result<SolutionFamily> {
    let fam = SolutionFamily { dimension: basis.len(), g, g0, basis };
    // the torsion is quadratic in the linear part: check it with formal κ
    let h = fam.formal_member()?;
    let (_, gcov) = covariant(&fam.g)?;
    if !torsion_free(h.matrix(), &gcov)? {
        return Err(Error::NonLinearSolutionSet(
            "Nijenhuis torsion is not identically zero on the linear solution space".into(),
        ));
    }
    Ok(fam)
}

/// Solve the Killing condition together with the `u`-independent part of the
/// Nijenhuis condition for the linear part of `g̃ = g̃0 + c^{ij}_k u^k`, then
/// confirm the remaining quadratic part of the torsion vanishes on the whole
/// solution space.
pub fn solve_linear_conditions(g: &LinearMetric, g0: &Matrix<Rational>) -> Result<SolutionFamily> {
    let n = g.n();
    let (gm, gcov) = covariant(g)?;
    if g0.rows() != n || !g0.is_symmetric() {
        return Err(Error::DimensionMismatch("second constant metric must be a symmetric n x n matrix".into()));
    }
    let g = LinearMetric::constant(&gm)?;
    let gcov_p = PolyMatrix::from_rational(&gcov, n);
    let l0 = PolyMatrix::from_rational(g0, n).mul(&gcov_p)?;
    let unknowns = linear_unknowns(n);
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(unknowns.len());
    for u in &unknowns {
        let h = unit_linear(n, *u);
        let mut col: Vec<Rational> =
            killing_residual(&g, &LinearMetric::new(n, h.clone())?).iter().map(|p| p.constant_term()).collect();
        // N(L0 + Le) - N(Le) is the part bilinear in L0 and Le, constant in u
        let le = h.mul(&gcov_p)?;
        let both = nijenhuis_torsion(&Affinor::new(l0.add(&le))?);
        let alone = nijenhuis_torsion(&Affinor::new(le)?);
        col.extend(both.iter().zip(alone.iter()).map(|(a, b)| (a.clone() - b.clone()).constant_term()));
        cols.push(col);
    }
    let sys = Matrix::from_fn(cols[0].len(), unknowns.len(), |r, c| cols[c][r].clone());
    let linear: Vec<PolyMatrix> = linalg::nullspace(&sys)
        .into_iter()
        .map(|v| {
            let mut m = PolyMatrix::zeros(n, n);
            for (u, c) in unknowns.iter().zip(&v) {
                if !c.is_zero() {
                    m = m.add(&unit_linear(n, *u).scale(c));
                }
            }
            m
        })
        .collect();
    let basis = isotropic_part(n, linear, &gcov)?;
    checked_family(g, g0.clone(), basis)
}

/// `g̃0` of the single Jordan block normal form: ones on `i + j = n` and `λ`
/// on `i + j = n + 1` (1-based).
pub fn jordan_g0(n: usize, lambda: &Rational) -> Matrix<Rational> {
    Matrix::from_fn(n, n, |i, j| match i + j + 2 {
        s if s == n => Rational::one(),
        s if s == n + 1 => lambda.clone(),
        _ => Rational::zero(),
    })
}

/// Solve the coefficient equations of the single Jordan block case directly
/// in the unknowns `c^i_{jk}` of `L^i_j = c^i_{jk} u^k`, with antidiagonal `g`.
/// The solution space must be spanned by `μ^{(n;0)}..μ^{(n;n-2)}`.
pub fn solve_jordan_family(n: usize) -> Result<SolutionFamily> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange(format!("Jordan family needs n >= 2, got {n}")));
    }
    // 1-based c^i_{jk}; out-of-range indices denote zero
    let col = |i: usize, j: usize, k: usize| -> Option<usize> {
        let ok = |x: usize| (1..=n).contains(&x);
        (ok(i) && ok(j) && ok(k)).then(|| ((i - 1) * n + (j - 1)) * n + (k - 1))
    };
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut push = |terms: &[(Option<usize>, i64)]| {
        let mut row = vec![Rational::zero(); n * n * n];
        let mut any = false;
        for (c, s) in terms {
            if let Some(c) = c {
                row[*c] += &Rational::from(*s);
                any = true;
            }
        }
        if any {
            rows.push(row);
        }
    };
    let r = |i: usize| n + 1 - i;
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                // linear part of the torsion
                push(&[
                    (col(k, j, i.wrapping_sub(1)), 1),
                    (col(k, i, j.wrapping_sub(1)), -1),
                    (col(k + 1, i, j), 1),
                    (col(k + 1, j, i), -1),
                ]);
                // symmetry of g̃
                push(&[(col(r(i), j, k), 1), (col(r(j), i, k), -1)]);
                // Killing condition
                push(&[(col(r(i), j, k), 1), (col(r(k), i, j), 1), (col(r(j), k, i), 1)]);
            }
        }
    }
    let sys = Matrix::from_rows(rows)?;
    let basis: Vec<PolyMatrix> = linalg::nullspace(&sys)
        .into_iter()
        .map(|v| {
            // g̃^{ij} = c^i_{n+1-j, k} u^k
            PolyMatrix::from_fn(n, n, |i, j| {
                let terms = (1..=n).filter_map(|k| {
                    let c = &v[col(i + 1, n - j, k).expect("in range")];
                    (!c.is_zero()).then(|| (Monomial::var(n, k - 1), c.clone()))
                });
                MultiPoly::from_terms(n, terms)
            })
        })
        .collect();
    let mus: Vec<PolyMatrix> = (0..n - 1).map(|k| mu(n, k)).collect();
    if basis.len() != n - 1 || !same_span(n, &basis, &mus) {
        return Err(Error::DisagreementBug(format!(
            "Jordan coefficient system gave a {}-dimensional space not equal to the span of the μ bivectors",
            basis.len()
        )));
    }
    checked_family(LinearMetric::antidiagonal(n, n), jordan_g0(n, &Rational::zero()), basis)
}

/// `μ^{(n;k)ij} = [3(i+j) - 2(n+2-k)] u^{i+j-1+k}` (1-based, `u^a = 0` for
/// `a > n`), over `n` variables.
pub fn mu(n: usize, k: usize) -> PolyMatrix {
    PolyMatrix::from_fn(n, n, |i, j| {
        let (i, j) = (i + 1, j + 1);
        let a = i + j - 1 + k;
        if a > n {
            return MultiPoly::zero(n);
        }
        let c = 3 * (i + j) as i64 - 2 * (n as i64 + 2 - k as i64);
        MultiPoly::var(n, a - 1).scale(&Rational::from(c))
    })
}

/// `X_{(k)} = Σ_{i=1}^{n-k} (n-k+1-2i) u^{i+k} ∂_i`, over `n` variables.
pub fn x_field(n: usize, k: usize) -> Vec<MultiPoly> {
    (1..=n)
        .map(|i| {
            if i + k > n {
                return MultiPoly::zero(n);
            }
            let c = n as i64 - k as i64 + 1 - 2 * i as i64;
            MultiPoly::var(n, i + k - 1).scale(&Rational::from(c))
        })
        .collect()
}

/// `p_{[n,k,α]} = 3k + 1 - n - 2α`, the weight in
/// `Lie_{X_{(k)}} μ^{(n;α)} = p μ^{(n;α+k)}`.
pub fn p_coeff(n: usize, k: usize, alpha: usize) -> i64 {
    3 * k as i64 + 1 - n as i64 - 2 * alpha as i64
}
