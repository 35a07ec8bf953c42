//! Exact constructors for the named operator families.
//!
//! Matrices are transcribed entry by entry. Each entry is a single term:
//! a rational constant, or `c*uK` with a rational `c`.

use crate::error::{Error, Result};
use crate::exact::{Matrix, MultiPoly, PolyMatrix, Rational};
use crate::pencil::{jordan_g0, mu};
use crate::tensor::{block_diagonal, LinearMetric, OperatorSpec};

/// Parse one transcribed entry over `nv` variables.
fn term(s: &str, nv: usize) -> MultiPoly {
    let s = s.trim();
    match s.split_once('u') {
        None => MultiPoly::constant(nv, s.parse().unwrap_or_else(|_| panic!("bad constant entry {s:?}"))),
        Some((c, k)) => {
            let c = c.trim_end_matches('*');
            let c: Rational = match c {
                "" => Rational::one(),
                "-" => -Rational::one(),
                c => c.parse().unwrap_or_else(|_| panic!("bad coefficient in {s:?}")),
            };
            let k: usize = k.parse().unwrap_or_else(|_| panic!("bad variable in {s:?}"));
            assert!((1..=nv).contains(&k), "variable u{k} out of range in {s:?}");
            MultiPoly::var(nv, k - 1).scale(&c)
        }
    }
}

/// Square matrix from transcribed rows, over `n` variables.
pub(crate) fn rows(n: usize, r: &[&[&str]]) -> PolyMatrix {
    assert_eq!(r.len(), n, "expected {n} rows");
    PolyMatrix::from_fn(n, n, |i, j| {
        assert_eq!(r[i].len(), n, "row {} has {} entries", i + 1, r[i].len());
        term(r[i][j], n)
    })
}

pub(crate) fn metric(n: usize, r: &[&[&str]]) -> LinearMetric {
    LinearMetric::new(n, rows(n, r)).expect("transcribed metric is symmetric and linear")
}

fn constant(m: &Matrix<Rational>) -> PolyMatrix {
    PolyMatrix::from_rational(m, m.rows())
}

fn check_n(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::ParameterOutOfRange(format!("{what} needs n >= {min}, got {n}")));
    }
    Ok(())
}

/// `μ^{(n;k)}` as a metric over `u1..un`; zero for `k > n - 2`.
pub fn mu_bivector(n: usize, k: usize) -> Result<LinearMetric> {
    check_n(n, 2, "mu_bivector")?;
    LinearMetric::new(n, mu(n, k))
}

/// Coefficient of a basis bivector in a family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coef {
    /// A fresh formal parameter.
    Kappa,
    Fixed(Rational),
}

impl Coef {
    pub fn int(c: i64) -> Self {
        Coef::Fixed(Rational::from(c))
    }
}

/// A flat pencil `g̃ = g̃0 + Σ a_i g̃_i` in the flat coordinates of a constant
/// `g`, with the eigenvalue contribution `e_i` of each basis element, so that
/// the eigenvalue of `g̃ g^{-1}` is `λ + Σ a_i e_i`.
#[derive(Clone, Debug)]
pub(crate) struct PencilFamily {
    pub n: usize,
    pub g: Matrix<Rational>,
    pub g0: Matrix<Rational>,
    pub lambda: Rational,
    pub basis: Vec<PolyMatrix>,
    pub eigen: Option<Vec<MultiPoly>>,
}

/// One member of a [`PencilFamily`]: the two metrics over `u` plus the formal
/// parameters, the parameter count, and the expected eigenvalue.
pub(crate) struct Member {
    pub g: LinearMetric,
    pub h: LinearMetric,
    pub nparams: usize,
    pub eigenvalue: Option<MultiPoly>,
}

impl PencilFamily {
    pub fn member(&self, terms: &[(usize, Coef)]) -> Member {
        let n = self.n;
        let nparams = terms.iter().filter(|(_, c)| *c == Coef::Kappa).count();
        let nv = n + nparams;
        let lift = |p: &PolyMatrix| p.map(|e| e.extend_vars(nv));
        let mut h = lift(&constant(&self.g0));
        let mut eig = MultiPoly::constant(nv, self.lambda.clone());
        let mut next = n;
        for (i, c) in terms {
            let a = match c {
                Coef::Kappa => {
                    next += 1;
                    MultiPoly::var(nv, next - 1)
                }
                Coef::Fixed(r) => MultiPoly::constant(nv, r.clone()),
            };
            h = h.add(&lift(&self.basis[*i]).scale_poly(&a));
            if let Some(e) = &self.eigen {
                eig = &eig + &e[*i].extend_vars(nv).mul_ref(&a);
            }
        }
        Member {
            g: LinearMetric::new(n, lift(&constant(&self.g))).expect("constant metric"),
            h: LinearMetric::new(n, h).expect("family member is linear"),
            nparams,
            eigenvalue: self.eigen.as_ref().map(|_| eig),
        }
    }

    /// The full family with every basis element weighted by a parameter.
    pub fn general(&self) -> Member {
        let terms: Vec<(usize, Coef)> = (0..self.basis.len()).map(|i| (i, Coef::Kappa)).collect();
        self.member(&terms)
    }
}

fn halves(n: usize, coeffs: &[(usize, i64)]) -> MultiPoly {
    MultiPoly::from_terms(
        n,
        coeffs.iter().map(|&(k, c)| (crate::exact::Monomial::var(n, k - 1), Rational::frac(c, 2))),
    )
}

fn int_matrix(r: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_fn(r.len(), r.len(), |i, j| Rational::from(r[i][j]))
}

fn lambda_matrix(r: &[&[(i64, i64)]], lambda: &Rational) -> Matrix<Rational> {
    Matrix::from_fn(r.len(), r.len(), |i, j| {
        let (a, b) = r[i][j];
        Rational::from(a) + lambda * &Rational::from(b)
    })
}

/// Two 2x2 blocks with one eigenvalue; `sign` is the sign of the second
/// block of `g`.
pub(crate) fn blocks_2_2(sign: i64, lambda: &Rational) -> PencilFamily {
    let s = sign;
    let g = int_matrix(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, s], &[0, 0, s, 0]]);
    let g0 = lambda_matrix(
        &[
            &[(1, 0), (0, 1), (0, 0), (0, 0)],
            &[(0, 1), (0, 0), (0, 0), (0, 0)],
            &[(0, 0), (0, 0), (s, 0), (0, s)],
            &[(0, 0), (0, 0), (0, s), (0, 0)],
        ],
        lambda,
    );
    let basis = if sign > 0 {
        vec![
            rows(4, &[&["u1", "-1/2*u2", "1/2*u3", "0"], &["-1/2*u2", "0", "0", "0"], &["1/2*u3", "0", "0", "-1/2*u2"], &["0", "0", "-1/2*u2", "0"]]),
            rows(4, &[&["u4", "0", "-1/2*u2", "0"], &["0", "0", "0", "0"], &["-1/2*u2", "0", "0", "0"], &["0", "0", "0", "0"]]),
            rows(4, &[&["0", "1/2*u4", "-1/2*u1", "0"], &["1/2*u4", "0", "0", "0"], &["-1/2*u1", "0", "-u3", "1/2*u4"], &["0", "0", "1/2*u4", "0"]]),
            rows(4, &[&["0", "0", "1/2*u4", "0"], &["0", "0", "0", "0"], &["1/2*u4", "0", "-u2", "0"], &["0", "0", "0", "0"]]),
        ]
    } else {
        vec![
            rows(4, &[&["u1", "-1/2*u2", "1/2*u3", "0"], &["-1/2*u2", "0", "0", "0"], &["1/2*u3", "0", "0", "1/2*u2"], &["0", "0", "1/2*u2", "0"]]),
            rows(4, &[&["u4", "0", "1/2*u2", "0"], &["0", "0", "0", "0"], &["1/2*u2", "0", "0", "0"], &["0", "0", "0", "0"]]),
            rows(4, &[&["0", "1/2*u4", "1/2*u1", "0"], &["1/2*u4", "0", "0", "0"], &["1/2*u1", "0", "u3", "-1/2*u4"], &["0", "0", "-1/2*u4", "0"]]),
            rows(4, &[&["0", "0", "1/2*u4", "0"], &["0", "0", "0", "0"], &["1/2*u4", "0", "u2", "0"], &["0", "0", "0", "0"]]),
        ]
    };
    let zero = MultiPoly::zero(4);
    PencilFamily {
        n: 4,
        g,
        g0,
        lambda: lambda.clone(),
        basis,
        eigen: Some(vec![halves(4, &[(2, -1)]), zero.clone(), halves(4, &[(4, 1)]), zero]),
    }
}

/// Blocks of sizes 3 and 1 with one eigenvalue; `sign` is the sign of the
/// 1x1 block of `g`.
pub(crate) fn blocks_3_1(sign: i64, lambda: &Rational) -> PencilFamily {
    let s = sign;
    let g = int_matrix(&[&[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, s]]);
    let g0 = lambda_matrix(
        &[
            &[(0, 0), (1, 0), (0, 1), (0, 0)],
            &[(1, 0), (0, 1), (0, 0), (0, 0)],
            &[(0, 1), (0, 0), (0, 0), (0, 0)],
            &[(0, 0), (0, 0), (0, 0), (0, s)],
        ],
        lambda,
    );
    let (a, b) = if sign > 0 { ("-u3", "-1/2*u3") } else { ("u3", "1/2*u3") };
    let c = if sign > 0 { "-1/2*u2" } else { "1/2*u2" };
    let basis = vec![
        rows(4, &[&["2*u1", "1/2*u2", "-u3", "1/2*u4"], &["1/2*u2", "-u3", "0", "0"], &["-u3", "0", "0", "0"], &["1/2*u4", "0", "0", a]]),
        rows(4, &[&["u2", "-1/2*u3", "0", "0"], &["-1/2*u3", "0", "0", "0"], &["0", "0", "0", "0"], &["0", "0", "0", "0"]]),
        rows(4, &[&["u4", "0", "0", b], &["0", "0", "0", "0"], &["0", "0", "0", "0"], &[b, "0", "0", "0"]]),
        rows(4, &[&["0", "1/2*u4", "0", c], &["1/2*u4", "0", "0", "0"], &["0", "0", "0", "0"], &[c, "0", "0", "0"]]),
    ];
    let zero = MultiPoly::zero(4);
    PencilFamily {
        n: 4,
        g,
        g0,
        lambda: lambda.clone(),
        basis,
        eigen: Some(vec![MultiPoly::var(4, 2).scale(&Rational::from(-1)), zero.clone(), zero.clone(), zero]),
    }
}

/// A single 4x4 Jordan block.
pub(crate) fn block_4(lambda: &Rational) -> PencilFamily {
    let g = int_matrix(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
    let basis = vec![
        rows(4, &[&["-u1", "-1/2*u2", "0", "1/2*u4"], &["-1/2*u2", "0", "1/2*u4", "0"], &["0", "1/2*u4", "0", "0"], &["1/2*u4", "0", "0", "0"]]),
        rows(4, &[&["2*u2", "1/2*u3", "-u4", "0"], &["1/2*u3", "-u4", "0", "0"], &["-u4", "0", "0", "0"], &["0", "0", "0", "0"]]),
        rows(4, &[&["u3", "-1/2*u4", "0", "0"], &["-1/2*u4", "0", "0", "0"], &["0", "0", "0", "0"], &["0", "0", "0", "0"]]),
    ];
    let zero = MultiPoly::zero(4);
    PencilFamily {
        n: 4,
        g,
        g0: jordan_g0(4, lambda),
        lambda: lambda.clone(),
        basis,
        eigen: Some(vec![halves(4, &[(4, 1)]), zero.clone(), zero]),
    }
}

/// Two complex conjugate 2x2 blocks with eigenvalues `ν ± iλ` at `u = 0`.
/// The eigenvalues of general members are not recorded.
pub(crate) fn complex_pair(nu: &Rational, lambda: &Rational) -> PencilFamily {
    let g = int_matrix(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
    let (l, v) = (lambda.clone(), nu.clone());
    let (one, z) = (Rational::one(), Rational::zero());
    let g0 = Matrix::from_rows(vec![
        vec![z.clone(), one.clone(), -l.clone(), v.clone()],
        vec![one, z.clone(), v.clone(), l.clone()],
        vec![-l.clone(), v.clone(), z.clone(), z.clone()],
        vec![v, l, z.clone(), z],
    ])
    .expect("square");
    let basis = vec![
        rows(4, &[&["2*u2", "-2*u1", "-u4", "u3"], &["-2*u1", "-2*u2", "u3", "u4"], &["-u4", "u3", "0", "0"], &["u3", "u4", "0", "0"]]),
        rows(4, &[&["2*u1", "2*u2", "-u3", "-u4"], &["2*u2", "-2*u1", "-u4", "u3"], &["-u3", "-u4", "0", "0"], &["-u4", "u3", "0", "0"]]),
    ];
    PencilFamily { n: 4, g, g0, lambda: lambda.clone(), basis, eigen: None }
}

/// The complex normal form: `g` antidiagonal and the first complex basis
/// bivector alone; eigenvalues `u3 ± i u4`.
pub fn complex_pair_normal_form() -> (LinearMetric, LinearMetric) {
    let f = complex_pair(&Rational::zero(), &Rational::zero());
    (LinearMetric::antidiagonal(4, 4), LinearMetric::new(4, f.basis[0].clone()).expect("linear"))
}

/// The two-component operator with `g = antidiag` and
/// `g̃ = [[-2u1, u2], [u2, 0]]`.
pub fn two_component_operator() -> OperatorSpec {
    spec(vec![LinearMetric::antidiagonal(2, 2), metric(2, &[&["-2*u1", "u2"], &["u2", "0"]])])
}

/// Three components, single Jordan block with constant eigenvalue `λ`.
pub fn three_component_constant_eigenvalue(lambda: &Rational) -> OperatorSpec {
    let g = LinearMetric::antidiagonal(3, 3);
    let h = metric(3, &[&["-2*u2", "u3", "0"], &["u3", "0", "0"], &["0", "0", "0"]]).add(&g.scale(lambda));
    spec(vec![g, h])
}

/// Three components, single Jordan block with eigenvalue `u3`; Mokhov's
/// three-component operator with the linear part halved off the corner.
pub fn three_component_nonconstant_eigenvalue() -> OperatorSpec {
    spec(vec![
        LinearMetric::antidiagonal(3, 3),
        metric(3, &[&["-2*u1", "-1/2*u2", "u3"], &["-1/2*u2", "u3", "0"], &["u3", "0", "0"]]),
    ])
}

/// Mokhov's operator: `g` antidiagonal, `g̃ = μ^{(n;0)}`.
pub fn mokhov_operator(n: usize) -> Result<OperatorSpec> {
    check_n(n, 2, "mokhov_operator")?;
    OperatorSpec::new(vec![LinearMetric::antidiagonal(n, n), mu_bivector(n, 0)?])
}

/// `g` antidiagonal, `g̃ = μ^{(n;1)} + λ g`: single Jordan block with constant
/// eigenvalue `λ`.
pub fn shifted_mokhov_operator(n: usize, lambda: &Rational) -> Result<OperatorSpec> {
    check_n(n, 3, "shifted_mokhov_operator")?;
    let g = LinearMetric::antidiagonal(n, n);
    let h = mu_bivector(n, 1)?.add(&g.scale(lambda));
    OperatorSpec::new(vec![g, h])
}

/// Canonical single-Jordan-block form with non-constant eigenvalue:
/// `μ^{(n;0)}`, plus `κ μ^{(n;(n-1)/3)}` when `n ≡ 1 mod 3`, plus
/// `jordan_g0(4, λ)` when `n = 4`. `kappa = None` makes `κ` a formal
/// parameter (variable `n + 1`).
pub fn jordan_normal_form(n: usize, kappa: Option<&Rational>, lambda: &Rational) -> Result<OperatorSpec> {
    check_n(n, 2, "jordan_normal_form")?;
    let extra = (n % 3 == 1).then(|| (n - 1) / 3);
    let mut h = mu(n, 0);
    if n == 4 {
        h = h.add(&PolyMatrix::from_rational(&jordan_g0(4, lambda), 4));
    }
    pencil_with_kappa(n, h, extra.map(|k| mu(n, k)), kappa)
}

/// Canonical single-Jordan-block form with constant eigenvalue `λ` when the
/// leading `α` coefficients vanish: `μ^{(n;α)} + κ μ^{(n;α+m)} + g̃0(λ)` with
/// `m = (n-1+2α)/3` when that is an integer and `μ^{(n;α+m)} ≠ 0`, and
/// `μ^{(n;α)} + g̃0(λ)` otherwise.
pub fn constant_eigenvalue_normal_form(
    n: usize,
    alpha: usize,
    kappa: Option<&Rational>,
    lambda: &Rational,
) -> Result<OperatorSpec> {
    check_n(n, 3, "constant_eigenvalue_normal_form")?;
    if alpha == 0 || alpha > n - 2 {
        return Err(Error::ParameterOutOfRange(format!("alpha must lie in 1..={}, got {alpha}", n - 2)));
    }
    let h = mu(n, alpha).add(&PolyMatrix::from_rational(&jordan_g0(n, lambda), n));
    let twice = n - 1 + 2 * alpha;
    let extra = (twice % 3 == 0 && alpha + twice / 3 <= n - 2).then(|| mu(n, alpha + twice / 3));
    pencil_with_kappa(n, h, extra, kappa)
}

/// Whether [`constant_eigenvalue_normal_form`] carries a `κ` term.
pub fn constant_eigenvalue_has_kappa(n: usize, alpha: usize) -> bool {
    let twice = n - 1 + 2 * alpha;
    twice % 3 == 0 && alpha + twice / 3 <= n - 2
}

fn pencil_with_kappa(n: usize, h: PolyMatrix, extra: Option<PolyMatrix>, kappa: Option<&Rational>) -> Result<OperatorSpec> {
    match (extra, kappa) {
        (None, _) => OperatorSpec::new(vec![LinearMetric::antidiagonal(n, n), LinearMetric::new(n, h)?]),
        (Some(e), Some(k)) => {
            OperatorSpec::new(vec![LinearMetric::antidiagonal(n, n), LinearMetric::new(n, h.add(&e.scale(k)))?])
        }
        (Some(e), None) => {
            let nv = n + 1;
            let lift = |p: &PolyMatrix| p.map(|x| x.extend_vars(nv));
            let h = lift(&h).add(&lift(&e).scale_poly(&MultiPoly::var(nv, n)));
            OperatorSpec::new(vec![LinearMetric::antidiagonal(n, nv), LinearMetric::new(n, h)?])
        }
    }
}

/// The irreducible three-component operator in three dimensions:
/// `g^x` antidiagonal, `g^y` the constant-eigenvalue form at `λ = 0`,
/// `g^z = E_11`.
pub fn three_dimensional_irreducible() -> OperatorSpec {
    spec(vec![
        LinearMetric::antidiagonal(3, 3),
        metric(3, &[&["-2*u2", "u3", "0"], &["u3", "0", "0"], &["0", "0", "0"]]),
        metric(3, &[&["1", "0", "0"], &["0", "0", "0"], &["0", "0", "0"]]),
    ])
}

/// The reducible three-component operator in three dimensions: the
/// two-component operator in `(x, y)` plus `∂_z` on the third component.
pub fn three_dimensional_reducible() -> OperatorSpec {
    spec(vec![
        metric(3, &[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "0"]]),
        metric(3, &[&["-2*u1", "u2", "0"], &["u2", "0", "0"], &["0", "0", "0"]]),
        metric(3, &[&["0", "0", "0"], &["0", "0", "0"], &["0", "0", "1"]]),
    ])
}

/// Irreducible `N`-component operator in `N` dimensions: `η` antidiagonal,
/// `g = μ^{(N;N-2)} + jordan_g0(N, λ)`, and `h^m = E_mm` for `m = 1..N-2`.
pub fn n_dimensional_operator(big_n: usize, lambda: &Rational) -> Result<OperatorSpec> {
    check_n(big_n, 3, "n_dimensional_operator")?;
    let n = big_n;
    let mut metrics = vec![
        LinearMetric::antidiagonal(n, n),
        LinearMetric::new(n, mu(n, n - 2).add(&PolyMatrix::from_rational(&jordan_g0(n, lambda), n)))?,
    ];
    for m in 0..n - 2 {
        let e = Matrix::from_fn(n, n, |i, j| if i == m && j == m { Rational::one() } else { Rational::zero() });
        metrics.push(LinearMetric::constant(&e)?);
    }
    OperatorSpec::new(metrics)
}

/// Direct sum: block-diagonal metrics on the union of the variables.
/// Parameters of `a` come before those of `b`.
pub fn direct_sum(a: &OperatorSpec, b: &OperatorSpec) -> Result<OperatorSpec> {
    if a.d() != b.d() {
        return Err(Error::DimensionMismatch(format!("direct sum of a {}-dimensional and a {}-dimensional operator", a.d(), b.d())));
    }
    let (na, nb) = (a.n(), b.n());
    let metrics = a
        .metrics()
        .iter()
        .zip(b.metrics())
        .map(|(x, y)| LinearMetric::new(na + nb, block_diagonal(x.matrix(), na, y.matrix(), nb)))
        .collect::<Result<Vec<_>>>()?;
    OperatorSpec::new(metrics)
}

/// One-component operator `g = 1`, `g̃ = λ`.
pub fn constant_one_component(lambda: &Rational) -> OperatorSpec {
    let c = |x: Rational| LinearMetric::constant(&Matrix::from_fn(1, 1, |_, _| x.clone())).expect("1x1");
    spec(vec![c(Rational::one()), c(lambda.clone())])
}

fn spec(metrics: Vec<LinearMetric>) -> OperatorSpec {
    OperatorSpec::new(metrics).expect("transcribed operator is non-degenerate")
}
